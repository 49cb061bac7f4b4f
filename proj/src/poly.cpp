#include "cdiff/poly.hpp"

#include <unordered_map>

#include "cdiff/error.hpp"

namespace cdiff {

PolyNF PolyNF::constant(mpq_class value) {
  PolyNF p;
  if (value != 0) p.terms_.emplace(Monomial{}, std::move(value));
  return p;
}

PolyNF PolyNF::variable(int index) {
  PolyNF p;
  p.terms_.emplace(Monomial{{index, 1u}}, mpq_class(1));
  return p;
}

void PolyNF::add_term(const Monomial& m, const mpq_class& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

PolyNF PolyNF::operator+(const PolyNF& other) const {
  PolyNF out = *this;
  for (const auto& [m, c] : other.terms_) out.add_term(m, c);
  return out;
}

PolyNF PolyNF::negated() const {
  PolyNF out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

namespace {

Monomial merge_monomials(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].first == b[j].first) {
      out.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i;
      ++j;
    } else if (a[i].first < b[j].first) {
      out.push_back(a[i++]);
    } else {
      out.push_back(b[j++]);
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  for (; j < b.size(); ++j) out.push_back(b[j]);
  return out;
}

}  // namespace

PolyNF PolyNF::operator*(const PolyNF& other) const {
  PolyNF out;
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : other.terms_)
      out.add_term(merge_monomials(ma, mb), ca * cb);
  return out;
}

PolyNF PolyNF::pow(unsigned exponent) const {
  PolyNF acc = PolyNF::constant(1);
  PolyNF base = *this;
  unsigned k = exponent;
  while (k > 0) {
    if (k & 1u) acc = acc * base;
    k >>= 1u;
    if (k > 0) base = base * base;
  }
  return acc;
}

mpq_class PolyNF::eval(const std::vector<mpq_class>& point) const {
  mpq_class out(0);
  for (const auto& [m, c] : terms_) {
    mpq_class t = c;
    for (const auto& [var, exp] : m) {
      if (var > static_cast<int>(point.size()))
        throw EvalError("point has fewer coordinates than the polynomial uses");
      const mpq_class& x = point[static_cast<std::size_t>(var - 1)];
      mpz_class num, den;
      mpz_pow_ui(num.get_mpz_t(), x.get_num().get_mpz_t(), exp);
      mpz_pow_ui(den.get_mpz_t(), x.get_den().get_mpz_t(), exp);
      t *= mpq_class(num) / mpq_class(den);
    }
    out += t;
  }
  return out;
}

namespace {

using detail::ExprNode;

const PolyNF& normal_form_rec(
    const Expr& e, std::unordered_map<const ExprNode*, PolyNF>& memo) {
  if (auto it = memo.find(e.raw()); it != memo.end()) return it->second;
  PolyNF out;
  switch (e.kind()) {
    case ExprKind::Const:
      out = PolyNF::constant(e.const_value().rat());
      break;
    case ExprKind::Var:
      out = PolyNF::variable(e.var_index());
      break;
    case ExprKind::Add:
      out = normal_form_rec(e.lhs(), memo) + normal_form_rec(e.rhs(), memo);
      break;
    case ExprKind::Mul:
      out = normal_form_rec(e.lhs(), memo) * normal_form_rec(e.rhs(), memo);
      break;
    case ExprKind::Neg:
      out = normal_form_rec(e.child(), memo).negated();
      break;
    case ExprKind::Pow:
      out = normal_form_rec(e.child(), memo).pow(e.exponent());
      break;
    case ExprKind::Prim:
      throw FlavorError("transcendental node has no polynomial normal form");
  }
  return memo.emplace(e.raw(), std::move(out)).first->second;
}

}  // namespace

PolyNF poly_normal_form(const Expr& e) {
  if (e.flavor() != Flavor::Exact)
    throw FlavorError("polynomial normal form requires the exact flavor");
  std::unordered_map<const ExprNode*, PolyNF> memo;
  return normal_form_rec(e, memo);
}

}  // namespace cdiff
