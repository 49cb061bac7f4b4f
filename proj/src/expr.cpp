#include "cdiff/expr.hpp"

#include <cmath>
#include <unordered_map>
#include <utility>

#include "cdiff/error.hpp"

namespace cdiff {

using detail::ExprNode;
using NodePtr = std::shared_ptr<const ExprNode>;

const char* prim_name(PrimFn fn) {
  switch (fn) {
    case PrimFn::Sin: return "sin";
    case PrimFn::Cos: return "cos";
    case PrimFn::Exp: return "exp";
  }
  return "?";
}

namespace {

NodePtr make_node(ExprNode node) {
  return std::make_shared<const ExprNode>(std::move(node));
}

}  // namespace

Expr Expr::constant(Scalar value) {
  ExprNode n{ExprKind::Const, value.flavor()};
  n.value = std::move(value);
  return Expr(make_node(std::move(n)));
}

Expr Expr::zero(Flavor flavor) { return constant(Scalar::zero(flavor)); }

Expr Expr::one(Flavor flavor) { return constant(Scalar::one(flavor)); }

Expr Expr::var(int index, Flavor flavor) {
  if (index < 1) throw EvalError("variable index must be >= 1");
  ExprNode n{ExprKind::Var, flavor};
  n.var = index;
  n.max_var = index;
  return Expr(make_node(std::move(n)));
}

Expr Expr::add(Expr lhs, Expr rhs) {
  if (lhs.flavor() != rhs.flavor())
    throw FlavorError("adding mixed-flavor expressions");
  ExprNode n{ExprKind::Add, lhs.flavor()};
  n.max_var = std::max(lhs.max_var(), rhs.max_var());
  n.a = lhs.node_;
  n.b = rhs.node_;
  return Expr(make_node(std::move(n)));
}

Expr Expr::mul(Expr lhs, Expr rhs) {
  if (lhs.flavor() != rhs.flavor())
    throw FlavorError("multiplying mixed-flavor expressions");
  ExprNode n{ExprKind::Mul, lhs.flavor()};
  n.max_var = std::max(lhs.max_var(), rhs.max_var());
  n.a = lhs.node_;
  n.b = rhs.node_;
  return Expr(make_node(std::move(n)));
}

Expr Expr::neg(Expr arg) {
  ExprNode n{ExprKind::Neg, arg.flavor()};
  n.max_var = arg.max_var();
  n.a = arg.node_;
  return Expr(make_node(std::move(n)));
}

Expr Expr::pow(Expr base, unsigned exponent) {
  ExprNode n{ExprKind::Pow, base.flavor()};
  n.max_var = base.max_var();
  n.a = base.node_;
  n.exponent = exponent;
  return Expr(make_node(std::move(n)));
}

Expr Expr::prim(PrimFn fn, Expr arg) {
  if (arg.flavor() != Flavor::Float)
    throw FlavorError(std::string(prim_name(fn)) +
                      " requires the float flavor");
  ExprNode n{ExprKind::Prim, Flavor::Float};
  n.max_var = arg.max_var();
  n.a = arg.node_;
  n.fn = fn;
  return Expr(make_node(std::move(n)));
}

ExprKind Expr::kind() const { return node_->kind; }
Flavor Expr::flavor() const { return node_->flavor; }
int Expr::max_var() const { return node_->max_var; }

bool Expr::is_const_zero() const {
  return node_->kind == ExprKind::Const && node_->value.is_zero();
}

bool Expr::is_const_one() const {
  return node_->kind == ExprKind::Const && node_->value.is_one();
}

const Scalar& Expr::const_value() const { return node_->value; }
int Expr::var_index() const { return node_->var; }
Expr Expr::lhs() const { return Expr(node_->a); }
Expr Expr::rhs() const { return Expr(node_->b); }
Expr Expr::child() const { return Expr(node_->a); }
unsigned Expr::exponent() const { return node_->exponent; }
PrimFn Expr::fn() const { return node_->fn; }

namespace {

// Fold units introduced mechanically (zero directions, 0/1 basis vectors).
// Parsed trees are kept as written; only derived trees go through these.
Expr mk_add(Expr a, Expr b) {
  if (a.is_const_zero()) return b;
  if (b.is_const_zero()) return a;
  return Expr::add(std::move(a), std::move(b));
}

Expr mk_mul(Expr a, Expr b) {
  if (a.is_const_zero()) return a;
  if (b.is_const_zero()) return b;
  if (a.is_const_one()) return b;
  if (b.is_const_one()) return a;
  return Expr::mul(std::move(a), std::move(b));
}

// --- evaluation ------------------------------------------------------------

mpq_class eval_exact_rec(const ExprNode* n, const std::vector<Scalar>& point,
                         std::unordered_map<const ExprNode*, mpq_class>& memo) {
  if (auto it = memo.find(n); it != memo.end()) return it->second;
  mpq_class out;
  switch (n->kind) {
    case ExprKind::Const:
      out = n->value.rat();
      break;
    case ExprKind::Var:
      out = point[static_cast<std::size_t>(n->var - 1)].rat();
      break;
    case ExprKind::Add:
      out = eval_exact_rec(n->a.get(), point, memo) +
            eval_exact_rec(n->b.get(), point, memo);
      break;
    case ExprKind::Mul:
      out = eval_exact_rec(n->a.get(), point, memo) *
            eval_exact_rec(n->b.get(), point, memo);
      break;
    case ExprKind::Neg:
      out = -eval_exact_rec(n->a.get(), point, memo);
      break;
    case ExprKind::Pow: {
      mpq_class base = eval_exact_rec(n->a.get(), point, memo);
      mpz_class num, den;
      mpz_pow_ui(num.get_mpz_t(), base.get_num().get_mpz_t(), n->exponent);
      mpz_pow_ui(den.get_mpz_t(), base.get_den().get_mpz_t(), n->exponent);
      out = mpq_class(num) / mpq_class(den);
      break;
    }
    case ExprKind::Prim:
      throw FlavorError("transcendental in exact evaluation");
  }
  memo.emplace(n, out);
  return out;
}

double eval_float_rec(const ExprNode* n, std::span<const double> point,
                      std::unordered_map<const ExprNode*, double>& memo) {
  if (auto it = memo.find(n); it != memo.end()) return it->second;
  double out = 0.0;
  switch (n->kind) {
    case ExprKind::Const:
      out = n->value.flt();
      break;
    case ExprKind::Var:
      out = point[static_cast<std::size_t>(n->var - 1)];
      break;
    case ExprKind::Add:
      out = eval_float_rec(n->a.get(), point, memo) +
            eval_float_rec(n->b.get(), point, memo);
      break;
    case ExprKind::Mul:
      out = eval_float_rec(n->a.get(), point, memo) *
            eval_float_rec(n->b.get(), point, memo);
      break;
    case ExprKind::Neg:
      out = -eval_float_rec(n->a.get(), point, memo);
      break;
    case ExprKind::Pow:
      out = std::pow(eval_float_rec(n->a.get(), point, memo),
                     static_cast<int>(n->exponent));
      break;
    case ExprKind::Prim: {
      double x = eval_float_rec(n->a.get(), point, memo);
      switch (n->fn) {
        case PrimFn::Sin: out = std::sin(x); break;
        case PrimFn::Cos: out = std::cos(x); break;
        case PrimFn::Exp: out = std::exp(x); break;
      }
      break;
    }
  }
  memo.emplace(n, out);
  return out;
}

}  // namespace

Scalar eval_expr(const Expr& e, const std::vector<Scalar>& point) {
  if (e.max_var() > static_cast<int>(point.size()))
    throw EvalError("point has fewer coordinates than the expression uses");
  for (const Scalar& s : point)
    if (s.flavor() != e.flavor())
      throw FlavorError("point flavor does not match expression flavor");
  if (e.flavor() == Flavor::Exact) {
    std::unordered_map<const ExprNode*, mpq_class> memo;
    return Scalar::exact(eval_exact_rec(e.raw(), point, memo));
  }
  std::vector<double> p(point.size());
  for (std::size_t i = 0; i < point.size(); ++i) p[i] = point[i].flt();
  return Scalar::real(eval_float(e, p));
}

double eval_float(const Expr& e, std::span<const double> point) {
  if (e.flavor() != Flavor::Float)
    throw FlavorError("eval_float on an exact expression");
  if (e.max_var() > static_cast<int>(point.size()))
    throw EvalError("point has fewer coordinates than the expression uses");
  std::unordered_map<const ExprNode*, double> memo;
  double v = eval_float_rec(e.raw(), point, memo);
  if (!std::isfinite(v)) throw EvalError("evaluation left the finite range");
  return v;
}

// --- differentiation --------------------------------------------------------

Expr partial_derivative(const Expr& e, int var) {
  if (var < 1) throw EvalError("variable index must be >= 1");
  const Flavor fl = e.flavor();
  switch (e.kind()) {
    case ExprKind::Const:
      return Expr::zero(fl);
    case ExprKind::Var:
      return e.var_index() == var ? Expr::one(fl) : Expr::zero(fl);
    case ExprKind::Add:
      return Expr::add(partial_derivative(e.lhs(), var),
                       partial_derivative(e.rhs(), var));
    case ExprKind::Mul: {
      // Leibniz: a'·b + a·b'
      Expr da = partial_derivative(e.lhs(), var);
      Expr db = partial_derivative(e.rhs(), var);
      return mk_add(mk_mul(da, e.rhs()), mk_mul(e.lhs(), db));
    }
    case ExprKind::Neg:
      return Expr::neg(partial_derivative(e.child(), var));
    case ExprKind::Pow: {
      if (e.exponent() == 0) return Expr::zero(fl);
      Expr db = partial_derivative(e.child(), var);
      if (db.is_const_zero()) return Expr::zero(fl);
      Expr coeff = Expr::constant(fl == Flavor::Exact
                                      ? Scalar::exact(long(e.exponent()))
                                      : Scalar::real(double(e.exponent())));
      Expr shifted = e.exponent() == 1 ? Expr::one(fl)
                                       : Expr::pow(e.child(), e.exponent() - 1);
      return mk_mul(mk_mul(coeff, shifted), db);
    }
    case ExprKind::Prim: {
      Expr db = partial_derivative(e.child(), var);
      if (db.is_const_zero()) return Expr::zero(fl);
      Expr outer = Expr::zero(fl);
      switch (e.fn()) {
        case PrimFn::Sin: outer = Expr::prim(PrimFn::Cos, e.child()); break;
        case PrimFn::Cos:
          outer = Expr::neg(Expr::prim(PrimFn::Sin, e.child()));
          break;
        case PrimFn::Exp: outer = e; break;
      }
      return mk_mul(outer, db);
    }
  }
  throw EvalError("unreachable expression kind");
}

// --- substitution -----------------------------------------------------------

namespace {

Expr substitute_rec(const Expr& e, std::span<const Expr> repl,
                    std::unordered_map<const ExprNode*, Expr>& memo) {
  if (auto it = memo.find(e.raw()); it != memo.end()) return it->second;
  Expr out = e;
  switch (e.kind()) {
    case ExprKind::Const:
      break;
    case ExprKind::Var:
      out = repl[static_cast<std::size_t>(e.var_index() - 1)];
      break;
    case ExprKind::Add:
      out = mk_add(substitute_rec(e.lhs(), repl, memo),
                   substitute_rec(e.rhs(), repl, memo));
      break;
    case ExprKind::Mul:
      out = mk_mul(substitute_rec(e.lhs(), repl, memo),
                   substitute_rec(e.rhs(), repl, memo));
      break;
    case ExprKind::Neg:
      out = Expr::neg(substitute_rec(e.child(), repl, memo));
      break;
    case ExprKind::Pow:
      out = Expr::pow(substitute_rec(e.child(), repl, memo), e.exponent());
      break;
    case ExprKind::Prim:
      out = Expr::prim(e.fn(), substitute_rec(e.child(), repl, memo));
      break;
  }
  memo.emplace(e.raw(), out);
  return out;
}

}  // namespace

Expr substitute(const Expr& e, std::span<const Expr> replacements) {
  if (e.max_var() > static_cast<int>(replacements.size()))
    throw DimensionError("substitution misses a variable of the expression");
  for (const Expr& r : replacements)
    if (r.flavor() != e.flavor())
      throw FlavorError("substitution flavor mismatch");
  std::unordered_map<const ExprNode*, Expr> memo;
  return substitute_rec(e, replacements, memo);
}

// --- printing ---------------------------------------------------------------

namespace {

// Precedence levels: additive 1, multiplicative 2, power base 3, atom 4.
void print_rec(const Expr& e, int min_prec, std::string& out) {
  switch (e.kind()) {
    case ExprKind::Const: {
      const bool neg = e.const_value().is_negative();
      if (neg && min_prec > 1) out += '(';
      if (neg) out += "0 - ";
      Scalar v = neg ? e.const_value().negated() : e.const_value();
      out += v.str();
      if (neg && min_prec > 1) out += ')';
      break;
    }
    case ExprKind::Var:
      out += 'x';
      out += std::to_string(e.var_index());
      break;
    case ExprKind::Add: {
      if (min_prec > 1) out += '(';
      print_rec(e.lhs(), 1, out);
      if (e.rhs().kind() == ExprKind::Neg) {
        out += " - ";
        print_rec(e.rhs().child(), 2, out);
      } else {
        out += " + ";
        print_rec(e.rhs(), 2, out);
      }
      if (min_prec > 1) out += ')';
      break;
    }
    case ExprKind::Mul:
      if (min_prec > 2) out += '(';
      print_rec(e.lhs(), 2, out);
      out += " * ";
      print_rec(e.rhs(), 3, out);
      if (min_prec > 2) out += ')';
      break;
    case ExprKind::Neg:
      // No unary minus in the grammar; render as a subtraction from zero.
      if (min_prec > 1) out += '(';
      out += "0 - ";
      print_rec(e.child(), 2, out);
      if (min_prec > 1) out += ')';
      break;
    case ExprKind::Pow:
      // The grammar does not chain '^', so a power used as a base needs
      // parentheses.
      if (min_prec > 3) out += '(';
      print_rec(e.child(), 4, out);
      out += '^';
      out += std::to_string(e.exponent());
      if (min_prec > 3) out += ')';
      break;
    case ExprKind::Prim:
      out += prim_name(e.fn());
      out += '(';
      print_rec(e.child(), 1, out);
      out += ')';
      break;
  }
}

}  // namespace

std::string print_expr(const Expr& e) {
  std::string out;
  print_rec(e, 1, out);
  return out;
}

}  // namespace cdiff
