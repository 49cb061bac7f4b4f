#include "cdiff/morph.hpp"

#include <algorithm>
#include <cmath>

#include "cdiff/error.hpp"
#include "cdiff/poly.hpp"
#include "cdiff/rng.hpp"

namespace cdiff {

Morph::Morph(Obj dom, Obj cod, Flavor flavor, std::vector<Expr> exprs)
    : dom_(dom), cod_(cod), flavor_(flavor), exprs_(std::move(exprs)) {
  if (dom_.dim < 0 || cod_.dim < 0) throw DimensionError("negative dimension");
  if (static_cast<int>(exprs_.size()) != cod_.dim)
    throw DimensionError("expression count does not match the codomain");
  for (const Expr& e : exprs_) {
    if (e.flavor() != flavor_) throw FlavorError("morphism flavor mismatch");
    if (e.max_var() > dom_.dim)
      throw DimensionError("expression uses a variable beyond the domain");
  }
}

std::vector<Scalar> Morph::eval(const std::vector<Scalar>& point) const {
  if (static_cast<int>(point.size()) != dom_.dim)
    throw EvalError("point dimension does not match the domain");
  std::vector<Scalar> out;
  out.reserve(exprs_.size());
  for (const Expr& e : exprs_) out.push_back(eval_expr(e, point));
  return out;
}

std::vector<double> Morph::eval_floats(std::span<const double> point) const {
  if (static_cast<int>(point.size()) != dom_.dim)
    throw EvalError("point dimension does not match the domain");
  std::vector<double> out;
  out.reserve(exprs_.size());
  for (const Expr& e : exprs_) out.push_back(eval_float(e, point));
  return out;
}

// --- structure maps -----------------------------------------------------------

Morph identity_morph(int n, Flavor flavor) {
  std::vector<Expr> exprs;
  exprs.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) exprs.push_back(Expr::var(i, flavor));
  return Morph({n}, {n}, flavor, std::move(exprs));
}

Morph projection(int n1, int n2, int which, Flavor flavor) {
  if (n1 < 0 || n2 < 0 || (which != 0 && which != 1))
    throw DimensionError("bad projection");
  std::vector<Expr> exprs;
  const int lo = which == 0 ? 1 : n1 + 1;
  const int count = which == 0 ? n1 : n2;
  for (int i = 0; i < count; ++i) exprs.push_back(Expr::var(lo + i, flavor));
  return Morph({n1 + n2}, {count}, flavor, std::move(exprs));
}

Morph injection(int n1, int n2, int which, Flavor flavor) {
  if (n1 < 0 || n2 < 0 || (which != 0 && which != 1))
    throw DimensionError("bad injection");
  const int dom = which == 0 ? n1 : n2;
  std::vector<Expr> exprs;
  exprs.reserve(static_cast<std::size_t>(n1 + n2));
  for (int i = 1; i <= n1; ++i)
    exprs.push_back(which == 0 ? Expr::var(i, flavor) : Expr::zero(flavor));
  for (int i = 1; i <= n2; ++i)
    exprs.push_back(which == 1 ? Expr::var(i, flavor) : Expr::zero(flavor));
  return Morph({dom}, {n1 + n2}, flavor, std::move(exprs));
}

Morph pairing(const Morph& f, const Morph& g) {
  if (f.dom() != g.dom()) throw DimensionError("pairing needs equal domains");
  if (f.flavor() != g.flavor()) throw FlavorError("pairing flavor mismatch");
  std::vector<Expr> exprs = f.exprs();
  exprs.insert(exprs.end(), g.exprs().begin(), g.exprs().end());
  return Morph(f.dom(), {f.cod().dim + g.cod().dim}, f.flavor(),
               std::move(exprs));
}

Morph product_morph(const Morph& f, const Morph& g) {
  if (f.flavor() != g.flavor()) throw FlavorError("product flavor mismatch");
  const Flavor fl = f.flavor();
  const int a = f.dom().dim;
  std::vector<Expr> shift;
  shift.reserve(static_cast<std::size_t>(g.dom().dim));
  for (int i = 1; i <= g.dom().dim; ++i)
    shift.push_back(Expr::var(a + i, fl));
  std::vector<Expr> exprs = f.exprs();
  for (const Expr& e : g.exprs()) exprs.push_back(substitute(e, shift));
  return Morph({a + g.dom().dim}, {f.cod().dim + g.cod().dim}, fl,
               std::move(exprs));
}

Morph zero_morph(Obj dom, Obj cod, Flavor flavor) {
  std::vector<Expr> exprs(static_cast<std::size_t>(cod.dim),
                          Expr::zero(flavor));
  return Morph(dom, cod, flavor, std::move(exprs));
}

Morph terminal_morph(Obj dom, Flavor flavor) {
  return Morph(dom, {0}, flavor, {});
}

Morph add_morphs(const Morph& f, const Morph& g) {
  if (f.dom() != g.dom() || f.cod() != g.cod())
    throw DimensionError("adding morphisms of different shapes");
  if (f.flavor() != g.flavor()) throw FlavorError("adding flavor mismatch");
  std::vector<Expr> exprs;
  exprs.reserve(f.exprs().size());
  for (int i = 0; i < f.cod().dim; ++i)
    exprs.push_back(Expr::add(f.expr(i), g.expr(i)));
  return Morph(f.dom(), f.cod(), f.flavor(), std::move(exprs));
}

Morph constant_morph(Obj dom, const std::vector<Scalar>& values) {
  if (values.empty()) throw DimensionError("constant morphism needs a flavor");
  const Flavor fl = values.front().flavor();
  std::vector<Expr> exprs;
  exprs.reserve(values.size());
  for (const Scalar& v : values) exprs.push_back(Expr::constant(v));
  return Morph(dom, {static_cast<int>(values.size())}, fl, std::move(exprs));
}

Morph compose(const Morph& g, const Morph& f) {
  if (f.cod() != g.dom())
    throw DimensionError("composition shape mismatch: inner codomain " +
                         std::to_string(f.cod().dim) + ", outer domain " +
                         std::to_string(g.dom().dim));
  if (f.flavor() != g.flavor()) throw FlavorError("composition flavor mismatch");
  std::vector<Expr> exprs;
  exprs.reserve(g.exprs().size());
  for (const Expr& e : g.exprs()) exprs.push_back(substitute(e, f.exprs()));
  return Morph(f.dom(), g.cod(), g.flavor(), std::move(exprs));
}

// --- differential combinator ---------------------------------------------------

Morph differentiate(const Morph& f) {
  const int n = f.dom().dim;
  const Flavor fl = f.flavor();
  std::vector<Expr> exprs;
  exprs.reserve(f.exprs().size());
  for (const Expr& fj : f.exprs()) {
    Expr sum = Expr::zero(fl);
    bool empty = true;
    for (int i = 1; i <= n; ++i) {
      Expr di = partial_derivative(fj, i);
      if (di.is_const_zero()) continue;
      Expr term = di.is_const_one() ? Expr::var(n + i, fl)
                                    : Expr::mul(di, Expr::var(n + i, fl));
      sum = empty ? term : Expr::add(sum, term);
      empty = false;
    }
    exprs.push_back(sum);
  }
  return Morph({2 * n}, f.cod(), fl, std::move(exprs));
}

namespace {

void check_split(const Morph& f, int n1, int n2) {
  if (n1 < 0 || n2 < 0 || n1 + n2 != f.dom().dim)
    throw DimensionError("split does not match the domain");
}

}  // namespace

Morph partial_differentiate(const Morph& f, const Block& block) {
  check_split(f, block.n1, block.n2);
  const int n = block.n1 + block.n2;
  const int nb = block.size();
  const Flavor fl = f.flavor();
  // Insertion (a, b, c) |-> ((a, b), (c, 0)) or ((a, b), (0, c)).
  std::vector<Expr> ins;
  ins.reserve(static_cast<std::size_t>(2 * n));
  for (int i = 1; i <= n; ++i) ins.push_back(Expr::var(i, fl));
  for (int i = 1; i <= n; ++i) ins.push_back(Expr::zero(fl));
  const int offset = block.which == BlockSide::First ? 0 : block.n1;
  for (int i = 1; i <= nb; ++i)
    ins[static_cast<std::size_t>(n + offset + i - 1)] = Expr::var(n + i, fl);
  return compose(differentiate(f), Morph({n + nb}, {2 * n}, fl, std::move(ins)));
}

bool is_linear(const Morph& f, const EqConfig& cfg) {
  return is_linear_given(f, differentiate(f), cfg);
}

bool is_linear_given(const Morph& f, const Morph& df, const EqConfig& cfg) {
  const int n = f.dom().dim;
  Morph rhs = compose(f, projection(n, n, 1, f.flavor()));
  return morphs_equal(df, rhs, cfg);
}

bool is_linear_in(const Morph& f, const Block& block, const EqConfig& cfg) {
  return is_linear_in_given(f, differentiate(f), block, cfg);
}

std::pair<Morph, Morph> linearity_equation(const Morph& f, const Morph& df,
                                           const Block& block) {
  check_split(f, block.n1, block.n2);
  const int n = block.n1 + block.n2;
  const int nb = block.size();
  const Flavor fl = f.flavor();
  std::vector<Expr> ins;
  for (int i = 1; i <= n; ++i) ins.push_back(Expr::var(i, fl));
  for (int i = 1; i <= n; ++i) ins.push_back(Expr::zero(fl));
  const int offset = block.which == BlockSide::First ? 0 : block.n1;
  for (int i = 1; i <= nb; ++i)
    ins[static_cast<std::size_t>(n + offset + i - 1)] = Expr::var(n + i, fl);
  Morph lhs = compose(df, Morph({n + nb}, {2 * n}, fl, std::move(ins)));

  std::vector<Expr> sub;
  for (int i = 1; i <= n; ++i) sub.push_back(Expr::var(i, fl));
  for (int i = 1; i <= nb; ++i)
    sub[static_cast<std::size_t>(offset + i - 1)] = Expr::var(n + i, fl);
  Morph rhs = compose(f, Morph({n + nb}, {n}, fl, std::move(sub)));
  return {std::move(lhs), std::move(rhs)};
}

bool is_linear_in_given(const Morph& f, const Morph& df, const Block& block,
                        const EqConfig& cfg) {
  auto [lhs, rhs] = linearity_equation(f, df, block);
  return morphs_equal(lhs, rhs, cfg);
}

bool is_bilinear(const Morph& f, std::pair<int, int> split,
                 const EqConfig& cfg) {
  return is_linear_in(f, {BlockSide::First, split.first, split.second}, cfg) &&
         is_linear_in(f, {BlockSide::Second, split.first, split.second}, cfg);
}

Morph linearize_partial(const Morph& f, std::pair<int, int> split) {
  check_split(f, split.first, split.second);
  const int n1 = split.first;
  const int n2 = split.second;
  const Flavor fl = f.flavor();
  // (a, b) |-> ((a, 0), (0, b))
  std::vector<Expr> ins;
  ins.reserve(static_cast<std::size_t>(2 * (n1 + n2)));
  for (int i = 1; i <= n1; ++i) ins.push_back(Expr::var(i, fl));
  for (int i = 0; i < n2; ++i) ins.push_back(Expr::zero(fl));
  for (int i = 0; i < n1; ++i) ins.push_back(Expr::zero(fl));
  for (int i = 1; i <= n2; ++i) ins.push_back(Expr::var(n1 + i, fl));
  return compose(differentiate(f),
                 Morph(f.dom(), {2 * (n1 + n2)}, fl, std::move(ins)));
}

// --- equality -------------------------------------------------------------------

MorphCompare morph_compare(const Morph& f, const Morph& g,
                           const EqConfig& cfg) {
  if (f.dom() != g.dom() || f.cod() != g.cod())
    throw DimensionError("comparing morphisms of different shapes");
  if (f.flavor() != g.flavor())
    throw FlavorError("comparing morphisms of different flavors");

  if (f.flavor() == Flavor::Exact) {
    for (int i = 0; i < f.cod().dim; ++i) {
      if (!(poly_normal_form(f.expr(i)) == poly_normal_form(g.expr(i)))) {
        EqWitness w;
        w.coord = i;
        return {false, std::move(w)};
      }
    }
    return {true, std::nullopt};
  }

  // Sampled: shared points across all coordinates.
  Rng rng(cfg.seed);
  std::vector<double> point(static_cast<std::size_t>(f.dom().dim));
  int done = 0;
  int attempts = 0;
  const int max_attempts = cfg.samples * 20 + 20;
  while (done < cfg.samples) {
    if (++attempts > max_attempts)
      throw EvalError("sampled equality could not draw enough finite samples");
    for (double& x : point) x = rng.real_in(cfg.box_lo, cfg.box_hi);
    std::vector<double> vf, vg;
    try {
      vf = f.eval_floats(point);
      vg = g.eval_floats(point);
    } catch (const EvalError&) {
      continue;
    }
    for (int i = 0; i < f.cod().dim; ++i) {
      const double a = vf[static_cast<std::size_t>(i)];
      const double b = vg[static_cast<std::size_t>(i)];
      if (std::abs(a - b) >
          cfg.tol_abs + cfg.tol_rel * std::max(std::abs(a), std::abs(b))) {
        EqWitness w;
        w.point = point;
        w.lhs = a;
        w.rhs = b;
        w.deviation = std::abs(a - b);
        w.coord = i;
        return {false, std::move(w)};
      }
    }
    ++done;
  }
  return {true, std::nullopt};
}

bool morphs_equal(const Morph& f, const Morph& g, const EqConfig& cfg) {
  return morph_compare(f, g, cfg).equal;
}

}  // namespace cdiff
