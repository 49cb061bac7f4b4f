#include "cdiff/equality.hpp"

#include <algorithm>
#include <cmath>

#include "cdiff/error.hpp"
#include "cdiff/poly.hpp"
#include "cdiff/rng.hpp"

namespace cdiff {

namespace {

bool close(double a, double b, const EqConfig& cfg) {
  return std::abs(a - b) <=
         cfg.tol_abs + cfg.tol_rel * std::max(std::abs(a), std::abs(b));
}

}  // namespace

EqOutcome expr_compare(const Expr& a, const Expr& b, const EqConfig& cfg) {
  if (a.flavor() != b.flavor())
    throw FlavorError("comparing mixed-flavor expressions");
  if (a.flavor() == Flavor::Exact)
    return {poly_normal_form(a) == poly_normal_form(b), std::nullopt};

  const int n = std::max(a.max_var(), b.max_var());
  Rng rng(cfg.seed);
  std::vector<double> point(static_cast<std::size_t>(n));
  int done = 0;
  int attempts = 0;
  const int max_attempts = cfg.samples * 20 + 20;
  while (done < cfg.samples) {
    if (++attempts > max_attempts)
      throw EvalError("sampled equality could not draw enough finite samples");
    for (double& x : point) x = rng.real_in(cfg.box_lo, cfg.box_hi);
    double va, vb;
    try {
      va = eval_float(a, point);
      vb = eval_float(b, point);
    } catch (const EvalError&) {
      continue;  // overflowed sample; redraw
    }
    if (!close(va, vb, cfg)) {
      EqWitness w;
      w.point = point;
      w.lhs = va;
      w.rhs = vb;
      w.deviation = std::abs(va - vb);
      return {false, std::move(w)};
    }
    ++done;
  }
  return {true, std::nullopt};
}

bool expr_equal(const Expr& a, const Expr& b, const EqConfig& cfg) {
  return expr_compare(a, b, cfg).equal;
}

}  // namespace cdiff
