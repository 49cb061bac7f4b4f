#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cdiff/expr.hpp"

namespace cdiff {

inline constexpr std::uint64_t kDefaultEqSeed = 0xCD1FF;

// Equality decision procedure configuration. Exact comparisons are decided by
// polynomial normal forms and ignore the sampling fields. Float comparisons
// evaluate both sides at `samples` points drawn uniformly from
// [box_lo, box_hi]^n and require
//   |a - b| <= tol_abs + tol_rel * max(|a|, |b|)
// at every sample. Sampled equality can accept unequal functions; exact
// equality cannot.
struct EqConfig {
  double tol_abs = 1e-9;
  double tol_rel = 1e-9;
  int samples = 100;
  std::uint64_t seed = kDefaultEqSeed;
  double box_lo = -2.0;
  double box_hi = 2.0;
};

// Evidence from a failed sampled comparison.
struct EqWitness {
  std::vector<double> point;
  double lhs = 0.0;
  double rhs = 0.0;
  double deviation = 0.0;
  int coord = 0;  // differing coordinate (0-based) for morphism comparisons
};

struct EqOutcome {
  bool equal = true;
  std::optional<EqWitness> witness;
};

EqOutcome expr_compare(const Expr& a, const Expr& b, const EqConfig& cfg = {});
bool expr_equal(const Expr& a, const Expr& b, const EqConfig& cfg = {});

}  // namespace cdiff
