#pragma once

#include <functional>
#include <span>
#include <vector>

#include "cdiff/expr.hpp"
#include "cdiff/morph.hpp"
#include "cdiff/rng.hpp"

namespace cdiff::test {

inline Expr pe(std::string_view text, int n_vars,
               Flavor flavor = Flavor::Exact) {
  return parse_expr(text, n_vars, flavor);
}

inline Morph pm(std::vector<std::string> coords, int n_vars,
                Flavor flavor = Flavor::Exact) {
  std::vector<Expr> exprs;
  for (const auto& c : coords) exprs.push_back(parse_expr(c, n_vars, flavor));
  const int m = static_cast<int>(exprs.size());
  return Morph({n_vars}, {m}, flavor, std::move(exprs));
}

// Independent of the symbolic derivative path: central difference of a plain
// double-valued function. Used as the oracle wherever a derivative value is
// asserted.
inline double central_difference(const std::function<double(double)>& f,
                                 double x, double h = 1e-5) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

inline std::vector<Scalar> qpoint(std::initializer_list<long> values) {
  std::vector<Scalar> out;
  for (long v : values) out.push_back(Scalar::exact(v));
  return out;
}

inline std::vector<Scalar> fpoint(std::initializer_list<double> values) {
  std::vector<Scalar> out;
  for (double v : values) out.push_back(Scalar::real(v));
  return out;
}

}  // namespace cdiff::test
