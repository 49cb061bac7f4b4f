#pragma once

#include <gmpxx.h>

#include <map>
#include <utility>
#include <vector>

#include "cdiff/expr.hpp"

namespace cdiff {

// A monomial as (variable index, exponent) pairs sorted by variable, with all
// exponents >= 1. The empty monomial is the constant term.
using Monomial = std::vector<std::pair<int, unsigned>>;

// Fully expanded, collected, zero-pruned polynomial form over exact rationals.
// Normal forms are canonical: two exact polynomial expressions denote the same
// function iff their PolyNF maps are equal.
class PolyNF {
 public:
  PolyNF() = default;

  static PolyNF constant(mpq_class value);
  static PolyNF variable(int index);

  const std::map<Monomial, mpq_class>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  friend bool operator==(const PolyNF&, const PolyNF&) = default;

  PolyNF operator+(const PolyNF& other) const;
  PolyNF operator*(const PolyNF& other) const;
  PolyNF negated() const;
  PolyNF pow(unsigned exponent) const;

  mpq_class eval(const std::vector<mpq_class>& point) const;

 private:
  void add_term(const Monomial& m, const mpq_class& c);

  std::map<Monomial, mpq_class> terms_;
};

// Expansion into normal form. Requires an Exact expression (no transcendental
// nodes); throws FlavorError otherwise.
PolyNF poly_normal_form(const Expr& e);

}  // namespace cdiff
