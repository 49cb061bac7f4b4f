#pragma once

#include <gmpxx.h>

#include <string>

namespace cdiff {

// Two scalar flavors share one morphism calculus. Exact is the rational
// semiring/ring (decidable equality through polynomial normal forms), Float is
// double precision (sampled equality).
enum class Flavor { Exact, Float };

const char* flavor_name(Flavor flavor);

// A ground-ring element: an arbitrary-precision rational (Exact) or a finite
// double (Float). Exact values are kept canonical; Float values are never
// NaN/Inf (construction throws instead).
class Scalar {
 public:
  Scalar() : flavor_(Flavor::Exact), rat_(0) {}

  static Scalar exact(long value);
  static Scalar exact(long num, long den);
  static Scalar exact(mpq_class value);
  static Scalar real(double value);
  static Scalar zero(Flavor flavor);
  static Scalar one(Flavor flavor);

  Flavor flavor() const { return flavor_; }
  const mpq_class& rat() const;
  double flt() const;

  bool is_zero() const;
  bool is_one() const;
  bool is_integer() const;  // Exact only
  bool is_negative() const;

  Scalar operator+(const Scalar& other) const;
  Scalar operator*(const Scalar& other) const;
  Scalar negated() const;
  Scalar pow(unsigned exponent) const;
  bool operator==(const Scalar& other) const;

  // Lossy for Exact values that are not exactly representable.
  double as_double() const;

  // "p/q" (or the bare integer) for Exact, shortest round-trip for Float.
  std::string str() const;

 private:
  Flavor flavor_;
  mpq_class rat_;
  double flt_ = 0.0;
};

}  // namespace cdiff
