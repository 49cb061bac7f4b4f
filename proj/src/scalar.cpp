#include "cdiff/scalar.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

#include "cdiff/error.hpp"

namespace cdiff {

const char* flavor_name(Flavor flavor) {
  return flavor == Flavor::Exact ? "exact" : "float";
}

Scalar Scalar::exact(long value) { return exact(mpq_class(value)); }

Scalar Scalar::exact(long num, long den) {
  if (den == 0) throw EvalError("rational with zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  return exact(std::move(q));
}

Scalar Scalar::exact(mpq_class value) {
  Scalar s;
  s.flavor_ = Flavor::Exact;
  s.rat_ = std::move(value);
  return s;
}

Scalar Scalar::real(double value) {
  if (!std::isfinite(value)) throw EvalError("non-finite float scalar");
  Scalar s;
  s.flavor_ = Flavor::Float;
  s.flt_ = value;
  return s;
}

Scalar Scalar::zero(Flavor flavor) {
  return flavor == Flavor::Exact ? exact(0L) : real(0.0);
}

Scalar Scalar::one(Flavor flavor) {
  return flavor == Flavor::Exact ? exact(1L) : real(1.0);
}

const mpq_class& Scalar::rat() const {
  if (flavor_ != Flavor::Exact) throw FlavorError("rat() on a float scalar");
  return rat_;
}

double Scalar::flt() const {
  if (flavor_ != Flavor::Float) throw FlavorError("flt() on an exact scalar");
  return flt_;
}

bool Scalar::is_zero() const {
  return flavor_ == Flavor::Exact ? rat_ == 0 : flt_ == 0.0;
}

bool Scalar::is_one() const {
  return flavor_ == Flavor::Exact ? rat_ == 1 : flt_ == 1.0;
}

bool Scalar::is_integer() const {
  return flavor_ == Flavor::Exact && rat_.get_den() == 1;
}

bool Scalar::is_negative() const {
  return flavor_ == Flavor::Exact ? rat_ < 0 : flt_ < 0.0;
}

Scalar Scalar::operator+(const Scalar& other) const {
  if (flavor_ != other.flavor_) throw FlavorError("adding mixed-flavor scalars");
  if (flavor_ == Flavor::Exact) return exact(mpq_class(rat_ + other.rat_));
  return real(flt_ + other.flt_);
}

Scalar Scalar::operator*(const Scalar& other) const {
  if (flavor_ != other.flavor_) throw FlavorError("multiplying mixed-flavor scalars");
  if (flavor_ == Flavor::Exact) return exact(mpq_class(rat_ * other.rat_));
  return real(flt_ * other.flt_);
}

Scalar Scalar::negated() const {
  if (flavor_ == Flavor::Exact) return exact(mpq_class(-rat_));
  return real(-flt_);
}

Scalar Scalar::pow(unsigned exponent) const {
  if (flavor_ == Flavor::Float) return real(std::pow(flt_, exponent));
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), rat_.get_num().get_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), rat_.get_den().get_mpz_t(), exponent);
  return exact(mpq_class(num) / mpq_class(den));
}

bool Scalar::operator==(const Scalar& other) const {
  if (flavor_ != other.flavor_) return false;
  return flavor_ == Flavor::Exact ? rat_ == other.rat_ : flt_ == other.flt_;
}

double Scalar::as_double() const {
  return flavor_ == Flavor::Exact ? rat_.get_d() : flt_;
}

std::string Scalar::str() const {
  if (flavor_ == Flavor::Exact) return rat_.get_str();
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, flt_);
  if (ec != std::errc()) throw EvalError("unprintable float scalar");
  return std::string(buf, end);
}

}  // namespace cdiff
