#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cdiff {

// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed expression or morphism-file text. `pos` is a 0-based character
// offset into the parsed buffer.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t pos)
      : Error(msg + " (at offset " + std::to_string(pos) + ")"),
        message_(msg),
        pos_(pos) {}

  const std::string& message() const { return message_; }
  std::size_t pos() const { return pos_; }

 private:
  std::string message_;
  std::size_t pos_;
};

// Mixing Exact and Float values, or a node that the scalar flavor cannot
// represent (transcendental in Exact, negation in the nat semiring).
class FlavorError : public Error {
 public:
  using Error::Error;
};

// Domain/codomain or split mismatch.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Arity mismatch or a non-finite Float result.
class EvalError : public Error {
 public:
  using Error::Error;
};

// Precondition violation: currying a map that is not linear in its second
// argument. Carries a textual witness of the failed defining equation.
class CurryOfNonlinearError : public Error {
 public:
  CurryOfNonlinearError(const std::string& msg, std::string witness)
      : Error(msg), witness_(std::move(witness)) {}

  const std::string& witness() const { return witness_; }

 private:
  std::string witness_;
};

// A map between idempotent-completion objects that fails f∘e = e'∘f.
class HomConditionError : public Error {
 public:
  HomConditionError(const std::string& msg, std::string witness)
      : Error(msg), witness_(std::move(witness)) {}

  const std::string& witness() const { return witness_; }

 private:
  std::string witness_;
};

// Splitting preconditions: the given endomap is not idempotent / not linear.
class NotIdempotentError : public Error {
 public:
  using Error::Error;
};

class NotLinearError : public Error {
 public:
  using Error::Error;
};

}  // namespace cdiff
