#include <cctype>
#include <string>

#include "cdiff/error.hpp"
#include "cdiff/expr.hpp"

namespace cdiff {

namespace {

struct Parser {
  std::string_view text;
  std::size_t pos = 0;
  int n_vars;
  Flavor flavor;
  bool nat;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, pos);
  }

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  bool eat(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }

  Expr expression() {
    Expr acc = term();
    for (;;) {
      if (eat('+')) {
        acc = Expr::add(acc, term());
      } else if (peek() == '-') {
        if (flavor == Flavor::Exact && nat)
          fail("'-' is not available in the nat semiring");
        ++pos;
        acc = Expr::add(acc, Expr::neg(term()));
      } else {
        return acc;
      }
    }
  }

  Expr term() {
    Expr acc = factor();
    while (eat('*')) acc = Expr::mul(acc, factor());
    return acc;
  }

  Expr factor() {
    Expr b = base();
    if (eat('^')) return Expr::pow(b, nonneg_int("exponent"));
    return b;
  }

  Expr base() {
    const char c = peek();
    if (c == '(') {
      ++pos;
      Expr e = expression();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (c == 'x' && pos + 1 < text.size() &&
        std::isdigit(static_cast<unsigned char>(text[pos + 1]))) {
      ++pos;
      const int index = static_cast<int>(nonneg_int("variable index"));
      if (index < 1) fail("variable index must be >= 1");
      if (index > n_vars)
        fail("variable x" + std::to_string(index) + " out of range (domain has " +
             std::to_string(n_vars) + " variables)");
      return Expr::var(index, flavor);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) return function_call();
    if (std::isdigit(static_cast<unsigned char>(c))) return number();
    fail("expected a number, variable, function, or '('");
  }

  Expr function_call() {
    const std::size_t start = pos;
    std::string name;
    while (pos < text.size() &&
           std::isalpha(static_cast<unsigned char>(text[pos])))
      name += text[pos++];
    PrimFn fn;
    if (name == "sin") {
      fn = PrimFn::Sin;
    } else if (name == "cos") {
      fn = PrimFn::Cos;
    } else if (name == "exp") {
      fn = PrimFn::Exp;
    } else {
      pos = start;
      fail("unknown function '" + name + "'");
    }
    if (flavor == Flavor::Exact) {
      pos = start;
      fail("'" + name + "' requires the float scalar flavor");
    }
    if (!eat('(')) fail("expected '(' after '" + name + "'");
    Expr arg = expression();
    if (!eat(')')) fail("expected ')'");
    return Expr::prim(fn, arg);
  }

  unsigned long nonneg_int(const char* what) {
    skip_ws();
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
      fail(std::string("expected ") + what);
    unsigned long v = 0;
    while (pos < text.size() &&
           std::isdigit(static_cast<unsigned char>(text[pos]))) {
      v = v * 10 + static_cast<unsigned long>(text[pos] - '0');
      if (v > 1'000'000'000UL) fail(std::string(what) + " too large");
      ++pos;
    }
    return v;
  }

  // number := digits ('/' digits | ['.' digits] [('e'|'E') ['+'|'-'] digits])
  Expr number() {
    const std::size_t start = pos;
    std::string digits;
    while (pos < text.size() &&
           std::isdigit(static_cast<unsigned char>(text[pos])))
      digits += text[pos++];
    if (pos < text.size() && text[pos] == '/') {
      ++pos;
      if (pos >= text.size() ||
          !std::isdigit(static_cast<unsigned char>(text[pos])))
        fail("expected denominator digits");
      std::string den;
      while (pos < text.size() &&
             std::isdigit(static_cast<unsigned char>(text[pos])))
        den += text[pos++];
      if (flavor == Flavor::Float) {
        return Expr::constant(
            Scalar::real(std::stod(digits) / std::stod(den)));
      }
      mpq_class q{digits + "/" + den};
      if (q.get_den() == 0) fail("zero denominator");
      q.canonicalize();
      return Expr::constant(Scalar::exact(std::move(q)));
    }
    std::string frac;
    if (pos < text.size() && text[pos] == '.') {
      ++pos;
      while (pos < text.size() &&
             std::isdigit(static_cast<unsigned char>(text[pos])))
        frac += text[pos++];
      if (frac.empty()) fail("expected digits after '.'");
    }
    long exp10 = 0;
    if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
      ++pos;
      bool neg = false;
      if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        neg = text[pos] == '-';
        ++pos;
      }
      if (pos >= text.size() ||
          !std::isdigit(static_cast<unsigned char>(text[pos])))
        fail("expected exponent digits");
      while (pos < text.size() &&
             std::isdigit(static_cast<unsigned char>(text[pos]))) {
        exp10 = exp10 * 10 + (text[pos] - '0');
        if (exp10 > 100000) fail("exponent too large");
        ++pos;
      }
      if (neg) exp10 = -exp10;
    }
    if (flavor == Flavor::Float)
      return Expr::constant(
          Scalar::real(std::stod(std::string(text.substr(start, pos - start)))));
    // Exact decimal: digits.frac × 10^exp10 as a rational.
    mpz_class mantissa{digits + frac};
    long shift = exp10 - static_cast<long>(frac.size());
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10,
                  static_cast<unsigned long>(shift < 0 ? -shift : shift));
    mpq_class q = shift < 0 ? mpq_class(mantissa, scale)
                            : mpq_class(mantissa * scale);
    q.canonicalize();
    return Expr::constant(Scalar::exact(std::move(q)));
  }
};

}  // namespace

Expr parse_expr(std::string_view text, int n_vars, Flavor flavor,
                bool nat_semiring) {
  if (n_vars < 0) throw DimensionError("negative variable count");
  Parser p{text, 0, n_vars, flavor, nat_semiring};
  Expr e = p.expression();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("unexpected trailing input");
  return e;
}

}  // namespace cdiff
