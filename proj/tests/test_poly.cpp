#include <doctest.h>

#include "cdiff/equality.hpp"
#include "cdiff/error.hpp"
#include "cdiff/poly.hpp"
#include "cdiff/rng.hpp"
#include "helpers.hpp"

using namespace cdiff;
using namespace cdiff::test;

TEST_CASE("binomial expansion") {
  PolyNF p = poly_normal_form(pe("(x1 + x2)^2", 2));
  REQUIRE(p.terms().size() == 3);
  CHECK(p.terms().at({{1, 2}}) == 1);
  CHECK(p.terms().at({{1, 1}, {2, 1}}) == 2);
  CHECK(p.terms().at({{2, 2}}) == 1);
}

TEST_CASE("cancellation and absorption prune to the empty map") {
  CHECK(poly_normal_form(pe("x1 - x1", 1)).is_zero());
  CHECK(poly_normal_form(pe("0 * x1", 1)).is_zero());
}

TEST_CASE("transcendental nodes are rejected") {
  CHECK_THROWS_AS(poly_normal_form(pe("sin(x1)", 1, Flavor::Float)),
                  FlavorError);
}

TEST_CASE("normal form preserves evaluation at random rational points") {
  Rng rng(5);
  for (int k = 0; k < 5; ++k) {
    std::function<Expr(int)> go = [&](int d) -> Expr {
      if (d == 0 || rng.chance(0.25)) {
        if (rng.chance(0.6)) return Expr::var(rng.int_in(1, 3), Flavor::Exact);
        return Expr::constant(Scalar::exact(rng.int_in(-3, 3)));
      }
      switch (rng.int_in(0, 3)) {
        case 0: return Expr::add(go(d - 1), go(d - 1));
        case 1: return Expr::mul(go(d - 1), go(d - 1));
        case 2: return Expr::neg(go(d - 1));
        default: return Expr::pow(go(d - 1), unsigned(rng.int_in(0, 3)));
      }
    };
    Expr e = go(4);
    PolyNF p = poly_normal_form(e);
    for (int j = 0; j < 50; ++j) {
      std::vector<mpq_class> qs;
      std::vector<Scalar> ss;
      for (int i = 0; i < 3; ++i) {
        mpq_class q(rng.int_in(-9, 9), rng.int_in(1, 7));
        q.canonicalize();
        qs.push_back(q);
        ss.push_back(Scalar::exact(q));
      }
      CHECK(p.eval(qs) == eval_expr(e, ss).rat());
    }
  }
}

TEST_CASE("exact equality is a congruence for add and mul") {
  // b is a restructured form of a with the same value.
  Expr a1 = pe("(x1 + x2) * x1", 2);
  Expr a2 = pe("x1^2 + x2 * x1", 2);
  Expr b1 = pe("x1 * x2 + 1 - 1 + x2", 2);
  Expr b2 = pe("x2 * (x1 + 1)", 2);
  REQUIRE(expr_equal(a1, a2));
  REQUIRE(expr_equal(b1, b2));
  CHECK(expr_equal(Expr::add(a1, b1), Expr::add(a2, b2)));
  CHECK(expr_equal(Expr::mul(a1, b1), Expr::mul(a2, b2)));
  // Reflexive, symmetric, transitive spot checks.
  CHECK(expr_equal(a1, a1));
  CHECK(expr_equal(a2, a1));
  Expr a3 = pe("x1 * x1 + x1 * x2", 2);
  CHECK((expr_equal(a1, a2) && expr_equal(a2, a3) && expr_equal(a1, a3)));
}
