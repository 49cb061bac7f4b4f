#include <doctest.h>

#include <cmath>

#include "cdiff/error.hpp"
#include "cdiff/morph.hpp"
#include "cdiff/rng.hpp"
#include "helpers.hpp"

using namespace cdiff;
using namespace cdiff::test;

namespace {

// Central difference oracle for directional derivatives of float morphisms.
std::vector<double> morph_central_difference(const Morph& f,
                                             const std::vector<double>& a,
                                             const std::vector<double>& b,
                                             double h = 1e-5) {
  std::vector<double> plus(a), minus(a);
  for (std::size_t i = 0; i < a.size(); ++i) {
    plus[i] += h * b[i];
    minus[i] -= h * b[i];
  }
  std::vector<double> fp = f.eval_floats(plus);
  std::vector<double> fm = f.eval_floats(minus);
  for (std::size_t j = 0; j < fp.size(); ++j) fp[j] = (fp[j] - fm[j]) / (2 * h);
  return fp;
}

}  // namespace

TEST_CASE("structure maps") {
  Morph id2 = identity_morph(2, Flavor::Exact);
  CHECK(print_expr(id2.expr(0)) == "x1");
  CHECK(print_expr(id2.expr(1)) == "x2");

  Morph p1 = projection(1, 2, 1, Flavor::Exact);
  CHECK(p1.dom().dim == 3);
  CHECK(print_expr(p1.expr(0)) == "x2");
  CHECK(print_expr(p1.expr(1)) == "x3");

  Morph i0 = injection(1, 1, 0, Flavor::Exact);
  CHECK(i0.cod().dim == 2);
  CHECK(print_expr(i0.expr(0)) == "x1");
  CHECK(i0.expr(1).is_const_zero());
}

TEST_CASE("composition is substitution") {
  Morph g = pm({"x1^2"}, 1);
  Morph f = pm({"x1 + x2"}, 2);
  Morph gf = compose(g, f);
  CHECK(morphs_equal(gf, pm({"(x1 + x2)^2"}, 2)));

  Morph h = pm({"x1 * x2", "x1 + 1"}, 2);
  CHECK(morphs_equal(compose(identity_morph(2, Flavor::Exact), h), h));
  CHECK(morphs_equal(compose(h, identity_morph(2, Flavor::Exact)), h));

  Morph k = pm({"x2^3"}, 2);
  CHECK(morphs_equal(compose(projection(2, 1, 0, Flavor::Exact), pairing(h, k)),
                     h));
  CHECK_THROWS_AS(compose(g, h), DimensionError);
}

TEST_CASE("additive structure") {
  Morph f = pm({"x1 * x2"}, 2);
  Morph z = zero_morph({2}, {1}, Flavor::Exact);
  CHECK(morphs_equal(add_morphs(f, z), f));
  CHECK(morphs_equal(add_morphs(pm({"x1"}, 1), pm({"x1"}, 1)),
                     pm({"2 * x1"}, 1)));
  // 0 ∘ a = 0 and (f+g) ∘ a = f∘a + g∘a hold by construction; spot-check.
  Morph a = pm({"x1^2", "x1 + 2"}, 1);
  CHECK(morphs_equal(compose(z, a), zero_morph({1}, {1}, Flavor::Exact)));
  Morph g = pm({"x1 + x2"}, 2);
  CHECK(morphs_equal(compose(add_morphs(f, g), a),
                     add_morphs(compose(f, a), compose(g, a))));
}

TEST_CASE("derivative of identity and zero") {
  CHECK(morphs_equal(differentiate(identity_morph(2, Flavor::Exact)),
                     projection(2, 2, 1, Flavor::Exact)));
  CHECK(morphs_equal(differentiate(zero_morph({2}, {1}, Flavor::Exact)),
                     zero_morph({4}, {1}, Flavor::Exact)));
}

TEST_CASE("derivative of a product: symbolic and against the oracle") {
  Morph f = pm({"x1 * x2"}, 2);
  Morph df = differentiate(f);
  // D[f]((a1,a2),(b1,b2)) = a1*b2 + a2*b1
  CHECK(morphs_equal(df, pm({"x1 * x4 + x2 * x3"}, 4)));

  Morph ff = pm({"x1 * x2"}, 2, Flavor::Float);
  Morph dff = differentiate(ff);
  Rng rng(3);
  for (int k = 0; k < 10; ++k) {
    std::vector<double> a{rng.real_in(-2, 2), rng.real_in(-2, 2)};
    std::vector<double> b{rng.real_in(-2, 2), rng.real_in(-2, 2)};
    std::vector<double> want = morph_central_difference(ff, a, b);
    std::vector<double> point{a[0], a[1], b[0], b[1]};
    std::vector<double> got = dff.eval_floats(point);
    for (std::size_t j = 0; j < want.size(); ++j)
      CHECK(std::abs(got[j] - want[j]) <=
            1e-5 * std::max(1.0, std::abs(want[j])));
  }
}

TEST_CASE("partial derivative in the second block") {
  // f(x, y) = x*y; d f(a,y)/dy (b)·c = a*c, with inputs ordered (a, b, c).
  Morph f = pm({"x1 * x2"}, 2);
  Morph d2 = partial_differentiate(f, {BlockSide::Second, 1, 1});
  CHECK(d2.dom().dim == 3);
  CHECK(morphs_equal(d2, pm({"x1 * x3"}, 3)));

  // A map constant in the chosen block has zero partial there.
  Morph g = pm({"x1^2"}, 2);
  CHECK(morphs_equal(partial_differentiate(g, {BlockSide::Second, 1, 1}),
                     zero_morph({3}, {1}, Flavor::Exact)));
}

TEST_CASE("total derivative is the sum of the partials") {
  Rng rng(17);
  for (int k = 0; k < 20; ++k) {
    const int n1 = rng.int_in(1, 2), n2 = rng.int_in(1, 2);
    const int n = n1 + n2;
    std::vector<Expr> exprs;
    for (int j = 0; j < 2; ++j) {
      Expr e = Expr::constant(Scalar::exact(rng.int_in(-3, 3)));
      for (int t = 0; t < 4; ++t) {
        Expr term = Expr::constant(Scalar::exact(rng.int_in(-3, 3)));
        for (int d = 0; d < rng.int_in(1, 3); ++d)
          term = Expr::mul(term, Expr::var(rng.int_in(1, n), Flavor::Exact));
        e = Expr::add(e, term);
      }
      exprs.push_back(e);
    }
    Morph f({n}, {2}, Flavor::Exact, exprs);
    Morph df = differentiate(f);  // dom 2n: (a, b, c, d)
    // Sum of partials, re-expanded over the 2n variables of D[f].
    Morph d1 = partial_differentiate(f, {BlockSide::First, n1, n2});
    Morph d2 = partial_differentiate(f, {BlockSide::Second, n1, n2});
    const Flavor fl = Flavor::Exact;
    std::vector<Expr> sel1, sel2;
    for (int i = 1; i <= n; ++i) sel1.push_back(Expr::var(i, fl));
    for (int i = 1; i <= n1; ++i) sel1.push_back(Expr::var(n + i, fl));
    for (int i = 1; i <= n; ++i) sel2.push_back(Expr::var(i, fl));
    for (int i = 1; i <= n2; ++i) sel2.push_back(Expr::var(n + n1 + i, fl));
    Morph lhs = add_morphs(compose(d1, Morph({2 * n}, {n + n1}, fl, sel1)),
                           compose(d2, Morph({2 * n}, {n + n2}, fl, sel2)));
    CHECK(morphs_equal(df, lhs));
  }
}

TEST_CASE("linearity predicates") {
  CHECK(is_linear(pm({"3 * x1 + x2"}, 2)));
  CHECK_FALSE(is_linear(pm({"x1^2"}, 1)));
  CHECK_FALSE(is_linear(pm({"x1 + 1"}, 1)));
  CHECK(is_bilinear(pm({"x1 * x2"}, 2), {1, 1}));
  CHECK_FALSE(is_bilinear(pm({"x1 * x2 + x1"}, 2), {1, 1}));
  CHECK(is_linear_in(pm({"x1 * x2"}, 2), {BlockSide::Second, 1, 1}));
}

TEST_CASE("derivatives are linear in the direction") {
  Rng rng(23);
  for (const char* src : {"x1^3 + 2 * x1 * x2", "x1 * x2^2 - x2", "x1 + 1"}) {
    Morph f = pm({src}, 2);
    Morph df = differentiate(f);
    CHECK(is_linear_in(df, {BlockSide::Second, 2, 2}));
  }
}

TEST_CASE("partial linearization") {
  // f(x,y) = x*y is already linear in y: a fixed point.
  Morph f = pm({"x1 * x2"}, 2);
  CHECK(morphs_equal(linearize_partial(f, {1, 1}), f));
  // f(x,y) = x + y^2 linearizes to 0.
  Morph g = pm({"x1 + x2^2"}, 2);
  CHECK(morphs_equal(linearize_partial(g, {1, 1}),
                     zero_morph({2}, {1}, Flavor::Exact)));
  // Idempotent, and the result is linear in the second block.
  Morph h = pm({"x1 * x2 + x2^3 + x1"}, 2);
  Morph lh = linearize_partial(h, {1, 1});
  CHECK(is_linear_in(lh, {BlockSide::Second, 1, 1}));
  CHECK(morphs_equal(linearize_partial(lh, {1, 1}), lh));
}

TEST_CASE("linear maps are closed under composition, addition, pairing") {
  Morph f = pm({"x1 + 2 * x2", "x2"}, 2);
  Morph g = pm({"3 * x1 - x2"}, 2);
  REQUIRE(is_linear(f));
  REQUIRE(is_linear(g));
  CHECK(is_linear(compose(g, f)));
  CHECK(is_linear(pairing(f, g)));
  CHECK(is_linear(add_morphs(g, pm({"x1"}, 2))));
  // Linear maps are additive: f∘(a+b) = f∘a + f∘b.
  Morph a = pm({"x1^2", "x1"}, 1);
  Morph b = pm({"x1 + 1", "2 * x1"}, 1);
  CHECK(morphs_equal(compose(f, add_morphs(a, b)),
                     add_morphs(compose(f, a), compose(f, b))));
}

TEST_CASE("degenerate dimension-zero objects") {
  Morph bang = terminal_morph({3}, Flavor::Exact);
  CHECK(bang.cod().dim == 0);
  Morph c = constant_morph({0}, {Scalar::exact(4L), Scalar::exact(7L)});
  Morph through = compose(c, bang);
  CHECK(morphs_equal(through, pm({"4", "7"}, 3)));
  CHECK(morphs_equal(differentiate(bang), terminal_morph({6}, Flavor::Exact)));
}
