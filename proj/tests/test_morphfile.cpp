#include <doctest.h>

#include "cdiff/error.hpp"
#include "cdiff/morphfile.hpp"
#include "helpers.hpp"

using namespace cdiff;
using namespace cdiff::test;

TEST_CASE("parse a basic file") {
  MorphFile mf = parse_morph_file(
      "# product map\n"
      "dom 2\n"
      "cod 1\n"
      "scalar exact\n"
      "expr x1 * x2\n");
  CHECK(mf.morph.dom().dim == 2);
  CHECK(mf.morph.cod().dim == 1);
  CHECK(!mf.split);
  CHECK(morphs_equal(mf.morph, pm({"x1 * x2"}, 2)));
}

TEST_CASE("split header and trailing comments") {
  MorphFile mf = parse_morph_file(
      "dom 3\ncod 1\nscalar float\nsplit 1 2\n"
      "expr x1 * x2 + x3  # linear in the second block\n");
  REQUIRE(mf.split);
  CHECK(*mf.split == std::pair{1, 2});
  CHECK(mf.morph.flavor() == Flavor::Float);
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(parse_morph_file("dom 2\ncod 1\nexpr x1\n"), ParseError);
  CHECK_THROWS_AS(parse_morph_file("dom 2\ncod 2\nscalar exact\nexpr x1\n"),
                  ParseError);
  CHECK_THROWS_AS(
      parse_morph_file("dom 2\ncod 1\nscalar exact\nsplit 1 2\nexpr x1\n"),
      ParseError);
  CHECK_THROWS_AS(parse_morph_file("dom 2\ncod 1\nscalar exact\nexpr x9\n"),
                  ParseError);
  CHECK_THROWS_AS(
      parse_morph_file("dom 2\ncod 1\nscalar exact\nexpr sin(x1)\n"),
      ParseError);
  // nat semiring forbids '-' in exact files.
  CHECK_THROWS_AS(
      parse_morph_file("dom 1\ncod 1\nscalar exact\nexpr x1 - x1\n", true),
      ParseError);
  CHECK_NOTHROW(
      parse_morph_file("dom 1\ncod 1\nscalar exact\nexpr x1 - x1\n", false));
}

TEST_CASE("print/parse round-trip") {
  Morph f = pm({"x1^2 - 2/3 * x2", "x1 * x2 + 1"}, 2);
  std::string text = print_morph_file(f, std::pair{1, 1});
  MorphFile back = parse_morph_file(text);
  CHECK(morphs_equal(back.morph, f));
  REQUIRE(back.split);
  CHECK(*back.split == std::pair{1, 1});
  // Printing is stable under one round trip.
  CHECK(print_morph_file(back.morph, back.split) == text);
}

TEST_CASE("float morphisms round-trip through shortest printing") {
  Morph f = pm({"0.1 * x1 + sin(x2)", "exp(x1) * 2.5e-2"}, 2, Flavor::Float);
  MorphFile back = parse_morph_file(print_morph_file(f));
  CHECK(morphs_equal(back.morph, f));
}
