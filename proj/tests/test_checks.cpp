#include <doctest.h>

#include <cmath>

#include "cdiff/checks.hpp"
#include "cdiff/linclosed.hpp"
#include "helpers.hpp"

using namespace cdiff;
using namespace cdiff::test;

TEST_CASE("corpus generation is deterministic in the seed") {
  CorpusConfig cfg;
  cfg.count = 5;
  cfg.seed = 0;
  Corpus a = gen_corpus(cfg);
  Corpus b = gen_corpus(cfg);
  REQUIRE(a.cases.size() == b.cases.size());
  for (std::size_t i = 0; i < a.cases.size(); ++i) {
    CHECK(morphs_equal(a.cases[i].f, b.cases[i].f));
    CHECK(morphs_equal(a.cases[i].a, b.cases[i].a));
  }
  CheckReport r1 = run_suite("cd5", cfg);
  CheckReport r2 = run_suite("cd5", cfg);
  CHECK(r1.to_json() == r2.to_json());
}

TEST_CASE("empty corpus passes vacuously with a warning") {
  CorpusConfig cfg;
  cfg.count = 0;
  CheckReport r = run_suite("cd1", cfg);
  CHECK(r.passed);
  CHECK(!r.warning.empty());
}

TEST_CASE("degree-one generators are linear") {
  CorpusConfig cfg;
  Rng rng(9);
  for (int t = 0; t < 10; ++t) {
    Morph f = gen_linear_morph(rng, rng.int_in(1, 4), rng.int_in(1, 4), cfg);
    CHECK(is_linear(f));
  }
}

TEST_CASE("generated idempotents square to themselves") {
  Rng rng(13);
  for (int t = 0; t < 20; ++t) {
    LinMorph e = gen_idempotent(rng, rng.int_in(1, 4));
    CHECK(e.times(e) == e);
  }
}

TEST_CASE("finite difference oracle") {
  Morph sq = pm({"x1^2"}, 1, Flavor::Float);
  std::vector<double> a{1.0}, b{1.0};
  std::vector<double> d = finite_difference(sq, a, b, 1e-5);
  CHECK(std::abs(d[0] - 2.0) <= 1e-9);

  Morph lin = pm({"3 * x1 + x2", "x1"}, 2, Flavor::Float);
  std::vector<double> p{0.3, -1.2}, dir{0.7, 0.2};
  std::vector<double> fd = finite_difference(lin, p, dir, 1e-5);
  std::vector<double> at_dir = lin.eval_floats(dir);
  CHECK(std::abs(fd[0] - at_dir[0]) <= 1e-9);
  CHECK(std::abs(fd[1] - at_dir[1]) <= 1e-9);

  Morph c = pm({"5"}, 1, Flavor::Float);
  CHECK(finite_difference(c, a, b, 1e-5)[0] == 0.0);
}

TEST_CASE("every suite passes on a small exact corpus") {
  CorpusConfig cfg;
  cfg.count = 6;
  cfg.seed = 1;
  for (const std::string& id : suite_ids()) {
    CheckReport r = run_suite(id, cfg);
    INFO(r.text());
    CHECK(r.passed);
  }
}

TEST_CASE("cd suites pass on a small float corpus") {
  CorpusConfig cfg;
  cfg.count = 6;
  cfg.seed = 2;
  cfg.flavor = Flavor::Float;
  for (const std::string& id :
       {std::string("cd1"), std::string("cd2"), std::string("cd5"),
        std::string("cd7")}) {
    CheckReport r = run_suite(id, cfg);
    INFO(r.text());
    CHECK(r.passed);
  }
}

TEST_CASE("exact suites pass in the nat semiring") {
  CorpusConfig cfg;
  cfg.count = 5;
  cfg.seed = 3;
  cfg.nat_semiring = true;
  for (const std::string& id :
       {std::string("cd1"), std::string("cd5"), std::string("factorization"),
        std::string("jacobian-laws")}) {
    CheckReport r = run_suite(id, cfg);
    INFO(r.text());
    CHECK(r.passed);
  }
}

TEST_CASE("a corrupted derivative is caught by the chain-rule suite") {
  CorpusConfig cfg;
  cfg.count = 8;
  cfg.seed = 4;
  CheckReport r = run_suite("cd5", cfg, Mutation::DerivAtDirection);
  CHECK_FALSE(r.passed);
  REQUIRE(!r.failures.empty());
  CHECK(!r.failures.front().witness.empty());
}

TEST_CASE("every documented mutation is caught by at least one suite") {
  CorpusConfig cfg;
  cfg.count = 8;
  cfg.seed = 5;
  for (const std::string& name : mutation_names()) {
    Mutation m = mutation_from_name(name);
    bool caught = false;
    for (const std::string& id : suite_ids()) {
      if (run_suite(id, cfg, m).passed == false) {
        caught = true;
        break;
      }
    }
    INFO("mutation " << name);
    CHECK(caught);
  }
}
