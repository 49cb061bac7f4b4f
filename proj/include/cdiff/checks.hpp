#pragma once

#include <json.hpp>

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cdiff/equality.hpp"
#include "cdiff/linmorph.hpp"
#include "cdiff/morph.hpp"
#include "cdiff/rng.hpp"

namespace cdiff {

// Corpus configuration. Every suite run is deterministic in
// (suite id, seed, config).
struct CorpusConfig {
  int max_dim = 4;
  int max_degree = 3;
  int count = 100;
  std::uint64_t seed = 0;
  Flavor flavor = Flavor::Exact;
  bool nat_semiring = false;
};

// One universally-quantified axiom instance: a morphism together with context
// points a,b,c,d : Γ -> dom(f) drawn as random morphisms (context checking is
// strictly stronger than checking at constants).
struct CorpusCase {
  Morph f;
  Morph a, b, c, d;
};

struct ComposablePair {
  Morph f, g;  // g ∘ f is well-typed
};

struct MorphPair {
  Morph f, g;  // equal domains and codomains
};

struct Corpus {
  std::vector<CorpusCase> cases;
  std::vector<ComposablePair> composable;
  std::vector<MorphPair> addable;   // for sums (equal dom and cod)
  std::vector<MorphPair> pairable;  // for pairings (equal dom)
};

Corpus gen_corpus(const CorpusConfig& cfg);

// Random generators shared by the suites.
Expr gen_expr(Rng& rng, int n_vars, const CorpusConfig& cfg);
Morph gen_morph(Rng& rng, int dom, int cod, const CorpusConfig& cfg);
Morph gen_linear_morph(Rng& rng, int dom, int cod, const CorpusConfig& cfg);
// Linear in the second block: a sum of coefficient(x) * y_i terms.
Morph gen_linear_in_second(Rng& rng, int n, int k, int m,
                           const CorpusConfig& cfg);
LinMorph gen_matrix(Rng& rng, int rows, int cols, const CorpusConfig& cfg);
// Exact linear idempotent P·diag(0/1)·P^{-1} with unimodular integer P, so
// idempotency holds on the nose.
LinMorph gen_idempotent(Rng& rng, int n);

// Central difference (f(a + h·b) - f(a - h·b)) / 2h. Float flavor only.
std::vector<double> finite_difference(const Morph& f, std::span<const double> a,
                                      std::span<const double> b, double h);

// Documented single-primitive corruptions for mutation sanity checks. Each is
// caught by at least one suite:
//   deriv-at-direction:  partials evaluated at the direction block  -> cd2/cd5
//   deriv-diagonal:      derivative keeps only the matching-index term -> cd3/cd5
//   reverse-sign:        reverse derivative negated -> reverse-roundtrip
//   transpose-identity:  transpose replaced by the identity -> transpose-laws
//   curry-column-major:  curry laid out column-major -> factorization
enum class Mutation {
  None,
  DerivAtDirection,
  DerivDiagonal,
  ReverseSign,
  TransposeIdentity,
  CurryColumnMajor,
};

Mutation mutation_from_name(std::string_view name);
std::vector<std::string> mutation_names();

struct LawResult {
  std::string law;
  int cases = 0;
  int failures = 0;
};

struct CheckFailure {
  std::string law;
  std::string witness;
};

struct CheckReport {
  std::string suite;
  std::uint64_t seed = 0;
  bool passed = true;
  std::vector<LawResult> laws;
  std::vector<CheckFailure> failures;
  std::string warning;

  nlohmann::ordered_json to_json() const;
  std::string text() const;
};

// cd1..cd7 plus the named law suites.
const std::vector<std::string>& suite_ids();

CheckReport run_suite(std::string_view suite_id, const CorpusConfig& cfg,
                      Mutation mutation = Mutation::None,
                      const EqConfig& eq = {});

}  // namespace cdiff
