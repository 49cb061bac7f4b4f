#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace cdiff {

// Deterministic draws on top of std::mt19937_64. The standard <random>
// distributions are not bit-stable across standard libraries, so the draws
// are hand-rolled.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }

  // Inclusive bounds. Modulo bias is irrelevant at test-corpus scale.
  int int_in(int lo, int hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(next() % span);
  }

  double real_in(double lo, double hi) {
    const double u = static_cast<double>(next() >> 11) * 0x1p-53;
    return lo + (hi - lo) * u;
  }

  bool chance(double p) { return real_in(0.0, 1.0) < p; }

  // Independent child stream; deterministic in (parent state, salt).
  Rng fork(std::uint64_t salt) {
    return Rng(next() ^ (salt * 0x9e3779b97f4a7c15ULL));
  }

 private:
  std::mt19937_64 gen_;
};

// FNV-1a, used to derive per-suite seeds from stable names.
constexpr std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace cdiff
