#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "caterlab/numeric.hpp"
#include "caterlab/tuple.hpp"

namespace caterlab {

/// Seeded stream with platform-independent draws.
///
/// std::mt19937_64 output is fixed by the standard, but the std distributions are
/// not, so every draw here is built from raw 64-bit outputs.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream),
                      static_cast<std::uint32_t>(stream >> 32)};
    engine_.seed(seq);
  }

  std::uint64_t bits() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }

  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  std::size_t index_in(std::size_t lo, std::size_t hi_inclusive) {
    return lo + static_cast<std::size_t>(below(hi_inclusive - lo + 1));
  }

 private:
  std::mt19937_64 engine_;
};

/// Fisher-Yates shuffle of the identity.
inline Permutation random_permutation(Rng& rng, std::size_t n) {
  std::vector<long long> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<long long>(i + 1);
  for (std::size_t i = n; i > 1; --i) {
    std::swap(v[i - 1], v[rng.below(i)]);
  }
  return Permutation::from_one_based(v);
}

inline std::vector<double> log_uniform_values(Rng& rng, std::size_t n, double lo, double hi) {
  std::vector<double> v(n);
  for (auto& x : v) x = rng.log_uniform(lo, hi);
  return v;
}

inline PositiveTuple sorted_log_uniform_tuple(Rng& rng, std::size_t n, double lo, double hi) {
  auto v = log_uniform_values(rng, n, lo, hi);
  std::sort(v.begin(), v.end());
  return PositiveTuple(std::move(v));
}

/// Sorted tuple satisfying a_1^{a_n} >= 1/e: log-uniform on [1/e, 10], resampled
/// until the flag holds.
inline PositiveTuple random_hypothesis_tuple(Rng& rng, std::size_t n) {
  for (;;) {
    PositiveTuple t = sorted_log_uniform_tuple(rng, n, kInvE, 10.0);
    if (t.hypothesis_h()) return t;
  }
}

}  // namespace caterlab
