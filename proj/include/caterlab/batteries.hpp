#pragma once

// Seeded property batteries over the checks in cyclic/rearrangement/lemmas.
// Each battery is sequential and a pure function of (samples, seed).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "caterlab/cyclic.hpp"
#include "caterlab/errors.hpp"
#include "caterlab/lemmas.hpp"
#include "caterlab/random.hpp"
#include "caterlab/rearrangement.hpp"
#include "caterlab/report.hpp"

namespace caterlab {

struct BatteryResult {
  std::string name;
  std::uint64_t seed = 0;
  std::uint64_t checked = 0;
  std::uint64_t holds = 0;
  std::uint64_t equality = 0;
  std::uint64_t violated = 0;
  std::uint64_t contradictions = 0;
  std::uint64_t noteworthy = 0;
  double min_margin = std::numeric_limits<double>::infinity();
  std::string worst_digest;
  std::string first_contradiction;

  bool passed() const { return violated == 0 && contradictions == 0; }

  void record(const EvalReport& r) {
    ++checked;
    switch (r.verdict) {
      case Verdict::holds: ++holds; break;
      case Verdict::equality: ++equality; break;
      case Verdict::violated: ++violated; break;
    }
    if (r.contradicts()) {
      ++contradictions;
      if (first_contradiction.empty()) first_contradiction = r.claim + " @" + r.inputs_digest;
    } else if (!r.note.empty()) {
      ++noteworthy;
    }
    if (r.margin < min_margin) {
      min_margin = r.margin;
      worst_digest = r.inputs_digest;
    }
  }

  void record_contradiction(const ContradictionError& e) {
    ++checked;
    ++contradictions;
    if (first_contradiction.empty()) first_contradiction = std::string(e.what()) + " " + e.provenance();
  }
};

// Battery stream ids keep the batteries independent for one user seed.
namespace detail {
enum StreamId : std::uint64_t {
  kLemma301 = 1,
  kPhiAboveOne,
  kPhiBelowOne,
  kTwoVar,
  kCater2,
  kInduction,
  kUpperChain,
  kLowerChain,
  kChainOracle,
  kSwapChain,
  kSwapIneq,
  kLowerHalf,
};

inline std::size_t random_n(Rng& rng, std::size_t lo, std::size_t hi) { return rng.index_in(lo, hi); }
}  // namespace detail

/// aux_F(x, y) > 0 for 0 < x < y < 1 (two sorted uniforms).
inline BatteryResult lemma301_battery(std::uint64_t samples, std::uint64_t seed, const Band& band = {}) {
  BatteryResult res;
  res.name = "aux_positive";
  res.seed = seed;
  Rng rng(seed, detail::kLemma301);
  while (res.checked < samples) {
    double x = rng.uniform01(), y = rng.uniform01();
    if (x > y) std::swap(x, y);
    if (!(x > 0 && x < y)) continue;
    res.record(lemma_301_check(x, y, band));
  }
  return res;
}

/// phi >= 0 on y >= 1 with x, z uniform in (0, y].
inline BatteryResult phi_above_one_battery(std::uint64_t samples, std::uint64_t seed, const Band& band = {}) {
  BatteryResult res;
  res.name = "phi_above_one";
  res.seed = seed;
  Rng rng(seed, detail::kPhiAboveOne);
  while (res.checked < samples) {
    const double y = rng.log_uniform(1.0, 10.0);
    const double x = y * (1.0 - rng.uniform01());
    const double z = y * (1.0 - rng.uniform01());
    res.record(phi_nonneg_check(OmegaPoint(x, y, z), band));
  }
  return res;
}

/// phi >= 0 on 0 < x <= z <= y < 1 (three sorted uniforms).
inline BatteryResult phi_below_one_battery(std::uint64_t samples, std::uint64_t seed, const Band& band = {}) {
  BatteryResult res;
  res.name = "phi_below_one";
  res.seed = seed;
  Rng rng(seed, detail::kPhiBelowOne);
  while (res.checked < samples) {
    double u[3] = {rng.uniform01(), rng.uniform01(), rng.uniform01()};
    std::sort(u, u + 3);
    if (!(u[0] > 0)) continue;
    res.record(phi_nonneg_check(OmegaPoint(u[0], u[2], u[1]), band));
  }
  return res;
}

/// Both two-variable claims on log-uniform pairs in [1e-3, 10].
inline BatteryResult two_var_battery(std::uint64_t samples, std::uint64_t seed, const Band& band = {}) {
  BatteryResult res;
  res.name = "two_variable";
  res.seed = seed;
  Rng rng(seed, detail::kTwoVar);
  for (std::uint64_t s = 0; s < samples; ++s) {
    const double a = rng.log_uniform(1e-3, 10.0);
    const double b = rng.log_uniform(1e-3, 10.0);
    const auto r = two_var_check(a, b, band);
    res.record(r.swap);
    res.record(r.above_one);
  }
  return res;
}

/// Cater's bound on unsorted log-uniform tuples, n in [2, 10].
inline BatteryResult cater2_battery(std::uint64_t samples, std::uint64_t seed, const Band& band = {}) {
  BatteryResult res;
  res.name = "cater_bound";
  res.seed = seed;
  Rng rng(seed, detail::kCater2);
  for (std::uint64_t s = 0; s < samples; ++s) {
    const std::size_t n = detail::random_n(rng, 2, 10);
    res.record(cater_inequality_check(PositiveTuple(log_uniform_values(rng, n, 1e-3, 10.0)), band));
  }
  return res;
}

/// C^* > n/2 on unsorted log-uniform tuples, n in [2, 10].
inline BatteryResult lower_half_battery(std::uint64_t samples, std::uint64_t seed, const Band& band = {}) {
  BatteryResult res;
  res.name = "lower_exceeds_half_n";
  res.seed = seed;
  Rng rng(seed, detail::kLowerHalf);
  for (std::uint64_t s = 0; s < samples; ++s) {
    const std::size_t n = detail::random_n(rng, 2, 10);
    const PositiveTuple t(log_uniform_values(rng, n, 1e-3, 10.0));
    res.record(make_report("C_lower > n/2", cater_C_lower(t), 0.5 * static_cast<double>(n),
                           Relation::at_least, band, true, t.digest()));
  }
  return res;
}

/// Dimension-reduction identity on sorted tuples of length n + 1 in [3, 20].
inline BatteryResult induction_battery(std::uint64_t samples, std::uint64_t seed, double rel_tol = 1e-13) {
  BatteryResult res;
  res.name = "induction_identity";
  res.seed = seed;
  Rng rng(seed, detail::kInduction);
  for (std::uint64_t s = 0; s < samples; ++s) {
    const std::size_t n1 = detail::random_n(rng, 3, 20);
    res.record(induction_identity_check(sorted_log_uniform_tuple(rng, n1, 1e-3, 10.0), {1e-300, rel_tol}));
  }
  return res;
}

/// C <= C_* on sorted tuples, n in [2, 12], values in [1e-3, 10]. Equality
/// verdicts on non-constant tuples are counted as noteworthy.
inline BatteryResult upper_chain_battery(std::uint64_t samples, std::uint64_t seed, const Band& band = {}) {
  BatteryResult res;
  res.name = "upper_chain";
  res.seed = seed;
  Rng rng(seed, detail::kUpperChain);
  for (std::uint64_t s = 0; s < samples; ++s) {
    const std::size_t n = detail::random_n(rng, 2, 12);
    res.record(verify_chain(sorted_log_uniform_tuple(rng, n, 1e-3, 10.0), band).upper);
  }
  return res;
}

/// C^* <= C on hypothesis-satisfying sorted tuples, n in [2, 12].
inline BatteryResult lower_chain_battery(std::uint64_t samples, std::uint64_t seed, const Band& band = {}) {
  BatteryResult res;
  res.name = "lower_chain";
  res.seed = seed;
  Rng rng(seed, detail::kLowerChain);
  for (std::uint64_t s = 0; s < samples; ++s) {
    const std::size_t n = detail::random_n(rng, 2, 12);
    res.record(verify_chain(random_hypothesis_tuple(rng, n), band).lower);
  }
  return res;
}

/// Exhaustive permutation scans: per_n hypothesis tuples for each n in
/// [n_min, n_max]; min F must sit at the reverse and max F at the identity.
inline BatteryResult chain_oracle_battery(std::uint64_t per_n, std::uint64_t seed, std::size_t n_min = 2,
                                          std::size_t n_max = 7, const Band& band = {}) {
  BatteryResult res;
  res.name = "permutation_chain";
  res.seed = seed;
  Rng rng(seed, detail::kChainOracle);
  for (std::size_t n = n_min; n <= n_max; ++n) {
    for (std::uint64_t s = 0; s < per_n; ++s) {
      const PositiveTuple t = random_hypothesis_tuple(rng, n);
      try {
        const auto scan = brute_force_scan(t, n_max, 1, band);
        const double lo = cater_C_lower(t), hi = cater_C_upper(t);
        auto r = make_report("C_lower <= min F", lo, scan.min_value, Relation::at_most, band, false, t.digest());
        res.record(r);
        res.record(make_report("max F <= C_upper", scan.max_value, hi, Relation::at_most, band, false, t.digest()));
      } catch (const ContradictionError& e) {
        res.record_contradiction(e);
      }
    }
  }
  return res;
}

/// sort_to_reverse from random starts on hypothesis tuples, n in [3, 10].
/// Records the end-to-end drop F(start) >= F(reverse) per chain.
inline BatteryResult swap_chain_battery(std::uint64_t samples, std::uint64_t seed, const Band& band = {}) {
  BatteryResult res;
  res.name = "swap_chain";
  res.seed = seed;
  Rng rng(seed, detail::kSwapChain);
  for (std::uint64_t s = 0; s < samples; ++s) {
    const std::size_t n = detail::random_n(rng, 3, 10);
    const PositiveTuple t = random_hypothesis_tuple(rng, n);
    const Permutation start = random_permutation(rng, n);
    try {
      const auto chain = sort_to_reverse(t, start, band);
      if (chain.end_perm != Permutation::reverse(n)) {
        throw ContradictionError("swap_chain: chain did not end at the reverse permutation", t.digest());
      }
      double worst = std::numeric_limits<double>::infinity();
      EvalReport step_report;
      for (const auto& step : chain.steps) {
        auto r = make_report("F non-increasing", step.f_before, step.f_after, Relation::at_least, band, false,
                             t.digest());
        if (r.margin < worst) {
          worst = r.margin;
          step_report = r;
        }
      }
      if (chain.steps.empty()) {
        step_report = make_report("F non-increasing", 0.0, 0.0, Relation::at_least, band, false, t.digest());
      }
      res.record(step_report);
    } catch (const ContradictionError& e) {
      res.record_contradiction(e);
    }
  }
  return res;
}

/// Pairwise swap inequality on random (a, i, k, j) with j_i < j_k.
inline BatteryResult swap_inequality_battery(std::uint64_t samples, std::uint64_t seed, const Band& band = {}) {
  BatteryResult res;
  res.name = "swap_inequality";
  res.seed = seed;
  Rng rng(seed, detail::kSwapIneq);
  for (std::uint64_t s = 0; s < samples; ++s) {
    const std::size_t n = detail::random_n(rng, 2, 10);
    const PositiveTuple t = random_hypothesis_tuple(rng, n);
    Permutation j = random_permutation(rng, n);
    std::size_t i = rng.index_in(1, n), k = rng.index_in(1, n - 1);
    if (k >= i) ++k;
    if (i > k) std::swap(i, k);
    if (j[i - 1] > j[k - 1]) j.swap_positions(i - 1, k - 1);
    res.record(swap_inequality_check(t, i, k, j, band));
  }
  return res;
}

struct InfimumSeries {
  unsigned m = 0;
  Parity parity = Parity::even;
  double limit = 0;
  std::vector<double> deltas;
  std::vector<double> values;
  bool above_limit = true;
  bool converging = true;  // distance to the limit shrinks with delta
  double final_distance = 0;
};

inline InfimumSeries infimum_series(unsigned m, Parity parity,
                                    const std::vector<double>& deltas = {1e-2, 1e-4, 1e-6, 1e-8}) {
  InfimumSeries s{m, parity, infimum_limit(m, parity), deltas, {}};
  double previous = std::numeric_limits<double>::infinity();
  for (double d : deltas) {
    const double v = infimum_construction(m, parity, d);
    s.values.push_back(v);
    const double dist = v - s.limit;
    if (!(dist > 0)) s.above_limit = false;
    if (!(dist < previous)) s.converging = false;
    previous = dist;
  }
  s.final_distance = std::abs(s.values.back() - s.limit);
  return s;
}

}  // namespace caterlab
