#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "caterlab/cyclic.hpp"
#include "caterlab/errors.hpp"
#include "caterlab/numeric.hpp"
#include "caterlab/report.hpp"
#include "caterlab/tuple.hpp"

namespace caterlab {

/// One exchange of exponents between two positions (1-based).
struct SwapStep {
  std::size_t position_low = 0;
  std::size_t position_high = 0;
  Permutation perm_before;
  Permutation perm_after;
  double f_before = 0;
  double f_after = 0;
};

struct SwapChain {
  PositiveTuple tuple;
  std::vector<SwapStep> steps;
  Permutation start_perm;
  Permutation end_perm;
};

struct PermScan {
  PositiveTuple tuple;
  Permutation min_perm;
  double min_value = 0;
  Permutation max_perm;
  double max_value = 0;
  std::uint64_t count = 0;
};

namespace detail {

inline std::string tuple_provenance(const PositiveTuple& a) {
  std::string s = "{\"tuple\":[";
  char buf[32];
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", a[i]);
    if (i) s += ',';
    s += buf;
  }
  return s + "]";
}

inline std::string perm_provenance(const Permutation& p) {
  std::string s = "[";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(p[i] + 1);
  }
  return s + "]";
}

}  // namespace detail

/// Checks a_i^{a_{j_i}} + a_k^{a_{j_k}} >= a_i^{a_{j_k}} + a_k^{a_{j_i}} for
/// 1 <= i < k <= n and j_i < j_k, on a tuple satisfying the hypothesis.
inline EvalReport swap_inequality_check(const PositiveTuple& a, std::size_t i, std::size_t k,
                                        const Permutation& j, const Band& band = {}) {
  const std::size_t n = a.size();
  if (j.size() != n) throw DomainError("swap_inequality_check: permutation length mismatch");
  if (!(1 <= i && i < k && k <= n)) throw DomainError("swap_inequality_check: need 1 <= i < k <= n");
  if (!(j[i - 1] < j[k - 1])) throw DomainError("swap_inequality_check: need j_i < j_k");
  if (!a.hypothesis_h()) {
    throw DomainError("swap_inequality_check: tuple does not satisfy a_1^{a_n} >= 1/e (sorted)");
  }
  const double ai = a[i - 1];
  const double ak = a[k - 1];
  const double eji = a[j[i - 1]];
  const double ejk = a[j[k - 1]];
  const double lhs = pow_pos(ai, eji) + pow_pos(ak, ejk);
  const double rhs = pow_pos(ai, ejk) + pow_pos(ak, eji);
  auto r = make_report("swap", lhs, rhs, Relation::at_least, band, false,
                       digest_of({ai, ak, eji, ejk}));
  set_expected_equality(r, ai == ak || eji == ejk);
  return r;
}

/// Drives F(start) down to F(reverse) by exponent swaps: for m = 0..n-1 the
/// exponent n-m is moved into position m+1. Every step is an instance of the
/// pairwise swap inequality, so F must not increase beyond the band.
inline SwapChain sort_to_reverse(const PositiveTuple& a, const Permutation& start,
                                 const Band& band = {}) {
  const std::size_t n = a.size();
  if (start.size() != n) throw DomainError("sort_to_reverse: permutation length mismatch");
  if (!a.hypothesis_h()) {
    throw DomainError("sort_to_reverse: tuple does not satisfy a_1^{a_n} >= 1/e (sorted)");
  }
  SwapChain chain{a, {}, start, start};
  Permutation current = start;
  double f_current = perm_functional(a, current);
  for (std::size_t m = 0; m < n; ++m) {
    const std::size_t wanted = n - 1 - m;  // 0-based exponent n-m
    std::size_t k = m;
    while (current[k] != wanted) ++k;
    if (k == m) continue;
    SwapStep step;
    step.position_low = m + 1;
    step.position_high = k + 1;
    step.perm_before = current;
    step.f_before = f_current;
    current.swap_positions(m, k);
    step.perm_after = current;
    step.f_after = perm_functional(a, current);
    f_current = step.f_after;
    if (step.f_after > step.f_before + band.width(step.f_before, step.f_after)) {
      throw ContradictionError(
          "sort_to_reverse: F increased across a swap (" + std::to_string(step.f_before) + " -> " +
              std::to_string(step.f_after) + ")",
          detail::tuple_provenance(a) + ",\"positions\":[" + std::to_string(step.position_low) +
              "," + std::to_string(step.position_high) + "],\"perm_before\":" +
              detail::perm_provenance(step.perm_before) + "}");
    }
    chain.steps.push_back(std::move(step));
  }
  chain.end_perm = current;
  return chain;
}

namespace detail {

struct ScanPart {
  Permutation min_perm;
  double min_value = 0;
  Permutation max_perm;
  double max_value = 0;
  std::uint64_t count = 0;
};

// Scans ranks [first, last) in lexicographic order. Only strict improvements
// replace the incumbent, so ties keep the lexicographically smallest permutation.
inline ScanPart scan_range(const PositiveTuple& a, const std::vector<double>& powers,
                           std::uint64_t first, std::uint64_t last) {
  const std::size_t n = a.size();
  ScanPart part;
  Permutation p = Permutation::nth(n, first);
  std::vector<double> terms(n);
  for (std::uint64_t r = first; r < last; ++r) {
    for (std::size_t i = 0; i < n; ++i) terms[i] = powers[i * n + p[i]];
    const double f = exact_sum(terms);
    if (part.count == 0 || f < part.min_value) {
      part.min_value = f;
      part.min_perm = p;
    }
    if (part.count == 0 || f > part.max_value) {
      part.max_value = f;
      part.max_perm = p;
    }
    ++part.count;
    p.next();
  }
  return part;
}

}  // namespace detail

/// Exhaustive scan of F over all n! permutations.
///
/// With workers > 1 the lexicographic rank space is split into contiguous
/// ranges; the merged result is identical to the sequential scan.
inline PermScan brute_force_scan(const PositiveTuple& a, std::size_t n_cap = 8,
                                 unsigned workers = 1, const Band& band = {}) {
  const std::size_t n = a.size();
  if (n > n_cap) {
    throw ResourceError("brute_force_scan: n = " + std::to_string(n) + " exceeds n_cap = " +
                        std::to_string(n_cap));
  }
  const std::uint64_t total = factorial(n);

  // Same term evaluation as perm_functional.
  std::vector<double> powers(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t e = 0; e < n; ++e) powers[i * n + e] = pow_pos(a[i], a[e]);
  }

  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::min<std::uint64_t>(total / 64 + 1, 64))));
  std::vector<detail::ScanPart> parts(workers);
  if (workers == 1) {
    parts[0] = detail::scan_range(a, powers, 0, total);
  } else {
    std::vector<std::jthread> threads;
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t first = total * w / workers;
      const std::uint64_t last = total * (w + 1) / workers;
      threads.emplace_back([&, w, first, last] { parts[w] = detail::scan_range(a, powers, first, last); });
    }
  }

  PermScan scan{a, parts[0].min_perm, parts[0].min_value, parts[0].max_perm, parts[0].max_value, 0};
  for (const auto& part : parts) {
    scan.count += part.count;
    if (part.count == 0) continue;
    if (part.min_value < scan.min_value ||
        (part.min_value == scan.min_value && part.min_perm < scan.min_perm)) {
      scan.min_value = part.min_value;
      scan.min_perm = part.min_perm;
    }
    if (part.max_value > scan.max_value ||
        (part.max_value == scan.max_value && part.max_perm < scan.max_perm)) {
      scan.max_value = part.max_value;
      scan.max_perm = part.max_perm;
    }
  }
  for (const double v : {scan.min_value, scan.max_value}) require_finite(v, "brute_force_scan");

  if (a.hypothesis_h()) {
    const double f_rev = perm_functional(a, Permutation::reverse(n));
    const double f_id = perm_functional(a, Permutation::identity(n));
    if (std::abs(scan.min_value - f_rev) > band.width(scan.min_value, f_rev)) {
      throw ContradictionError("brute_force_scan: minimum of F is not attained at the reverse permutation",
                               detail::tuple_provenance(a) + ",\"min_perm\":" +
                                   detail::perm_provenance(scan.min_perm) + "}");
    }
    if (std::abs(scan.max_value - f_id) > band.width(scan.max_value, f_id)) {
      throw ContradictionError("brute_force_scan: maximum of F is not attained at the identity",
                               detail::tuple_provenance(a) + ",\"max_perm\":" +
                                   detail::perm_provenance(scan.max_perm) + "}");
    }
  }
  return scan;
}

struct ChainReports {
  EvalReport lower;  // C^* <= C
  EvalReport upper;  // C <= C_*
};

/// C^*(a) <= C(a) <= C_*(a) for a sorted tuple.
///
/// The lower comparison is only claimed under a_1^{a_n} >= 1/e; without it the
/// report is informational.
inline ChainReports verify_chain(const PositiveTuple& a, const Band& band = {}) {
  if (!a.sorted_ascending()) throw DomainError("verify_chain: tuple must be sorted ascending");
  const double c = cater_C(a);
  const double lo = cater_C_lower(a);
  const double hi = cater_C_upper(a);
  const bool constant = a.is_constant();

  ChainReports out{
      make_report("C_lower <= C", lo, c, Relation::at_most, band, false, a.digest()),
      make_report("C <= C_upper", c, hi, Relation::at_most, band, false, a.digest()),
  };
  out.lower.claimed = a.hypothesis_h();
  set_expected_equality(out.lower, a.size() == 2 || constant);
  if (!out.lower.claimed) {
    out.lower.note = "hypothesis not satisfied - informational only";
  } else if (!out.lower.expected_equality.value() && out.lower.verdict == Verdict::equality) {
    // Equality is only claimed in the "if" direction.
    out.lower.note = "noteworthy: equality outside n = 2 or constant tuples";
  }
  set_expected_equality(out.upper, constant);
  return out;
}

}  // namespace caterlab
