#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "caterlab/errors.hpp"
#include "caterlab/numeric.hpp"
#include "caterlab/tuple.hpp"

namespace caterlab {

/// The unique i in 1..n with k = i (mod n).
inline long long cyc_index(long long k, long long n) {
  if (n < 2) throw DomainError("cyc_index: n must be at least 2");
  long long r = k % n;
  if (r <= 0) r += n;
  return r;
}

namespace detail {

// Term lists. Each term is computed the same way everywhere so that identities
// between the functions hold bit for bit.

template <typename Real>
std::vector<Real> cyclic_terms(std::span<const double> a) {
  const std::size_t n = a.size();
  std::vector<Real> t(n);
  for (std::size_t i = 0; i < n; ++i) {
    t[i] = pow_pos<Real>(a[i], a[(i + 1) % n]);
  }
  return t;
}

template <typename Real>
std::vector<Real> self_terms(std::span<const double> a) {
  std::vector<Real> t(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) t[i] = pow_pos<Real>(a[i], a[i]);
  return t;
}

template <typename Real>
std::vector<Real> reversed_terms(std::span<const double> a) {
  const std::size_t n = a.size();
  std::vector<Real> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = pow_pos<Real>(a[i], a[n - 1 - i]);
  return t;
}

}  // namespace detail

/// C = sum_{i<n} a_i^{a_{i+1}} + a_n^{a_1}
inline double cater_C(const PositiveTuple& a) {
  return require_finite(exact_sum(detail::cyclic_terms<double>(a.values())), "cater_C");
}

/// C_* = sum a_i^{a_i}
inline double cater_C_upper(const PositiveTuple& a) {
  return require_finite(exact_sum(detail::self_terms<double>(a.values())), "cater_C_upper");
}

/// C^* = sum a_i^{a_{n+1-i}}
inline double cater_C_lower(const PositiveTuple& a) {
  return require_finite(exact_sum(detail::reversed_terms<double>(a.values())), "cater_C_lower");
}

/// F(j) = sum a_i^{a_{j_i}}
inline double perm_functional(const PositiveTuple& a, const Permutation& j) {
  if (j.size() != a.size()) {
    throw DomainError("perm_functional: permutation length " + std::to_string(j.size()) +
                      " != tuple length " + std::to_string(a.size()));
  }
  std::vector<double> t(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) t[i] = pow_pos(a[i], a[j[i]]);
  return require_finite(exact_sum(t), "perm_functional");
}

/// Sum over i = 1..n of kernel(a_i, ..., a_{i+m-1}) with cyclic wraparound.
///
/// The kernel receives the window as a span of m values.
template <typename Kernel>
double cyclic_sum(Kernel&& kernel, const PositiveTuple& a, std::size_t m) {
  const std::size_t n = a.size();
  if (m < 2 || m > n) {
    throw DomainError("cyclic_sum: window size " + std::to_string(m) + " outside [2, " +
                      std::to_string(n) + "]");
  }
  std::vector<double> window(m);
  std::vector<double> terms(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t w = 0; w < m; ++w) {
      const auto idx = cyc_index(static_cast<long long>(i + w + 1), static_cast<long long>(n));
      window[w] = a[static_cast<std::size_t>(idx - 1)];
    }
    terms[i] = kernel(std::span<const double>(window));
  }
  return require_finite(exact_sum(terms), "cyclic_sum");
}

}  // namespace caterlab
