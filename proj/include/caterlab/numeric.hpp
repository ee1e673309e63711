#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "caterlab/errors.hpp"

namespace caterlab {

/// x^y for x > 0, evaluated as exp(y ln x).
template <typename Real>
inline Real pow_pos(Real x, Real y) {
  using std::exp;
  using std::log;
  return exp(y * log(x));
}

/// Correctly rounded sum of a sequence (Shewchuk's partials algorithm).
///
/// The result does not depend on the order of the inputs, so sums of the same
/// multiset of terms agree bit for bit.
template <typename Real>
Real exact_sum(std::span<const Real> terms) {
  std::vector<Real> partials;
  partials.reserve(8);
  Real special = 0;
  bool has_special = false;
  for (Real x : terms) {
    if (!std::isfinite(x)) {
      special = has_special ? special + x : x;
      has_special = true;
      continue;
    }
    std::size_t used = 0;
    for (Real y : partials) {
      if (std::abs(x) < std::abs(y)) std::swap(x, y);
      const Real hi = x + y;
      const Real lo = y - (hi - x);
      if (lo != 0) partials[used++] = lo;
      x = hi;
    }
    partials.resize(used);
    partials.push_back(x);
  }
  if (has_special) return special;
  if (partials.empty()) return 0;

  // Round the partials (non-overlapping, increasing magnitude) to nearest.
  std::size_t n = partials.size();
  Real hi = partials[--n];
  Real lo = 0;
  while (n > 0) {
    const Real x = hi;
    const Real y = partials[--n];
    hi = x + y;
    const Real yr = hi - x;
    lo = y - yr;
    if (lo != 0) break;
  }
  if (n > 0 && ((lo < 0 && partials[n - 1] < 0) || (lo > 0 && partials[n - 1] > 0))) {
    const Real y = lo * 2;
    const Real x = hi + y;
    if (y == x - hi) hi = x;
  }
  return hi;
}

template <typename Real>
Real exact_sum(const std::vector<Real>& terms) {
  return exact_sum(std::span<const Real>(terms));
}

inline double require_finite(double value, std::string_view what) {
  if (!std::isfinite(value)) {
    throw NonFiniteError(std::string(what) + ": result is not finite");
  }
  return value;
}

/// FNV-1a over the bit patterns of the inputs, as 16 hex digits.
inline std::string digest_of(std::span<const double> values) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (double v : values) {
    auto bits = std::bit_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i) {
      h ^= (bits >> (8 * i)) & 0xffU;
      h *= 0x100000001b3ULL;
    }
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline std::string digest_of(std::initializer_list<double> values) {
  return digest_of(std::span<const double>(values.begin(), values.size()));
}

inline const double kInvE = std::exp(-1.0);

}  // namespace caterlab
