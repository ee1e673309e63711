#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "caterlab/errors.hpp"
#include "caterlab/numeric.hpp"

namespace caterlab {

inline constexpr double kMinElement = 1e-300;
inline constexpr double kMaxElement = 1e6;

/// Strictly positive tuple (a_1, ..., a_n), n >= 2. Immutable after construction.
class PositiveTuple {
 public:
  explicit PositiveTuple(std::vector<double> values) : values_(std::move(values)) {
    if (values_.size() < 2) throw DomainError("tuple needs at least 2 elements");
    for (std::size_t i = 0; i < values_.size(); ++i) {
      const double v = values_[i];
      if (!(v >= kMinElement && v <= kMaxElement)) {
        throw DomainError("tuple element a_" + std::to_string(i + 1) + " = " +
                          std::to_string(v) + " outside [1e-300, 1e6]");
      }
    }
    sorted_ = std::is_sorted(values_.begin(), values_.end());
    hypothesis_ = sorted_ && values_.back() * std::log(values_.front()) >= -1.0;
  }

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  std::span<const double> values() const noexcept { return values_; }
  const std::vector<double>& vector() const noexcept { return values_; }

  bool sorted_ascending() const noexcept { return sorted_; }
  /// Sorted ascending with a_1^{a_n} >= 1/e.
  bool hypothesis_h() const noexcept { return hypothesis_; }

  bool is_constant() const noexcept {
    return std::all_of(values_.begin(), values_.end(),
                       [&](double v) { return v == values_.front(); });
  }

  std::string digest() const { return digest_of(values()); }

  friend bool operator==(const PositiveTuple& a, const PositiveTuple& b) {
    return a.values_ == b.values_;
  }

 private:
  std::vector<double> values_;
  bool sorted_ = false;
  bool hypothesis_ = false;
};

inline std::uint64_t factorial(std::size_t n) {
  if (n > 20) throw ResourceError("factorial overflows 64 bits for n > 20");
  std::uint64_t f = 1;
  for (std::size_t k = 2; k <= n; ++k) f *= k;
  return f;
}

/// Bijection j on {1..n}; stored 0-based, reported 1-based.
class Permutation {
 public:
  Permutation() = default;

  static Permutation identity(std::size_t n) {
    Permutation p;
    p.map_.resize(n);
    std::iota(p.map_.begin(), p.map_.end(), std::size_t{0});
    return p;
  }

  /// n (n-1) ... 1
  static Permutation reverse(std::size_t n) {
    Permutation p = identity(n);
    std::reverse(p.map_.begin(), p.map_.end());
    return p;
  }

  /// 2 3 ... n 1, which turns the functional into C.
  static Permutation cyclic_shift(std::size_t n) {
    Permutation p = identity(n);
    std::rotate(p.map_.begin(), p.map_.begin() + 1, p.map_.end());
    return p;
  }

  static Permutation from_one_based(std::span<const long long> images) {
    Permutation p;
    const auto n = images.size();
    std::vector<bool> seen(n, false);
    p.map_.reserve(n);
    for (long long v : images) {
      if (v < 1 || static_cast<std::size_t>(v) > n || seen[v - 1]) {
        throw DomainError("not a permutation of 1.." + std::to_string(n));
      }
      seen[v - 1] = true;
      p.map_.push_back(static_cast<std::size_t>(v - 1));
    }
    return p;
  }

  static Permutation from_one_based(std::initializer_list<long long> images) {
    return from_one_based(std::span<const long long>(images.begin(), images.size()));
  }

  /// The rank-th permutation of n in lexicographic order (factorial number system).
  static Permutation nth(std::size_t n, std::uint64_t rank) {
    if (rank >= factorial(n)) throw DomainError("permutation rank out of range");
    std::vector<std::size_t> pool(n);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    Permutation p;
    p.map_.reserve(n);
    for (std::size_t k = n; k > 0; --k) {
      const std::uint64_t block = factorial(k - 1);
      const auto idx = static_cast<std::size_t>(rank / block);
      rank %= block;
      p.map_.push_back(pool[idx]);
      pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
    }
    return p;
  }

  std::size_t size() const noexcept { return map_.size(); }
  /// 0-based image of 0-based position i.
  std::size_t operator[](std::size_t i) const noexcept { return map_[i]; }
  std::span<const std::size_t> zero_based() const noexcept { return map_; }

  std::vector<long long> one_based() const {
    std::vector<long long> out;
    out.reserve(map_.size());
    for (auto v : map_) out.push_back(static_cast<long long>(v) + 1);
    return out;
  }

  /// Advances to the lexicographic successor; false after the last permutation.
  bool next() { return std::next_permutation(map_.begin(), map_.end()); }

  void swap_positions(std::size_t p, std::size_t q) { std::swap(map_[p], map_[q]); }

  friend auto operator<=>(const Permutation&, const Permutation&) = default;
  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::size_t> map_;
};

}  // namespace caterlab
