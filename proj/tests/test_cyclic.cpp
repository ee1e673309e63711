#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "caterlab/cyclic.hpp"
#include "caterlab/random.hpp"

using namespace caterlab;

namespace {

// Independent evaluation path: std::pow and a long double running sum in index order.
double naive_sum(const std::vector<double>& a, auto exponent_index) {
  long double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::pow(static_cast<long double>(a[i]), a[exponent_index(i)]);
  return static_cast<double>(s);
}

double naive_C(const std::vector<double>& a) {
  return naive_sum(a, [&](std::size_t i) { return (i + 1) % a.size(); });
}

}  // namespace

TEST(CycIndex, Examples) {
  EXPECT_EQ(cyc_index(6, 5), 1);
  EXPECT_EQ(cyc_index(0, 5), 5);
  EXPECT_EQ(cyc_index(-1, 4), 3);
  EXPECT_EQ(cyc_index(4, 4), 4);
  EXPECT_EQ(cyc_index(-9, 4), 3);
  EXPECT_THROW(cyc_index(3, 1), DomainError);
  EXPECT_THROW(cyc_index(3, 0), DomainError);
}

TEST(CycIndex, ResidueProperty) {
  for (long long n = 2; n <= 9; ++n) {
    for (long long k = -40; k <= 40; ++k) {
      const auto i = cyc_index(k, n);
      ASSERT_GE(i, 1);
      ASSERT_LE(i, n);
      ASSERT_EQ(((k - i) % n + n) % n, 0);
    }
  }
}

TEST(CaterC, Examples) {
  EXPECT_NEAR(cater_C(PositiveTuple({1, 2, 3})), 12.0, 1e-13);
  EXPECT_DOUBLE_EQ(cater_C(PositiveTuple({0.01, 0.5, 1})), 1.6);
  for (double t : {0.05, 0.3, 1.0, 2.5}) {
    for (std::size_t n : {2u, 5u, 11u}) {
      EXPECT_NEAR(cater_C(PositiveTuple(std::vector<double>(n, t))), n * std::pow(t, t), 1e-14 * n);
    }
  }
}

TEST(CaterCUpper, Examples) {
  EXPECT_NEAR(cater_C_upper(PositiveTuple({1, 2, 3})), 32.0, 1e-13);
  const double inv_e = std::exp(-1.0);
  EXPECT_NEAR(cater_C_upper(PositiveTuple({inv_e, inv_e})), 2 * 0.6922006275553464, 2e-15);
  EXPECT_NEAR(cater_C_upper(PositiveTuple({inv_e, inv_e})), 1.3844012551106928, 2e-15);
}

TEST(CaterCLower, Examples) {
  EXPECT_NEAR(cater_C_lower(PositiveTuple({1, 2, 3})), 8.0, 1e-13);
  EXPECT_DOUBLE_EQ(cater_C_lower(PositiveTuple({0.01, 0.5, 1})), 1.7171067811865475);
  Rng rng(3);
  for (int i = 0; i < 1000; ++i) {
    const PositiveTuple t(log_uniform_values(rng, 2, 1e-3, 10));
    ASSERT_EQ(cater_C_lower(t), cater_C(t));
  }
}

TEST(PermFunctional, ReducesToTheThreeFunctions) {
  const PositiveTuple a({1, 2, 3});
  EXPECT_EQ(perm_functional(a, Permutation::identity(3)), cater_C_upper(a));
  EXPECT_EQ(perm_functional(a, Permutation::reverse(3)), cater_C_lower(a));
  EXPECT_EQ(perm_functional(a, Permutation::from_one_based({2, 3, 1})), cater_C(a));
  EXPECT_NEAR(perm_functional(a, Permutation::from_one_based({2, 3, 1})), 12.0, 1e-13);
  EXPECT_THROW(perm_functional(a, Permutation::identity(4)), DomainError);
}

TEST(PermFunctional, IdentitiesAreExactOnRandomTuples) {
  Rng rng(21);
  for (int trial = 0; trial < 5000; ++trial) {
    const std::size_t n = rng.index_in(2, 30);
    const PositiveTuple a(log_uniform_values(rng, n, 1e-4, 20));
    ASSERT_EQ(perm_functional(a, Permutation::identity(n)), cater_C_upper(a));
    ASSERT_EQ(perm_functional(a, Permutation::reverse(n)), cater_C_lower(a));
    ASSERT_EQ(perm_functional(a, Permutation::cyclic_shift(n)), cater_C(a));
  }
}

TEST(CyclicSum, Examples) {
  const PositiveTuple a({1, 2, 3});
  auto power = [](std::span<const double> w) { return pow_pos(w[0], w[1]); };
  EXPECT_EQ(cyclic_sum(power, a, 2), cater_C(a));
  EXPECT_DOUBLE_EQ(cyclic_sum([](std::span<const double> w) { return w[0] + w[1]; }, a, 2), 12.0);
  EXPECT_DOUBLE_EQ(
      cyclic_sum([](std::span<const double> w) { return w[0] * w[1] * w[2]; }, PositiveTuple({1, 1, 1, 1}), 3),
      4.0);
  EXPECT_THROW(cyclic_sum(power, a, 1), DomainError);
  EXPECT_THROW(cyclic_sum(power, a, 4), DomainError);
}

TEST(CyclicSum, WindowsWrapAround) {
  const PositiveTuple a({1, 2, 3, 4});
  std::vector<std::vector<double>> windows;
  cyclic_sum(
      [&](std::span<const double> w) {
        windows.emplace_back(w.begin(), w.end());
        return 0.0;
      },
      a, 3);
  const std::vector<std::vector<double>> expected{{1, 2, 3}, {2, 3, 4}, {3, 4, 1}, {4, 1, 2}};
  EXPECT_EQ(windows, expected);
}

TEST(CaterC, AgreesWithIndependentEvaluation) {
  Rng rng(8);
  for (int trial = 0; trial < 5000; ++trial) {
    const std::size_t n = rng.index_in(2, 40);
    const auto v = log_uniform_values(rng, n, 1e-3, 10);
    const PositiveTuple a(v);
    ASSERT_NEAR(cater_C(a), naive_C(v), 1e-13 * naive_C(v));
    const double up = naive_sum(v, [](std::size_t i) { return i; });
    ASSERT_NEAR(cater_C_upper(a), up, 1e-13 * up);
    const double lo = naive_sum(v, [&](std::size_t i) { return n - 1 - i; });
    ASSERT_NEAR(cater_C_lower(a), lo, 1e-13 * lo);
  }
}

TEST(CaterC, RotationInvarianceIsExact) {
  Rng rng(13);
  for (int trial = 0; trial < 3000; ++trial) {
    const std::size_t n = rng.index_in(2, 25);
    auto v = log_uniform_values(rng, n, 1e-3, 10);
    const double ref = cater_C(PositiveTuple(v));
    for (std::size_t r = 1; r < n; ++r) {
      std::rotate(v.begin(), v.begin() + 1, v.end());
      ASSERT_EQ(cater_C(PositiveTuple(v)), ref);
    }
  }
}

TEST(CaterC, ConstantTuplesAgreeAcrossFunctions) {
  Rng rng(17);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n = rng.index_in(2, 64);
    const double t = rng.log_uniform(1e-4, 50);
    const PositiveTuple a(std::vector<double>(n, t));
    const double expect = n * std::pow(t, t);
    // exp(t ln t) carries a relative error of about |t ln t| ulp.
    ASSERT_NEAR(cater_C(a), expect, 4e-16 * (2 + std::abs(t * std::log(t))) * expect);
    ASSERT_EQ(cater_C(a), cater_C_upper(a));
    ASSERT_EQ(cater_C(a), cater_C_lower(a));
  }
}

TEST(CaterCLower, ExceedsHalfN) {
  Rng rng(2024);
  for (std::size_t n = 2; n <= 10; ++n) {
    for (int trial = 0; trial < 100000; ++trial) {
      const PositiveTuple a(log_uniform_values(rng, n, 1e-6, 100));
      ASSERT_GT(cater_C_lower(a), 0.5 * static_cast<double>(n)) << "n=" << n;
    }
  }
}

TEST(CaterC, FiniteAndPositiveOnModerateInputs) {
  Rng rng(4);
  for (int trial = 0; trial < 3000; ++trial) {
    const std::size_t n = rng.index_in(2, 64);
    const PositiveTuple a(log_uniform_values(rng, n, 1e-6, 1e2));
    for (double v : {cater_C(a), cater_C_upper(a), cater_C_lower(a)}) {
      ASSERT_TRUE(std::isfinite(v));
      ASSERT_GT(v, 0);
    }
  }
  // Extremes at the guardrails overflow and must be reported, not returned.
  EXPECT_THROW(cater_C_upper(PositiveTuple({1e6, 1e6})), NonFiniteError);
}
