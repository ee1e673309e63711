#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "caterlab/batteries.hpp"
#include "caterlab/lemmas.hpp"
#include "caterlab/random.hpp"

using namespace caterlab;

namespace {

long double powl_(double x, double y) { return std::pow(static_cast<long double>(x), static_cast<long double>(y)); }

// C - C_upper evaluated directly in long double.
long double naive_gap(const std::vector<double>& v) {
  long double s = 0;
  for (std::size_t i = 0; i < v.size(); ++i) s += powl_(v[i], v[(i + 1) % v.size()]) - powl_(v[i], v[i]);
  return s;
}

}  // namespace

TEST(OmegaPoint, Validation) {
  EXPECT_NO_THROW(OmegaPoint(0.2, 0.9, 0.5));
  EXPECT_NO_THROW(OmegaPoint(1, 1, 1));
  EXPECT_THROW(OmegaPoint(0.95, 0.9, 0.5), DomainError);
  EXPECT_THROW(OmegaPoint(0.2, 0.9, 0.91), DomainError);
  EXPECT_THROW(OmegaPoint(0, 0.9, 0.5), DomainError);
  EXPECT_THROW(OmegaPoint(0.2, NAN, 0.5), DomainError);
}

TEST(AuxF, Examples) {
  EXPECT_NEAR(aux_F(0.5, 0.8), 0.26205947507775196, 1e-15);
  EXPECT_EQ(aux_F(0.3, 0.3), 0.0);
  const auto r = lemma_301_check(0.5, 0.8);
  EXPECT_EQ(r.verdict, Verdict::holds);
  EXPECT_TRUE(r.strict);
  EXPECT_THROW(lemma_301_check(0.8, 0.5), DomainError);
  EXPECT_THROW(lemma_301_check(0.5, 1.0), DomainError);
  EXPECT_THROW(lemma_301_check(0.0, 0.5), DomainError);
}

TEST(AuxF, PositiveBattery) {
  const auto b = lemma301_battery(100000, 1);
  EXPECT_EQ(b.checked, 100000u);
  EXPECT_EQ(b.violated, 0u);
  EXPECT_EQ(b.contradictions, 0u) << b.first_contradiction;
}

TEST(Phi, Examples) {
  EXPECT_NEAR(phi(OmegaPoint(0.2, 0.9, 0.5)), 0.26504804574996296, 1e-15);
  EXPECT_DOUBLE_EQ(phi(OmegaPoint(1, 2, 1.5)), 1.25);
  EXPECT_EQ(phi(OmegaPoint(0.3, 2, 2)), 0.0);
  EXPECT_EQ(phi(OmegaPoint(2, 2, 0.7)), 0.0);

  auto r = phi_nonneg_check(OmegaPoint(0.2, 0.9, 0.5));
  EXPECT_EQ(r.verdict, Verdict::holds);
  r = phi_nonneg_check(OmegaPoint(0.4, 0.9, 0.9));
  EXPECT_EQ(r.verdict, Verdict::equality);
  EXPECT_FALSE(r.contradicts());
  r = phi_nonneg_check(OmegaPoint(1.5, 1.5, 0.2));
  EXPECT_EQ(r.verdict, Verdict::equality);
  EXPECT_TRUE(r.expected_equality.value());
  EXPECT_THROW(phi_nonneg_check(OmegaPoint(0.5, 0.9, 0.2)), DomainError);
}

TEST(Phi, AgreesWithDirectEvaluation) {
  Rng rng(6);
  for (int i = 0; i < 20000; ++i) {
    const double y = rng.log_uniform(1e-2, 10);
    const double x = y * rng.uniform01() + 1e-300, z = y * rng.uniform01() + 1e-300;
    const long double direct = powl_(y, y) + powl_(z, x) - powl_(z, y) - powl_(y, x);
    const double scale = static_cast<double>(powl_(y, y) + powl_(z, x));
    const double conditioning = 2 + std::abs(y * std::log(y));
    ASSERT_NEAR(phi(OmegaPoint(x, y, z)), static_cast<double>(direct), 4e-16 * conditioning * scale);
  }
}

TEST(Phi, NonNegativeOnBothRegions) {
  for (const auto& b : {phi_above_one_battery(100000, 2), phi_below_one_battery(100000, 3)}) {
    EXPECT_EQ(b.checked, 100000u);
    EXPECT_EQ(b.violated, 0u) << b.name;
    EXPECT_EQ(b.contradictions, 0u) << b.name << ": " << b.first_contradiction;
  }
}

TEST(TwoVariable, Examples) {
  auto r = two_var_check(0.5, 2.0);
  EXPECT_NEAR(r.swap.lhs, std::pow(0.5, 0.5) + 4.0, 1e-14);
  EXPECT_NEAR(r.swap.rhs, 0.25 + std::pow(2.0, 0.5), 1e-14);
  EXPECT_EQ(r.swap.verdict, Verdict::holds);
  EXPECT_EQ(r.above_one.verdict, Verdict::holds);

  r = two_var_check(0.3, 0.3);
  EXPECT_EQ(r.swap.verdict, Verdict::equality);
  EXPECT_FALSE(r.swap.contradicts());

  // a^b + b^a approaches 1 when one argument is tiny and the other large.
  r = two_var_check(1e-6, 10);
  EXPECT_GT(r.above_one.lhs, 1.0);
  EXPECT_THROW(two_var_check(-1, 2), DomainError);
}

TEST(TwoVariable, Battery) {
  const auto b = two_var_battery(100000, 4);
  EXPECT_EQ(b.checked, 200000u);
  EXPECT_EQ(b.violated, 0u);
  EXPECT_EQ(b.contradictions, 0u) << b.first_contradiction;
}

TEST(CaterBound, Examples) {
  const auto r = cater_inequality_check(PositiveTuple({0.5, 0.5, 0.5, 0.5}));
  EXPECT_NEAR(r.lhs, 2.8284271247461901, 1e-15);
  EXPECT_NEAR(r.rhs, 2.4142135623730950, 1e-15);
  EXPECT_EQ(r.verdict, Verdict::holds);
  // n = 2 reduces to the two-variable claim.
  const auto q = cater_inequality_check(PositiveTuple({0.001, 9}));
  EXPECT_EQ(q.rhs, 1.0);
  EXPECT_EQ(q.verdict, Verdict::holds);
}

TEST(CaterBound, Battery) {
  const auto b = cater2_battery(100000, 5);
  EXPECT_EQ(b.violated, 0u);
  EXPECT_EQ(b.contradictions, 0u) << b.first_contradiction;
  EXPECT_EQ(b.equality, 0u);
}

TEST(InductionIdentity, Examples) {
  const std::vector<double> v{0.5, 1, 2};
  const auto r = induction_identity_check(PositiveTuple(v));
  EXPECT_NEAR(r.lhs, static_cast<double>(naive_gap(v)), 1e-15);
  const long double head = naive_gap({0.5, 1});
  const long double ph = powl_(2, 2) + powl_(1, 0.5) - powl_(1, 2) - powl_(2, 0.5);
  EXPECT_NEAR(r.rhs, static_cast<double>(head - ph), 1e-15);
  EXPECT_EQ(r.verdict, Verdict::equality);
  EXPECT_FALSE(r.contradicts());
  EXPECT_THROW(induction_identity_check(PositiveTuple({1, 2})), DomainError);
  EXPECT_THROW(induction_identity_check(PositiveTuple({2, 1, 3})), DomainError);
}

TEST(InductionIdentity, HoldsToRoundoff) {
  const auto b = induction_battery(100000, 6);
  EXPECT_EQ(b.checked, 100000u);
  EXPECT_EQ(b.equality, 100000u);
  EXPECT_EQ(b.contradictions, 0u) << b.first_contradiction;
}

TEST(Infimum, ConstructionValues) {
  EXPECT_NEAR(infimum_construction(1, Parity::even, 1e-8), 1.00000001, 1e-15);
  EXPECT_NEAR(infimum_construction(1, Parity::odd, 1e-8), 1.6922006375553464, 1e-15);
  EXPECT_NEAR(infimum_limit(3, Parity::odd), 3.6922006275553464, 1e-15);
  EXPECT_EQ(infimum_limit(4, Parity::even), 4.0);
  EXPECT_THROW(infimum_construction(0, Parity::even, 1e-3), DomainError);
  EXPECT_THROW(infimum_construction(1, Parity::even, 0.2), DomainError);
  EXPECT_THROW(infimum_construction(1, Parity::even, 0.0), DomainError);
}

TEST(Infimum, SeriesApproachesLimitFromAbove) {
  for (unsigned m = 1; m <= 5; ++m) {
    for (Parity p : {Parity::even, Parity::odd}) {
      const auto s = infimum_series(m, p);
      EXPECT_TRUE(s.above_limit) << m;
      EXPECT_TRUE(s.converging) << m;
      EXPECT_LT(s.final_distance, 1e-6);
      for (std::size_t i = 1; i < s.values.size(); ++i) EXPECT_LT(s.values[i], s.values[i - 1]);
    }
  }
}

TEST(LowerHalf, Battery) {
  const auto b = lower_half_battery(100000, 7);
  EXPECT_EQ(b.violated, 0u);
  EXPECT_EQ(b.contradictions, 0u);
}

TEST(Batteries, Deterministic) {
  const auto a = cater2_battery(2000, 99), b = cater2_battery(2000, 99), c = cater2_battery(2000, 100);
  EXPECT_EQ(a.min_margin, b.min_margin);
  EXPECT_EQ(a.worst_digest, b.worst_digest);
  EXPECT_NE(a.worst_digest, c.worst_digest);
}
