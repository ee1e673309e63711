#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "caterlab/explorer.hpp"
#include "caterlab/quadrature.hpp"

using namespace caterlab;

namespace {

// Composite Simpson on a uniform grid; independent of the adaptive integrator.
double simpson(const FunctionSpec& f, int panels) {
  auto g = [&](double t) { const double x = f(t); return std::pow(x, x); };
  const double h = 1.0 / panels;
  long double s = g(0) + g(1);
  for (int i = 1; i < panels; ++i) s += (i % 2 ? 4 : 2) * g(i * h);
  return static_cast<double>(s * h / 3);
}

SearchConfig config(Target target, Region region, std::size_t n, std::uint64_t samples, std::uint64_t seed) {
  SearchConfig c;
  c.target = target;
  c.region = region;
  c.n = n;
  c.samples = samples;
  c.seed = seed;
  return c;
}

}  // namespace

TEST(Constants, EpsilonIsTheRoot) {
  const double eps = find_epsilon();
  // Independent oracle (50-digit evaluation): 0.51734461054674511563...
  EXPECT_NEAR(eps, 0.51734461054674512, 1e-14);
  EXPECT_NEAR(std::pow(eps, eps + 1), std::exp(-1.0), 1e-14);
  EXPECT_NEAR(find_epsilon(1e-6), eps, 1e-6);
  EXPECT_THROW(find_epsilon(1e-16), DomainError);
}

TEST(Constants, ExpNegInvE) {
  EXPECT_NEAR(exp_neg_inv_e(), 0.6922006275553464, 1e-16);
  EXPECT_NEAR(exp_neg_inv_e(), std::pow(std::exp(-1.0), std::exp(-1.0)), 1e-16);
}

TEST(Remark42Tuple, SatisfiesHypothesis) {
  for (std::size_t n : {2u, 3u, 10u, 100u, 1000u}) {
    const auto t = remark42_tuple(n);
    EXPECT_EQ(t.size(), n);
    EXPECT_TRUE(t.sorted_ascending());
    EXPECT_TRUE(t.hypothesis_h());
    EXPECT_NEAR(t[n - 1], find_epsilon() + (n - 1.0) / n, 1e-15);
  }
  EXPECT_THROW(remark42_tuple(1), DomainError);
}

TEST(Search, LowerTargetFindsViolationsWithoutHypothesis) {
  const auto r = counterexample_search(config(Target::violate_lower_5_01, Region::hypothesis_fail, 3, 20000, 1));
  EXPECT_FALSE(r.findings.empty());
  EXPECT_FALSE(r.contradiction());
  for (const auto& f : r.findings) {
    EXPECT_FALSE(f.hypothesis_h);
    EXPECT_LT(f.margin, 0);
    EXPECT_LT(f.recheck_margin, 0);
    // Re-evaluate independently: C - C_lower < 0.
    const double c = cater_C(f.tuple), lo = cater_C_lower(f.tuple);
    EXPECT_LT(c, lo);
  }
}

TEST(Search, KnownCounterexampleIsFoundInUnconstrainedRegion) {
  const auto r = counterexample_search(config(Target::violate_lower_5_01, Region::unconstrained, 3, 50000, 2));
  EXPECT_FALSE(r.findings.empty());
  EXPECT_FALSE(r.config.claims_no_findings());
}

TEST(Search, ProvedTargetsComeBackEmpty) {
  for (Target target : {Target::violate_upper_5, Target::violate_cater_2}) {
    for (std::size_t n : {2u, 3u, 5u, 8u}) {
      const auto r = counterexample_search(config(target, Region::unconstrained, n, 250000, 3), 4);
      EXPECT_TRUE(r.findings.empty()) << to_string(target) << " n=" << n;
      EXPECT_FALSE(r.contradiction());
      EXPECT_EQ(r.samples, 250000u);
    }
  }
  const auto r = counterexample_search(config(Target::violate_lower_5_01, Region::hypothesis_hold, 4, 200000, 3), 4);
  EXPECT_TRUE(r.findings.empty());
  EXPECT_EQ(r.hypothesis_true, 200000u);
}

TEST(Search, DeterministicAndWorkerIndependent) {
  auto cfg = config(Target::violate_lower_5_01, Region::hypothesis_fail, 4, 10000, 77);
  const auto a = counterexample_search(cfg, 1);
  for (unsigned w : {1u, 2u, 5u, 16u}) {
    const auto b = counterexample_search(cfg, w);
    ASSERT_EQ(a.findings.size(), b.findings.size());
    for (std::size_t i = 0; i < a.findings.size(); ++i) {
      EXPECT_EQ(a.findings[i].sample_index, b.findings[i].sample_index);
      EXPECT_EQ(a.findings[i].tuple, b.findings[i].tuple);
      EXPECT_EQ(a.findings[i].margin, b.findings[i].margin);
    }
    EXPECT_EQ(a.min_margin, b.min_margin);
    EXPECT_EQ(a.rejected_draws, b.rejected_draws);
  }
  cfg.seed = 78;
  const auto c = counterexample_search(cfg, 1);
  EXPECT_NE(a.min_margin, c.min_margin);
}

TEST(Search, ConfigErrors) {
  auto cfg = config(Target::violate_lower_5_01, Region::unconstrained, 1, 10, 0);
  EXPECT_THROW(counterexample_search(cfg), ConfigError);
  cfg.n = 3;
  cfg.samples = 0;
  EXPECT_THROW(counterexample_search(cfg), ConfigError);
  cfg.samples = 10;
  cfg.lo = 5;
  cfg.hi = 2;
  EXPECT_THROW(counterexample_search(cfg), ConfigError);
  // Every a_1^{a_n} >= 1/e on [0.9, 1.1], so the region cannot be sampled.
  cfg = config(Target::violate_lower_5_01, Region::hypothesis_fail, 3, 10, 0);
  cfg.lo = 0.9;
  cfg.hi = 1.1;
  EXPECT_THROW(counterexample_search(cfg, 2), ConfigError);
}

TEST(FunctionSpec, ParseAndEvaluate) {
  EXPECT_EQ(FunctionSpec::parse("const:2")(0.3), 2.0);
  EXPECT_EQ(FunctionSpec::parse("affine:1,1")(0.5), 1.5);
  EXPECT_DOUBLE_EQ(FunctionSpec::parse("power:0.5,0.5,2")(0.5), 0.625);
  EXPECT_DOUBLE_EQ(FunctionSpec::parse("exp:0.5,1")(1.0), 0.5 * std::exp(1.0));
  EXPECT_EQ(FunctionSpec::parse("affine:1,1").to_string(), "affine:1,1");
  for (const char* bad : {"affine", "affine:1", "affine:1,x", "power:1,1", "quad:1,2", "affine:0,1",
                          "affine:1,-1", "power:1,1,0", "affine:1,2e6", "const:nan"}) {
    EXPECT_THROW(FunctionSpec::parse(bad), ConfigError) << bad;
  }
}

TEST(Quadrature, KnownIntegrals) {
  auto r = integrate_adaptive([](double t) { return std::sqrt(t); }, 0, 1, 1e-12);
  EXPECT_NEAR(r.value, 2.0 / 3.0, 1e-12);
  r = integrate_adaptive([](double t) { return std::exp(t); }, 0, 2, 1e-12);
  EXPECT_NEAR(r.value, std::exp(2.0) - 1, 1e-12);
  EXPECT_LE(r.error_estimate, 1e-12);
  EXPECT_THROW(integrate_adaptive([](double t) { return 1 / std::sqrt(t + 1e-300); }, 0, 1, 1e-14, 5),
               QuadratureError);
}

TEST(IntegralMean, Oracles) {
  EXPECT_NEAR(integral_mean(FunctionSpec::affine(1, 1)), 2.0504462345347313, 1e-10);
  EXPECT_NEAR(integral_mean(FunctionSpec::power(0.5, 0.5, 2)), 0.77939338685160036, 1e-10);
  EXPECT_NEAR(integral_mean(FunctionSpec::exp_scaled(0.5, 1)), 0.93161166723683575, 1e-10);
  EXPECT_NEAR(integral_mean(FunctionSpec::constant(2)), 4.0, 1e-12);
  for (const char* s : {"affine:0.1,3", "power:0.2,2,0.5", "exp:0.05,3", "affine:3,0.5"}) {
    const auto f = FunctionSpec::parse(s);
    EXPECT_NEAR(integral_mean(f), simpson(f, 200000), 1e-9) << s;
  }
  EXPECT_THROW(integral_mean(FunctionSpec::constant(2), 1e-13), DomainError);
}

TEST(RiemannMean, Oracles) {
  const auto f = FunctionSpec::affine(1, 1);
  EXPECT_NEAR(riemann_mean(f, 10), 2.1033051645161201, 1e-14);
  EXPECT_NEAR(riemann_mean(f, 100), 2.0550158771649491, 1e-14);
  EXPECT_NEAR(riemann_mean(f, 1000), 2.0508965246206609, 1e-14);
  EXPECT_NEAR(riemann_mean(f, 10000), 2.0504911972697730, 1e-13);
  EXPECT_EQ(riemann_mean(FunctionSpec::constant(2), 10), 4.0);
  EXPECT_THROW(riemann_mean(f, 1), DomainError);
}

TEST(Variation, SelfPower) {
  EXPECT_NEAR(self_power_variation(FunctionSpec::affine(1, 1)), 3.0, 1e-15);
  EXPECT_EQ(self_power_variation(FunctionSpec::constant(0.7)), 0.0);
  // Crosses the minimum at 1/e.
  const auto f = FunctionSpec::affine(0.1, 0.9);
  const double m = std::pow(std::exp(-1.0), std::exp(-1.0));
  EXPECT_NEAR(self_power_variation(f), (std::pow(0.1, 0.1) - m) + (1.0 - m), 1e-15);
}

TEST(Convergence, Report) {
  const auto rep = convergence_report(FunctionSpec::affine(1, 1), {10, 100, 1000});
  ASSERT_EQ(rep.rows.size(), 3u);
  EXPECT_TRUE(rep.gap_shrinks);
  for (const auto& row : rep.rows) {
    EXPECT_LE(row.riemann_mean, row.riemann_upper_mean);
    EXPECT_LE(row.riemann_mean, rep.integral + row.slack);
    EXPECT_EQ(row.gap, rep.integral - row.riemann_mean);
  }
  EXPECT_GT(std::abs(rep.rows[0].gap), std::abs(rep.rows[2].gap));

  const auto flat = convergence_report(FunctionSpec::constant(2), {10});
  EXPECT_LE(std::abs(flat.rows[0].gap), 1e-12);
  EXPECT_TRUE(flat.gap_shrinks);

  EXPECT_THROW(convergence_report(FunctionSpec::constant(2), {}), DomainError);
  EXPECT_THROW(convergence_report(FunctionSpec::constant(2), {100, 10}), DomainError);
}

TEST(Convergence, SlackBoundHoldsAcrossFamilies) {
  for (const char* s : {"affine:0.05,2", "power:0.3,1,3", "exp:0.1,2", "affine:2,1", "power:1,0.5,0.5"}) {
    EXPECT_NO_THROW(convergence_report(FunctionSpec::parse(s), {2, 3, 10, 50, 400})) << s;
  }
}
