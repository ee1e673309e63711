#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "caterlab/cyclic.hpp"
#include "caterlab/errors.hpp"
#include "caterlab/numeric.hpp"
#include "caterlab/quadrature.hpp"
#include "caterlab/random.hpp"
#include "caterlab/rearrangement.hpp"
#include "caterlab/report.hpp"
#include "caterlab/tuple.hpp"

namespace caterlab {

// ---------------------------------------------------------------------------
// Constants

/// Root in (0, 1) of x^{x+1} = 1/e, by bisection on g(x) = (x + 1) ln x + 1,
/// which is increasing there with g(0.1) < 0 < g(0.9).
inline double find_epsilon(double tol = 1e-14) {
  if (!(tol >= 1e-15)) throw DomainError("find_epsilon: tol must be at least 1e-15");
  auto g = [](double x) { return (x + 1.0) * std::log(x) + 1.0; };
  double lo = 0.1, hi = 0.9;
  for (int it = 0; it < 200 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (g(mid) < 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

/// e^{-1/e}
inline double exp_neg_inv_e() { return std::exp(-kInvE); }

/// a_i = eps + (i - 1)/n; satisfies a_1^{a_n} > 1/e for every n >= 2.
inline PositiveTuple remark42_tuple(std::size_t n) {
  if (n < 2) throw DomainError("remark42_tuple: n must be at least 2");
  const double eps = find_epsilon();
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = eps + static_cast<double>(i) / static_cast<double>(n);
  PositiveTuple t(std::move(v));
  if (!t.hypothesis_h()) {
    throw ContradictionError("remark42_tuple: constructed tuple misses a_1^{a_n} >= 1/e",
                             detail::tuple_provenance(t) + "}");
  }
  const auto chain = verify_chain(t);
  if (chain.lower.contradicts()) {
    throw ContradictionError("remark42_tuple: C_lower <= C fails on the constructed tuple",
                             detail::tuple_provenance(t) + "}");
  }
  return t;
}

// ---------------------------------------------------------------------------
// Counterexample search

enum class Region { hypothesis_fail, hypothesis_hold, unconstrained };
enum class Target { violate_lower_5_01, violate_upper_5, violate_cater_2 };

inline const char* to_string(Region r) {
  switch (r) {
    case Region::hypothesis_fail: return "hypothesis-fail";
    case Region::hypothesis_hold: return "hypothesis-hold";
    case Region::unconstrained: return "unconstrained";
  }
  return "?";
}

inline const char* to_string(Target t) {
  switch (t) {
    case Target::violate_lower_5_01: return "lower";
    case Target::violate_upper_5: return "upper";
    case Target::violate_cater_2: return "cater";
  }
  return "?";
}

struct SearchConfig {
  std::size_t n = 3;
  Region region = Region::unconstrained;
  std::uint64_t samples = 10000;
  std::uint64_t seed = 0;
  double lo = 1e-3;
  double hi = 10.0;
  Target target = Target::violate_lower_5_01;
  Band band;

  void validate() const {
    if (n < 2) throw ConfigError("search: n must be at least 2");
    if (samples < 1) throw ConfigError("search: samples must be at least 1");
    if (!(lo >= kMinElement && hi <= kMaxElement && lo < hi)) {
      throw ConfigError("search: value range must satisfy 1e-300 <= lo < hi <= 1e6");
    }
  }

  /// True when a proved statement says the search must come back empty.
  bool claims_no_findings() const {
    return target != Target::violate_lower_5_01 || region == Region::hypothesis_hold;
  }
};

struct SearchFinding {
  PositiveTuple tuple;
  double margin = 0;
  double recheck_margin = 0;
  bool hypothesis_h = false;
  std::uint64_t seed = 0;
  std::uint64_t sample_index = 0;
};

struct SearchReport {
  SearchConfig config;
  std::vector<SearchFinding> findings;
  std::uint64_t samples = 0;
  std::uint64_t rejected_draws = 0;
  std::uint64_t hypothesis_true = 0;
  double min_margin = std::numeric_limits<double>::infinity();

  bool contradiction() const { return config.claims_no_findings() && !findings.empty(); }
};

inline constexpr std::uint64_t kSearchBlock = 1024;
inline constexpr int kResampleBudget = 1000;

namespace detail {

// Both sides of the target inequality, oriented as lhs >= rhs.
template <typename Real>
std::pair<Real, Real> target_sides(Target target, std::span<const double> a) {
  switch (target) {
    case Target::violate_lower_5_01:
      return {exact_sum(cyclic_terms<Real>(a)), exact_sum(reversed_terms<Real>(a))};
    case Target::violate_upper_5:
      return {exact_sum(self_terms<Real>(a)), exact_sum(cyclic_terms<Real>(a))};
    case Target::violate_cater_2: {
      const auto t = cyclic_terms<Real>(a);
      const Real smallest = *std::min_element(t.begin(), t.end());
      return {exact_sum(t), Real(1) + static_cast<Real>(a.size() - 2) * smallest};
    }
  }
  return {0, 0};
}

// Signed margin lhs - rhs (negative means violated), as one exact signed sum.
template <typename Real>
Real target_margin(Target target, std::span<const double> a) {
  std::vector<Real> terms;
  switch (target) {
    case Target::violate_lower_5_01:
      terms = cyclic_terms<Real>(a);
      for (Real t : reversed_terms<Real>(a)) terms.push_back(-t);
      return exact_sum(terms);
    case Target::violate_upper_5:
      terms = self_terms<Real>(a);
      for (Real t : cyclic_terms<Real>(a)) terms.push_back(-t);
      return exact_sum(terms);
    case Target::violate_cater_2: {
      const auto [lhs, rhs] = target_sides<Real>(target, a);
      return lhs - rhs;
    }
  }
  return 0;
}

struct Draw {
  PositiveTuple tuple;
  std::uint64_t rejected;
};

inline Draw draw_tuple(Rng& rng, const SearchConfig& cfg) {
  std::uint64_t rejected = 0;
  for (int attempt = 0; attempt < kResampleBudget; ++attempt) {
    std::vector<double> v(cfg.n);
    if (cfg.region == Region::hypothesis_fail) {
      // Parameterize a_1^{a_n} < 1/e directly: a_1 < e^{-1/a_n}.
      const double top_lo = cfg.hi > 1.0 ? std::max(cfg.lo, 1.0) : cfg.lo;
      const double top = rng.uniform(top_lo, cfg.hi);
      const double cap = std::min(top, std::exp(-1.0 / top));
      if (!(cap > cfg.lo)) {
        ++rejected;
        continue;
      }
      const double bottom = rng.log_uniform(cfg.lo, cap);
      v.front() = bottom;
      v.back() = top;
      for (std::size_t i = 1; i + 1 < cfg.n; ++i) v[i] = rng.uniform(bottom, top);
    } else {
      for (auto& x : v) x = rng.log_uniform(cfg.lo, cfg.hi);
    }
    std::sort(v.begin(), v.end());
    if (!(v.front() >= kMinElement && v.back() <= kMaxElement)) {
      ++rejected;
      continue;
    }
    PositiveTuple t(std::move(v));
    if ((cfg.region == Region::hypothesis_fail && t.hypothesis_h()) ||
        (cfg.region == Region::hypothesis_hold && !t.hypothesis_h())) {
      ++rejected;
      continue;
    }
    return {std::move(t), rejected};
  }
  throw ConfigError(std::string("search: region ") + to_string(cfg.region) +
                    " unreachable in the value range after " + std::to_string(kResampleBudget) +
                    " draws");
}

struct BlockResult {
  std::vector<SearchFinding> findings;
  std::uint64_t rejected = 0;
  std::uint64_t hypothesis_true = 0;
  double min_margin = std::numeric_limits<double>::infinity();
};

inline BlockResult search_block(const SearchConfig& cfg, std::uint64_t block) {
  BlockResult out;
  Rng rng(cfg.seed, block);
  const std::uint64_t first = block * kSearchBlock;
  const std::uint64_t last = std::min(cfg.samples, first + kSearchBlock);
  for (std::uint64_t s = first; s < last; ++s) {
    auto draw = draw_tuple(rng, cfg);
    out.rejected += draw.rejected;
    const PositiveTuple& t = draw.tuple;
    if (t.hypothesis_h()) ++out.hypothesis_true;
    const auto [lhs, rhs] = target_sides<double>(cfg.target, t.values());
    const double margin = target_margin<double>(cfg.target, t.values());
    if (!std::isfinite(margin)) throw NonFiniteError("search: margin is not finite");
    out.min_margin = std::min(out.min_margin, margin);
    const double w = cfg.band.width(lhs, rhs);
    if (margin >= -w) continue;
    const auto recheck = static_cast<double>(target_margin<long double>(cfg.target, t.values()));
    if (recheck >= -w) continue;
    out.findings.push_back({t, margin, recheck, t.hypothesis_h(), cfg.seed, s});
  }
  return out;
}

}  // namespace detail

/// Seeded sampling search for violations of the target inequality.
///
/// The sample space is cut into fixed blocks of kSearchBlock indices, each with
/// its own stream derived from (seed, block), so results do not depend on the
/// number of workers. Findings must survive an extended-precision recheck.
inline SearchReport counterexample_search(const SearchConfig& cfg, unsigned workers = 1) {
  cfg.validate();
  const std::uint64_t blocks = (cfg.samples + kSearchBlock - 1) / kSearchBlock;
  std::vector<detail::BlockResult> results(blocks);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&] {
    for (;;) {
      const std::uint64_t b = next.fetch_add(1);
      if (b >= blocks) return;
      try {
        results[b] = detail::search_block(cfg, b);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(blocks);
        return;
      }
    }
  };
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::min<std::uint64_t>(blocks, 256))));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> threads;
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  SearchReport report{cfg, {}, cfg.samples, 0, 0, std::numeric_limits<double>::infinity()};
  for (auto& r : results) {
    report.rejected_draws += r.rejected;
    report.hypothesis_true += r.hypothesis_true;
    report.min_margin = std::min(report.min_margin, r.min_margin);
    for (auto& f : r.findings) report.findings.push_back(std::move(f));
  }
  return report;
}

// ---------------------------------------------------------------------------
// Means of f^f

enum class FunctionKind { affine, power, exp_scaled };

/// Closed family of continuous non-decreasing positive functions on [0, 1]:
///   affine      c0 + c1 t
///   power       c0 + c1 t^p
///   exp_scaled  c0 e^{c1 t}
class FunctionSpec {
 public:
  static FunctionSpec constant(double c) { return affine(c, 0.0); }
  static FunctionSpec affine(double c0, double c1) { return FunctionSpec(FunctionKind::affine, {c0, c1}); }
  static FunctionSpec power(double c0, double c1, double p) {
    return FunctionSpec(FunctionKind::power, {c0, c1, p});
  }
  static FunctionSpec exp_scaled(double c0, double c1) {
    return FunctionSpec(FunctionKind::exp_scaled, {c0, c1});
  }

  /// Parses "const:c", "affine:c0,c1", "power:c0,c1,p" or "exp:c0,c1".
  static FunctionSpec parse(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw ConfigError("function spec needs kind:params");
    const std::string kind = text.substr(0, colon);
    std::vector<double> p;
    std::stringstream ss(text.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        std::size_t used = 0;
        p.push_back(std::stod(item, &used));
        if (used != item.size()) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        throw ConfigError("function spec: bad number '" + item + "'");
      }
    }
    auto need = [&](std::size_t k) {
      if (p.size() != k) {
        throw ConfigError("function spec '" + kind + "' takes " + std::to_string(k) + " parameters");
      }
    };
    if (kind == "const") {
      need(1);
      return constant(p[0]);
    }
    if (kind == "affine") {
      need(2);
      return affine(p[0], p[1]);
    }
    if (kind == "power") {
      need(3);
      return power(p[0], p[1], p[2]);
    }
    if (kind == "exp" || kind == "exp_scaled") {
      need(2);
      return exp_scaled(p[0], p[1]);
    }
    throw ConfigError("unknown function kind '" + kind + "'");
  }

  FunctionKind kind() const noexcept { return kind_; }
  const std::vector<double>& params() const noexcept { return params_; }

  double operator()(double t) const {
    switch (kind_) {
      case FunctionKind::affine: return params_[0] + params_[1] * t;
      case FunctionKind::power: return params_[0] + params_[1] * std::pow(t, params_[2]);
      case FunctionKind::exp_scaled: return params_[0] * std::exp(params_[1] * t);
    }
    return 0;
  }

  std::string to_string() const {
    std::ostringstream os;
    os.precision(17);
    switch (kind_) {
      case FunctionKind::affine: os << "affine:"; break;
      case FunctionKind::power: os << "power:"; break;
      case FunctionKind::exp_scaled: os << "exp:"; break;
    }
    for (std::size_t i = 0; i < params_.size(); ++i) os << (i ? "," : "") << params_[i];
    return os.str();
  }

 private:
  FunctionSpec(FunctionKind kind, std::vector<double> params) : kind_(kind), params_(std::move(params)) {
    for (double v : params_) {
      if (!std::isfinite(v)) throw ConfigError("function spec: parameters must be finite");
    }
    if (!(params_[0] > 0)) throw ConfigError("function spec: c0 must be positive");
    if (!(params_[1] >= 0)) throw ConfigError("function spec: c1 must be non-negative");
    if (kind_ == FunctionKind::power && !(params_[2] > 0)) {
      throw ConfigError("function spec: exponent p must be positive");
    }
    if (!((*this)(1.0) <= kMaxElement)) throw ConfigError("function spec: f(1) exceeds 1e6");
  }

  FunctionKind kind_;
  std::vector<double> params_;
};

/// n^{-1} C(f(1/n), ..., f(n/n))
inline double riemann_mean(const FunctionSpec& f, std::size_t n) {
  if (n < 2) throw DomainError("riemann_mean: n must be at least 2");
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = f(static_cast<double>(i + 1) / static_cast<double>(n));
  return cater_C(PositiveTuple(std::move(v))) / static_cast<double>(n);
}

/// n^{-1} C_*(f(1/n), ..., f(n/n)), the right Riemann sum of f^f.
inline double riemann_upper_mean(const FunctionSpec& f, std::size_t n) {
  if (n < 2) throw DomainError("riemann_upper_mean: n must be at least 2");
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = f(static_cast<double>(i + 1) / static_cast<double>(n));
  return cater_C_upper(PositiveTuple(std::move(v))) / static_cast<double>(n);
}

/// Integral of f(t)^{f(t)} over [0, 1] to an absolute error estimate <= tol.
inline QuadratureResult integral_mean_detailed(const FunctionSpec& f, double tol = 1e-10) {
  if (!(tol >= 1e-12)) throw DomainError("integral_mean: tol must be at least 1e-12");
  return integrate_adaptive([&](double t) { const double x = f(t); return pow_pos(x, x); }, 0.0, 1.0,
                            tol);
}

inline double integral_mean(const FunctionSpec& f, double tol = 1e-10) {
  return integral_mean_detailed(f, tol).value;
}

/// Total variation of t -> f(t)^{f(t)} on [0, 1]. f is non-decreasing and x^x
/// has its only minimum at 1/e, so the variation follows from f(0) and f(1).
inline double self_power_variation(const FunctionSpec& f) {
  const double x0 = f(0.0), x1 = f(1.0);
  auto g = [](double x) { return pow_pos(x, x); };
  if (x0 >= kInvE) return g(x1) - g(x0);
  if (x1 <= kInvE) return g(x0) - g(x1);
  const double gmin = g(kInvE);
  return (g(x0) - gmin) + (g(x1) - gmin);
}

struct ConvergenceRow {
  std::size_t n = 0;
  double riemann_mean = 0;
  double riemann_upper_mean = 0;
  double integral_mean = 0;
  double gap = 0;    // integral - riemann_mean
  double slack = 0;  // variation / n
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  double integral = 0;
  double integral_error = 0;
  double variation = 0;
  /// |gap| at the largest n is below |gap| at the smallest n (or all gaps in band).
  bool gap_shrinks = true;
};

/// Tabulates riemann_mean against the integral for each n. Asserts
/// riemann_mean(n) <= riemann_upper_mean(n) and riemann_mean(n) <= integral +
/// band + variation/n; a failure of either is a contradiction.
inline ConvergenceReport convergence_report(const FunctionSpec& f, const std::vector<std::size_t>& n_list,
                                            double tol = 1e-10, const Band& band = {}) {
  if (n_list.empty()) throw DomainError("convergence_report: empty n list");
  if (!std::is_sorted(n_list.begin(), n_list.end())) {
    throw DomainError("convergence_report: n list must be ascending");
  }
  ConvergenceReport rep;
  const auto quad = integral_mean_detailed(f, tol);
  rep.integral = quad.value;
  rep.integral_error = quad.error_estimate;
  rep.variation = self_power_variation(f);
  for (std::size_t n : n_list) {
    ConvergenceRow row;
    row.n = n;
    row.riemann_mean = riemann_mean(f, n);
    row.riemann_upper_mean = riemann_upper_mean(f, n);
    row.integral_mean = rep.integral;
    row.gap = rep.integral - row.riemann_mean;
    row.slack = rep.variation / static_cast<double>(n);
    const std::string where = "{\"f\":\"" + f.to_string() + "\",\"n\":" + std::to_string(n) + "}";
    if (row.riemann_mean > row.riemann_upper_mean + band.width(row.riemann_mean, row.riemann_upper_mean)) {
      throw ContradictionError("convergence_report: n^-1 C exceeds n^-1 C_upper", where);
    }
    if (row.riemann_mean > rep.integral + band.width(row.riemann_mean, rep.integral) + tol + row.slack) {
      throw ContradictionError("convergence_report: n^-1 C exceeds the integral beyond the 1/n slack",
                               where);
    }
    rep.rows.push_back(row);
  }
  const auto& first = rep.rows.front();
  const auto& last = rep.rows.back();
  const bool all_in_band = std::all_of(rep.rows.begin(), rep.rows.end(), [&](const auto& r) {
    return std::abs(r.gap) <= band.width(r.riemann_mean, r.integral_mean) + tol;
  });
  rep.gap_shrinks = all_in_band || std::abs(last.gap) < std::abs(first.gap);
  return rep;
}

}  // namespace caterlab
