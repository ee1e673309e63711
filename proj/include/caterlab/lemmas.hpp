#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "caterlab/cyclic.hpp"
#include "caterlab/errors.hpp"
#include "caterlab/numeric.hpp"
#include "caterlab/report.hpp"
#include "caterlab/tuple.hpp"

namespace caterlab {

/// (x, y, z) in (0, inf)^3 with max{x, z} <= y.
class OmegaPoint {
 public:
  OmegaPoint(double x, double y, double z) : x_(x), y_(y), z_(z) {
    if (!(x > 0 && y > 0 && z > 0) || !std::isfinite(x) || !std::isfinite(y) ||
        !std::isfinite(z)) {
      throw DomainError("OmegaPoint: coordinates must be positive and finite");
    }
    if (std::max(x, z) > y) throw DomainError("OmegaPoint: need max{x, z} <= y");
  }

  double x() const noexcept { return x_; }
  double y() const noexcept { return y_; }
  double z() const noexcept { return z_; }

 private:
  double x_, y_, z_;
};

/// (y - x) ln x + ln y - ln x
inline double aux_F(double x, double y) {
  if (!(x > 0 && y > 0)) throw DomainError("aux_F: arguments must be positive");
  return (y - x) * std::log(x) + std::log(y) - std::log(x);
}

/// aux_F(x, y) > 0 on 0 < x < y < 1.
inline EvalReport lemma_301_check(double x, double y, const Band& band = {}) {
  if (!(0 < x && x < y && y < 1)) throw DomainError("lemma_301_check: need 0 < x < y < 1");
  return make_report("aux_F(x,y) > 0", aux_F(x, y), 0.0, Relation::at_least, band, true,
                     digest_of({x, y}));
}

/// y^y + z^x - (z^y + y^x), summed exactly.
inline double phi(const OmegaPoint& p) {
  const double t[4] = {pow_pos(p.y(), p.y()), pow_pos(p.z(), p.x()), -pow_pos(p.z(), p.y()),
                       -pow_pos(p.y(), p.x())};
  return require_finite(exact_sum(std::span<const double>(t)), "phi");
}

/// phi >= 0 where it is claimed: y >= 1 (equality iff y = z or y = x), or
/// x <= z <= y < 1 (equality iff y = z). Other points of Omega are rejected.
inline EvalReport phi_nonneg_check(const OmegaPoint& p, const Band& band = {}) {
  const double x = p.x(), y = p.y(), z = p.z();
  bool expected = false;
  std::string claim;
  if (y >= 1) {
    claim = "phi >= 0 (y >= 1)";
    expected = y == z || y == x;
  } else if (x <= z && z <= y) {
    claim = "phi >= 0 (x <= z <= y < 1)";
    expected = y == z;
  } else {
    throw DomainError("phi_nonneg_check: outside claimed region (y < 1 and z < x)");
  }
  auto r = make_report(claim, phi(p), 0.0, Relation::at_least, band, false, digest_of({x, y, z}));
  set_expected_equality(r, expected);
  return r;
}

struct TwoVarReports {
  EvalReport swap;      // a^a + b^b >= a^b + b^a
  EvalReport above_one; // a^b + b^a > 1
};

inline TwoVarReports two_var_check(double a, double b, const Band& band = {}) {
  if (!(a > 0 && b > 0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw DomainError("two_var_check: arguments must be positive and finite");
  }
  const PositiveTuple t({a, b});
  const double c = cater_C(t);
  const std::string d = t.digest();
  TwoVarReports out{
      make_report("a^a + b^b >= a^b + b^a", cater_C_upper(t), c, Relation::at_least, band, false, d),
      make_report("a^b + b^a > 1", c, 1.0, Relation::at_least, band, true, d),
  };
  set_expected_equality(out.swap, a == b);
  return out;
}

/// C(a) > 1 + (n - 2) min_i a_i^{a_{i+1}}; no ordering required.
inline EvalReport cater_inequality_check(const PositiveTuple& a, const Band& band = {}) {
  const auto terms = detail::cyclic_terms<double>(a.values());
  const double c = require_finite(exact_sum(terms), "cater_C");
  const double smallest = *std::min_element(terms.begin(), terms.end());
  const double rhs = 1.0 + static_cast<double>(a.size() - 2) * smallest;
  return make_report("C > 1 + (n-2) min term", c, rhs, Relation::at_least, band, true, a.digest());
}

/// Dimension-reduction identity for a sorted (n+1)-tuple:
///   C(a_1..a_{n+1}) - C_*(a_1..a_{n+1})
///     = [C(a_1..a_n) - C_*(a_1..a_n)] - phi(a_1, a_{n+1}, a_n).
/// Reported as lhs vs rhs; the verdict uses the given band (1e-13 relative by default).
inline EvalReport induction_identity_check(const PositiveTuple& a,
                                           const Band& band = {1e-300, 1e-13}) {
  if (!a.sorted_ascending()) throw DomainError("induction_identity_check: tuple must be sorted");
  if (a.size() < 3) throw DomainError("induction_identity_check: need n + 1 >= 3");
  const auto v = a.values();
  const std::size_t n1 = v.size();
  const PositiveTuple head(std::vector<double>(v.begin(), v.end() - 1));

  auto gap = [](const PositiveTuple& t) {
    auto terms = detail::cyclic_terms<double>(t.values());
    for (double s : detail::self_terms<double>(t.values())) terms.push_back(-s);
    return require_finite(exact_sum(terms), "C - C_upper");
  };

  const double lhs = gap(a);
  const double rhs = gap(head) - phi(OmegaPoint(v[0], v[n1 - 1], v[n1 - 2]));
  auto r = make_report("dimension reduction identity", lhs, rhs, Relation::at_least, band, false,
                       a.digest());
  set_expected_equality(r, true);
  return r;
}

enum class Parity { even, odd };

/// C^* of (d, ..., d, 1, ..., 1) (m copies each) for even parity, or of
/// (d, ..., d, 1/e, 1, ..., 1) for odd; tends to m, resp. m + e^{-1/e}, as d -> 0+.
inline double infimum_construction(unsigned m, Parity parity, double delta) {
  if (m < 1) throw DomainError("infimum_construction: m must be positive");
  if (!(delta > 0 && delta <= 0.1)) throw DomainError("infimum_construction: delta must be in (0, 0.1]");
  std::vector<double> v(m, delta);
  if (parity == Parity::odd) v.push_back(kInvE);
  v.insert(v.end(), m, 1.0);
  return cater_C_lower(PositiveTuple(std::move(v)));
}

inline double infimum_limit(unsigned m, Parity parity) {
  return parity == Parity::even ? m : m + std::exp(-kInvE);
}

}  // namespace caterlab
