#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <queue>
#include <vector>

#include "caterlab/errors.hpp"

namespace caterlab {

struct QuadratureResult {
  double value = 0;
  double error_estimate = 0;
  std::size_t panels = 0;
};

namespace detail {

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

// 15-point Kronrod rule with the embedded 7-point Gauss rule; error is |K15 - G7|.
template <typename Fn>
Panel gauss_kronrod_15(const Fn& f, double a, double b) {
  static constexpr double xgk[8] = {
      0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
      0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
      0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
      0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
  static constexpr double wgk[8] = {
      0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
      0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
      0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
      0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
  static constexpr double wg[4] = {
      0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
      0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = wgk[7] * fc;
  double gauss = wg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = half * xgk[j];
    const double sum = f(center - dx) + f(center + dx);
    kronrod += wgk[j] * sum;
    if (j % 2 == 1) gauss += wg[j / 2] * sum;
  }
  kronrod *= half;
  gauss *= half;
  return {a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod integration: the panel with the largest error
/// estimate is bisected until the summed estimate is at most abs_tol.
template <typename Fn>
QuadratureResult integrate_adaptive(const Fn& f, double a, double b, double abs_tol,
                                    std::size_t max_panels = 100000) {
  std::priority_queue<detail::Panel> panels;
  panels.push(detail::gauss_kronrod_15(f, a, b));
  double value = panels.top().value;
  double error = panels.top().error;
  while (error > abs_tol) {
    if (panels.size() >= max_panels) {
      throw QuadratureError("quadrature did not converge within the panel budget", value, error);
    }
    const detail::Panel worst = panels.top();
    panels.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const auto left = detail::gauss_kronrod_15(f, worst.a, mid);
    const auto right = detail::gauss_kronrod_15(f, mid, worst.b);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
  }
  // Re-add from scratch to drop the drift of the running updates.
  QuadratureResult out;
  out.panels = panels.size();
  out.value = 0;
  out.error_estimate = 0;
  std::vector<detail::Panel> all;
  all.reserve(panels.size());
  while (!panels.empty()) {
    all.push_back(panels.top());
    panels.pop();
  }
  std::sort(all.begin(), all.end(), [](const auto& l, const auto& r) { return l.a < r.a; });
  for (const auto& p : all) {
    out.value += p.value;
    out.error_estimate += p.error;
  }
  if (!std::isfinite(out.value)) {
    throw QuadratureError("quadrature produced a non-finite value", out.value, out.error_estimate);
  }
  return out;
}

}  // namespace caterlab
