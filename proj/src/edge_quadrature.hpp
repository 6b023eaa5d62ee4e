#pragma once

// Shared machinery for integrals of the form int_0^inf K(x, y, t) phi_j(y) dy
// where K is built from Gaussians centred at y = x (same edge) and y = -x.

#include <algorithm>
#include <cmath>
#include <vector>

#include "stargraph/initial_data.hpp"
#include "stargraph/kernel.hpp"
#include "stargraph/quadrature.hpp"

namespace stargraph::detail {

/// Upper truncation for an edge integral seen from coordinate x_coord:
/// x + r on the evaluation edge (direct Gaussian), r on the others (the
/// reflected Gaussian is maximal at y = 0).
inline double window_upper(double x_coord, bool same_edge, double t, double eps) {
  const double r = tail_radius(t, eps);
  return same_edge ? x_coord + r : r;
}

inline std::vector<double> window_breaks(double x_coord, bool same_edge, double t,
                                         double upper) {
  std::vector<double> breaks = {0.0, upper};
  const double s = std::sqrt(t);
  auto add = [&](double y) {
    if (y > 0.0 && y < upper) breaks.push_back(y);
  };
  for (double k : {0.5, 1.0, 2.0, 4.0, 8.0}) {
    add(k * s);
    if (same_edge) {
      add(x_coord - k * s);
      add(x_coord + k * s);
    }
  }
  if (same_edge) add(x_coord);
  return breaks;
}

/// Window over the support [lo, hi] of a density: the Gaussians are cut where
/// they drop below eps times their largest value on the support, so data far
/// from x keeps its (small) contribution at full relative accuracy.
inline double support_window_upper(double x_coord, bool same_edge, double t, double eps,
                                   double lo, double hi) {
  const double r = tail_radius(t, eps);
  const double reflected = std::sqrt((x_coord + lo) * (x_coord + lo) + r * r) - x_coord;
  if (!same_edge) return reflected;
  const double nearest = std::clamp(x_coord, lo, hi);
  const double gap = nearest - x_coord;
  return std::max(reflected, x_coord + std::sqrt(gap * gap + r * r));
}

/// int kernel_part(y) * phi(y) dy over the density support, truncated by the
/// Gaussian window.
template <std::size_t K, class F>
QuadratureResult<K> integrate_density(const DensityForm& form, double x_coord, bool same_edge,
                                      double t, const QuadratureSpec& spec, F&& kernel_part,
                                      const Values<K>& coupling = {}) {
  const double lo = density_support_start(form, spec.tail_eps);
  const double hi = density_support_end(form, spec.tail_eps);
  const double upper =
      std::min(hi, support_window_upper(x_coord, same_edge, t, spec.tail_eps, lo, hi));
  if (!(upper > lo)) return {};
  std::vector<double> breaks = window_breaks(x_coord, same_edge, t, upper);
  if (lo > 0.0) {
    std::erase_if(breaks, [lo](double y) { return y < lo; });
    breaks.push_back(lo);
    for (double k : {0.5, 1.0, 2.0, 4.0}) {
      if (lo + k * std::sqrt(t) < upper) breaks.push_back(lo + k * std::sqrt(t));
    }
  }
  const std::vector<double> kinks = density_breakpoints(form, upper);
  breaks.insert(breaks.end(), kinks.begin(), kinks.end());
  auto integrand = [&](double y) {
    Values<K> v = kernel_part(y);
    const double phi = density_value(form, y);
    for (double& c : v) c *= phi;
    return v;
  };
  // Initial panels are free; the bisection budget comes on top of them.
  return integrate<K>(integrand, std::move(breaks), spec, Values<K>{}, coupling);
}

}  // namespace stargraph::detail
