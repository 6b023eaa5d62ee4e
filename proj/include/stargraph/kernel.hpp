#pragma once

#include "stargraph/graph.hpp"
#include "stargraph/quadrature.hpp"

namespace stargraph {

/// A kernel sample with its analytic derivatives. For gauss() the spatial
/// derivatives are in z; for kernel() they are in the coordinate of x.
struct KernelValue {
  double value = 0.0;
  double d_x = 0.0;
  double d_xx = 0.0;
  double d_t = 0.0;
};

/// Exponent arguments below this return an exact zero (value and derivatives).
inline constexpr double kUnderflowExponent = -745.0;

/// Heat kernel on the line, (4 pi t)^(-1/2) exp(-z^2 / 4t), with d/dz,
/// d2/dz2 and d/dt. Throws DomainError if t <= 0.
[[nodiscard]] KernelValue gauss(double z, double t);

/// Heat kernel of the star graph with Kirchhoff weights: the transition
/// density from x to y at time t.
///   y on another edge j:  2 alpha_j g(x + y, t)
///   y on the same edge i: g(x - y, t) + (2 alpha_i - 1) g(x + y, t)
/// A point at O is treated as lying on the edge the caller names.
[[nodiscard]] KernelValue kernel(const StarGraph& graph, const GraphPoint& x,
                                 const GraphPoint& y, double t);

/// Radius r with exp(-r^2 / 4t) = eps. Throws DomainError unless t > 0 and
/// 0 < eps < 1.
[[nodiscard]] double tail_radius(double t, double eps);

/// Total mass sum_j int_0^inf kernel(x, (j, y), t) dy by adaptive quadrature;
/// equals 1 up to quadrature error.
[[nodiscard]] double kernel_mass(const StarGraph& graph, const GraphPoint& x, double t,
                                 const QuadratureSpec& spec = {});

}  // namespace stargraph
