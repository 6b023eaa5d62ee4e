#pragma once

#include "stargraph/graph.hpp"
#include "stargraph/initial_data.hpp"
#include "stargraph/kernel.hpp"
#include "stargraph/quadrature.hpp"

namespace stargraph {

/// u = P_t phi at a point, with du/dx, d2u/dx2 (one-sided along the edge
/// of the point) and du/dt, all by differentiation under the integral.
struct SemigroupValue {
  double u = 0.0;
  double u_x = 0.0;
  double u_xx = 0.0;
  double u_t = 0.0;
};

/// Atoms are exact kernel evaluations; densities are integrated per edge by
/// adaptive Gauss-Kronrod over the tail window of the kernel.
/// Throws DomainError (t <= 0, bad point, edge mismatch) or QuadratureError.
[[nodiscard]] SemigroupValue apply(const StarGraph& graph, const GraphFunction& phi,
                                   const GraphPoint& x, double t,
                                   const QuadratureSpec& spec = {});

/// d2/dx2 log u = u_xx / u - (u_x / u)^2. Throws DomainError if u <= 0.
[[nodiscard]] double log_second_derivative(const SemigroupValue& v);

/// Samples P_t phi on every edge at y = k * spacing, k*spacing <= length, as
/// a GraphFunction of sampled densities.
[[nodiscard]] GraphFunction sample_semigroup(const StarGraph& graph, const GraphFunction& phi,
                                             double t, double length, double spacing,
                                             const QuadratureSpec& spec = {});

struct ComposeReport {
  double discrepancy = 0.0;          // |P_{t1+t2} phi(x) - P_{t1}(P_{t2} phi)(x)|
  double interpolation_bound = 0.0;  // spacing^2 / 8 * max |f''| of the sampled P_{t2} phi
  double u = 0.0;                    // P_{t1+t2} phi(x)
  double spacing = 0.0;
};

/// Semigroup check with the intermediate function materialised on a uniform
/// grid of spacing min(0.01, sqrt(t2)/100) covering the outer tail window.
[[nodiscard]] ComposeReport compose_check(const StarGraph& graph, const GraphFunction& phi,
                                          const GraphPoint& x, double t1, double t2,
                                          const QuadratureSpec& spec = {});

struct InvarianceReport {
  double discrepancy = 0.0;       // |P_t w(x) - w(x)|
  double truncation_bound = 0.0;  // Gaussian tails beyond the window against linear growth
  double value = 0.0;             // P_t w(x)
};

/// P_t applied to a (non-integrable) harmonic function over the truncated
/// tail window.
[[nodiscard]] InvarianceReport harmonic_invariance(const StarGraph& graph,
                                                   const HarmonicFunction& w,
                                                   const GraphPoint& x, double t,
                                                   const QuadratureSpec& spec = {});

}  // namespace stargraph
