#pragma once

#include <cstddef>

#include "stargraph/graph.hpp"
#include "stargraph/initial_data.hpp"
#include "stargraph/quadrature.hpp"
#include "stargraph/semigroup.hpp"

namespace stargraph {

/// Margins below -kMarginTolerance are recomputed at rel_tol / 100 before
/// they are reported.
inline constexpr double kMarginTolerance = 1e-8;

/// g(x-y,t) g(x+y,t) / (g(x-y,t) + (2 alpha_i - 1) g(x+y,t)), evaluated as
/// g(x+y,t) / (1 + (2 alpha_i - 1) exp(-x y / t)) so it survives underflow.
[[nodiscard]] double h_factor(const StarGraph& graph, std::size_t edge, double x, double y,
                              double t);

/// Correction term of the Li-Yau bound on edge i = x.edge:
///   I_i(x,t) = 1/(t^2 u) * int_0^inf y^2 h(x,y,t) phi_i(y) dy
/// (atoms on edge i contribute w a^2 h(x,a,t)). This is the exact remainder
/// of the Cauchy-Schwarz step, so a single atom gives equality.
[[nodiscard]] double curvature_term(const StarGraph& graph, const GraphFunction& phi,
                                    const GraphPoint& x, double t,
                                    const QuadratureSpec& spec = {});

/// Same integral with (|x+y| - |x-y|)^2 / 4 = min(x,y)^2 in place of y^2.
/// Vanishes at O and is dominated by the x^2 bounds, but it is not a valid
/// Li-Yau correction when alpha_i < 1/2 and phi_i has mass beyond x.
[[nodiscard]] double curvature_term_literal(const StarGraph& graph, const GraphFunction& phi,
                                            const GraphPoint& x, double t,
                                            const QuadratureSpec& spec = {});

struct LiYauReport {
  GraphPoint point;
  double t = 0.0;
  double u = 0.0;
  double u_x = 0.0;
  double u_xx = 0.0;
  double u_t = 0.0;
  double lhs = 0.0;        // d2/dx2 log u
  double I_term = 0.0;     // curvature_term
  double rhs = 0.0;        // -1/(2t) - (1 - 2 alpha_i) I_term
  double margin = 0.0;     // lhs - rhs
  double bound_x = 0.0;    // x^2/t^2 * int g(x-y,t) phi_i / (2 alpha_i u)
  double bound_l1 = 0.0;   // x^2/t^2 * (4 pi t)^(-1/2) |phi_i|_1 / (2 alpha_i u)
  double I_literal = 0.0;  // curvature_term_literal
  bool refined = false;    // recomputed at tighter tolerance
};

[[nodiscard]] LiYauReport liyau_report(const StarGraph& graph, const GraphFunction& phi,
                                       const GraphPoint& x, double t,
                                       const QuadratureSpec& spec = {});

/// Shift of the Harnack exponent: x + d t/(t-s) when x and y share an edge
/// (a point at O shares every edge), x - d t/(t-s) otherwise.
/// Throws DomainError unless 0 < s < t.
[[nodiscard]] double rho(const GraphPoint& x, const GraphPoint& y, double t, double s);

/// Point reached at parameter r in [0, t-s] on the path from (x,t) to (y,s):
/// straight along a shared edge, otherwise through O with constant speed.
[[nodiscard]] GraphPoint harnack_path(const GraphPoint& x, const GraphPoint& y, double t,
                                      double s, double r);

/// max over edges i and r in [0, t-s] of
///   int g(gamma(r) - z, t - r) phi_i(z) dz / (2 alpha_i P_{t-r} phi(gamma(r)))
/// on a uniform grid of r_grid points, refined by 30 golden-section steps in
/// the cells around the first maximal grid point.
[[nodiscard]] double harnack_constant(const StarGraph& graph, const GraphFunction& phi,
                                      const GraphPoint& x, const GraphPoint& y, double t,
                                      double s, const QuadratureSpec& spec = {},
                                      std::size_t r_grid = 101);

/// max_i |phi_i|_1 / (2 alpha_i) * exp((r0 + R)^2 / (4 eps)) / (2 alpha_j eta lambda),
/// the uniform bound for x, y in B_R and s > eps. Throws NoWitnessError.
[[nodiscard]] double harnack_constant_bound(const StarGraph& graph, const GraphFunction& phi,
                                            double radius, double eps);

/// (s/t)^(1/2) exp(-(1/4 + C) d^2/(t-s) - C (t-s)/(s t) rho^2 - 2 C d/(t-s) rho log(s/t))
[[nodiscard]] double harnack_rhs(double d, double rho_value, double C, double t, double s);

struct HarnackReport {
  GraphPoint x;
  GraphPoint y;
  double t = 0.0;
  double s = 0.0;
  double distance = 0.0;
  double ratio = 0.0;  // u(x,t) / u(y,s)
  double rho = 0.0;
  double C = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // ratio - rhs
  bool refined = false;
};

[[nodiscard]] HarnackReport harnack_report(const StarGraph& graph, const GraphFunction& phi,
                                           const GraphPoint& x, const GraphPoint& y, double t,
                                           double s, const QuadratureSpec& spec = {},
                                           std::size_t r_grid = 101);

}  // namespace stargraph
