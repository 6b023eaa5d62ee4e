#include "stargraph/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "edge_quadrature.hpp"
#include "stargraph/errors.hpp"
#include "stargraph/kernel.hpp"

namespace stargraph {

namespace {

void check_time(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("time must be positive and finite");
}

// sum over atoms on `edge` of w F(a) + sum over densities on `edge` of
// int F(y) phi(y) dy, with F built from Gaussians centred at +-x_coord.
double edge_moment(const GraphFunction& phi, std::size_t edge, double x_coord, double t,
                   const QuadratureSpec& spec, const std::function<double(double)>& weight) {
  double total = 0.0;
  for (const Atom& a : phi.atoms()) {
    if (a.edge == edge) total += a.weight * weight(a.location);
  }
  for (const EdgeDensity& d : phi.densities()) {
    if (d.edge != edge) continue;
    const auto part = [&](double y) { return Values<1>{weight(y)}; };
    total += detail::integrate_density<1>(d.form, x_coord, true, t, spec, part).integral[0];
  }
  return total;
}

double curvature_with_u(const StarGraph& graph, const GraphFunction& phi, const GraphPoint& x,
                        double t, const QuadratureSpec& spec, double u, bool literal) {
  if (!(u > 0.0)) throw DomainError("curvature term needs P_t phi(x) > 0");
  const std::size_t i = x.edge;
  const double xc = x.coord;
  const double moment = edge_moment(phi, i, xc, t, spec, [&](double y) {
    const double m = literal ? std::min(xc, y) : y;
    return m * m * h_factor(graph, i, xc, y, t);
  });
  return moment / (t * t * u);
}

double direct_gauss_moment(const GraphFunction& phi, std::size_t edge, double x_coord, double t,
                           const QuadratureSpec& spec) {
  return edge_moment(phi, edge, x_coord, t, spec,
                     [&](double y) { return gauss(x_coord - y, t).value; });
}

LiYauReport liyau_once(const StarGraph& graph, const GraphFunction& phi, const GraphPoint& x,
                       double t, const QuadratureSpec& spec) {
  LiYauReport r;
  r.point = x;
  r.t = t;
  const SemigroupValue v = apply(graph, phi, x, t, spec);
  r.u = v.u;
  r.u_x = v.u_x;
  r.u_xx = v.u_xx;
  r.u_t = v.u_t;
  r.lhs = log_second_derivative(v);
  r.I_term = curvature_with_u(graph, phi, x, t, spec, v.u, false);
  r.I_literal = curvature_with_u(graph, phi, x, t, spec, v.u, true);
  const double alpha = graph.weight(x.edge);
  r.rhs = -1.0 / (2.0 * t) - (1.0 - 2.0 * alpha) * r.I_term;
  r.margin = r.lhs - r.rhs;

  const double x2_t2 = x.coord * x.coord / (t * t);
  const double denom = 2.0 * alpha * v.u;
  r.bound_x = x2_t2 * direct_gauss_moment(phi, x.edge, x.coord, t, spec) / denom;
  r.bound_l1 = x2_t2 * phi.l1_norm(x.edge) / std::sqrt(4.0 * std::numbers::pi * t) / denom;
  return r;
}

}  // namespace

double h_factor(const StarGraph& graph, std::size_t edge, double x, double y, double t) {
  check_time(t);
  if (!(x >= 0.0) || !(y >= 0.0)) throw DomainError("h_factor needs x, y >= 0");
  const double c = 2.0 * graph.weight(edge) - 1.0;
  return gauss(x + y, t).value / (1.0 + c * std::exp(-x * y / t));
}

double curvature_term(const StarGraph& graph, const GraphFunction& phi, const GraphPoint& x,
                      double t, const QuadratureSpec& spec) {
  const double u = apply(graph, phi, x, t, spec).u;
  return curvature_with_u(graph, phi, x, t, spec, u, false);
}

double curvature_term_literal(const StarGraph& graph, const GraphFunction& phi,
                              const GraphPoint& x, double t, const QuadratureSpec& spec) {
  const double u = apply(graph, phi, x, t, spec).u;
  return curvature_with_u(graph, phi, x, t, spec, u, true);
}

LiYauReport liyau_report(const StarGraph& graph, const GraphFunction& phi, const GraphPoint& x,
                         double t, const QuadratureSpec& spec) {
  LiYauReport r = liyau_once(graph, phi, x, t, spec);
  if (r.margin < -kMarginTolerance) {
    r = liyau_once(graph, phi, x, t, spec.tightened(100.0));
    r.refined = true;
  }
  return r;
}

namespace {

bool shares_edge(const GraphPoint& x, const GraphPoint& y) {
  return x.edge == y.edge || x.is_vertex() || y.is_vertex();
}

void check_times(double t, double s) {
  if (!(s > 0.0) || !(s < t) || !std::isfinite(t)) {
    throw DomainError("Harnack comparison needs 0 < s < t");
  }
}

}  // namespace

double rho(const GraphPoint& x, const GraphPoint& y, double t, double s) {
  check_times(t, s);
  const double shift = distance(x, y) * t / (t - s);
  return shares_edge(x, y) ? x.coord + shift : x.coord - shift;
}

GraphPoint harnack_path(const GraphPoint& x, const GraphPoint& y, double t, double s, double r) {
  check_times(t, s);
  const double span = t - s;
  r = std::clamp(r, 0.0, span);
  if (shares_edge(x, y)) {
    const std::size_t edge = x.is_vertex() ? y.edge : x.edge;
    return {edge, std::max(0.0, x.coord + r * (y.coord - x.coord) / span)};
  }
  const double d = x.coord + y.coord;
  const double travelled = d * r / span;
  if (travelled <= x.coord) return {x.edge, std::max(0.0, x.coord - travelled)};
  return {y.edge, std::max(0.0, travelled - x.coord)};
}

namespace {

double path_ratio(const StarGraph& graph, const GraphFunction& phi, const GraphPoint& x,
                  const GraphPoint& y, double t, double s, const QuadratureSpec& spec,
                  double r) {
  const GraphPoint p = harnack_path(x, y, t, s, r);
  const double tau = t - std::clamp(r, 0.0, t - s);
  const double u = apply(graph, phi, p, tau, spec).u;
  if (!(u > 0.0)) throw DomainError("P_t phi vanishes along the Harnack path");
  double best = 0.0;
  for (std::size_t i = 0; i < graph.edge_count(); ++i) {
    const double num = direct_gauss_moment(phi, i, p.coord, tau, spec);
    best = std::max(best, num / (2.0 * graph.weight(i) * u));
  }
  return best;
}

}  // namespace

double harnack_constant(const StarGraph& graph, const GraphFunction& phi, const GraphPoint& x,
                        const GraphPoint& y, double t, double s, const QuadratureSpec& spec,
                        std::size_t r_grid) {
  check_times(t, s);
  spec.validate();
  graph.check_point(x);
  graph.check_point(y);
  phi.check_compatible(graph);
  if (r_grid < 2) throw DomainError("Harnack r-grid needs at least 2 points");
  if (!(phi.total_mass() > 0.0)) throw DomainError("Harnack constant needs nonzero data");

  const double span = t - s;
  const double step = span / static_cast<double>(r_grid - 1);
  auto f = [&](double r) { return path_ratio(graph, phi, x, y, t, s, spec, r); };

  std::size_t best_k = 0;
  double best = -1.0;
  for (std::size_t k = 0; k < r_grid; ++k) {
    const double v = f(static_cast<double>(k) * step);
    if (v > best) {
      best = v;
      best_k = k;
    }
  }

  double a = best_k == 0 ? 0.0 : static_cast<double>(best_k - 1) * step;
  double b = best_k + 1 >= r_grid ? span : static_cast<double>(best_k + 1) * step;
  constexpr double inv_phi = 0.6180339887498948482;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  best = std::max({best, fc, fd});
  for (int iter = 0; iter < 30; ++iter) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
      best = std::max(best, fc);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
      best = std::max(best, fd);
    }
  }
  return best;
}

double harnack_constant_bound(const StarGraph& graph, const GraphFunction& phi, double radius,
                              double eps) {
  if (!(radius > 0.0) || !(eps > 0.0)) throw DomainError("bound needs R > 0 and eps > 0");
  phi.check_compatible(graph);
  const PositivityWitness w = phi.positivity_witness();
  double numerator = 0.0;
  for (std::size_t i = 0; i < graph.edge_count(); ++i) {
    numerator = std::max(numerator, phi.l1_norm(i) / (2.0 * graph.weight(i)));
  }
  const double reach = w.r0 + radius;
  return numerator * std::exp(reach * reach / (4.0 * eps)) /
         (2.0 * graph.weight(w.edge) * w.eta * w.lambda);
}

double harnack_rhs(double d, double rho_value, double C, double t, double s) {
  const double span = t - s;
  const double exponent = -(0.25 + C) * d * d / span - C * span / (s * t) * rho_value * rho_value -
                          2.0 * C * d / span * rho_value * std::log(s / t);
  return std::sqrt(s / t) * std::exp(exponent);
}

namespace {

HarnackReport harnack_once(const StarGraph& graph, const GraphFunction& phi, const GraphPoint& x,
                           const GraphPoint& y, double t, double s, const QuadratureSpec& spec,
                           std::size_t r_grid) {
  HarnackReport r;
  r.x = x;
  r.y = y;
  r.t = t;
  r.s = s;
  r.distance = distance(x, y);
  const double ux = apply(graph, phi, x, t, spec).u;
  const double uy = apply(graph, phi, y, s, spec).u;
  if (!(uy > 0.0)) throw DomainError("u(y,s) vanishes; Harnack ratio undefined");
  r.ratio = ux / uy;
  r.rho = rho(x, y, t, s);
  r.C = harnack_constant(graph, phi, x, y, t, s, spec, r_grid);
  r.rhs = harnack_rhs(r.distance, r.rho, r.C, t, s);
  r.margin = r.ratio - r.rhs;
  return r;
}

}  // namespace

HarnackReport harnack_report(const StarGraph& graph, const GraphFunction& phi, const GraphPoint& x,
                             const GraphPoint& y, double t, double s, const QuadratureSpec& spec,
                             std::size_t r_grid) {
  HarnackReport r = harnack_once(graph, phi, x, y, t, s, spec, r_grid);
  if (r.margin < -kMarginTolerance) {
    r = harnack_once(graph, phi, x, y, t, s, spec.tightened(100.0), r_grid);
    r.refined = true;
  }
  return r;
}

}  // namespace stargraph
