#include "stargraph/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "edge_quadrature.hpp"
#include "stargraph/errors.hpp"

namespace stargraph {

namespace {

void check_time(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("time must be positive and finite");
}

Values<4> as_values(const KernelValue& k) { return {k.value, k.d_x, k.d_xx, k.d_t}; }

// Kernel from x to (edge, y) without per-call validation.
KernelValue kernel_to_edge(const StarGraph& graph, const GraphPoint& x, std::size_t edge,
                           double y, double t) {
  const KernelValue reflected = gauss(x.coord + y, t);
  if (edge != x.edge) {
    const double c = 2.0 * graph.weight(edge);
    return {c * reflected.value, c * reflected.d_x, c * reflected.d_xx, c * reflected.d_t};
  }
  const KernelValue direct = gauss(x.coord - y, t);
  const double c = 2.0 * graph.weight(edge) - 1.0;
  return {direct.value + c * reflected.value, direct.d_x + c * reflected.d_x,
          direct.d_xx + c * reflected.d_xx, direct.d_t + c * reflected.d_t};
}

}  // namespace

SemigroupValue apply(const StarGraph& graph, const GraphFunction& phi, const GraphPoint& x,
                     double t, const QuadratureSpec& spec) {
  spec.validate();
  check_time(t);
  graph.check_point(x);
  phi.check_compatible(graph);

  Values<4> acc{};
  for (const Atom& a : phi.atoms()) {
    const Values<4> k = as_values(kernel_to_edge(graph, x, a.edge, a.location, t));
    for (std::size_t c = 0; c < 4; ++c) acc[c] += a.weight * k[c];
  }
  const double inv_sqrt_t = 1.0 / std::sqrt(t);
  const Values<4> coupling = {0.0, inv_sqrt_t, 1.0 / t, 1.0 / t};
  for (const EdgeDensity& d : phi.densities()) {
    const auto part = [&](double y) { return as_values(kernel_to_edge(graph, x, d.edge, y, t)); };
    const auto r = detail::integrate_density<4>(d.form, x.coord, d.edge == x.edge, t, spec, part,
                                                coupling);
    for (std::size_t c = 0; c < 4; ++c) acc[c] += r.integral[c];
  }
  return {acc[0], acc[1], acc[2], acc[3]};
}

double log_second_derivative(const SemigroupValue& v) {
  if (!(v.u > 0.0)) throw DomainError("log u needs u > 0");
  const double q = v.u_x / v.u;
  return v.u_xx / v.u - q * q;
}

GraphFunction sample_semigroup(const StarGraph& graph, const GraphFunction& phi, double t,
                               double length, double spacing, const QuadratureSpec& spec) {
  if (!(spacing > 0.0) || !(length >= 0.0)) {
    throw DomainError("sampling needs positive spacing and nonnegative length");
  }
  const auto count = static_cast<std::size_t>(std::ceil(length / spacing)) + 1;
  std::vector<EdgeDensity> densities;
  for (std::size_t j = 0; j < graph.edge_count(); ++j) {
    SampledDensity s{spacing, std::vector<double>(count)};
    for (std::size_t k = 0; k < count; ++k) {
      const double u = apply(graph, phi, GraphPoint{j, static_cast<double>(k) * spacing}, t, spec).u;
      // Quadrature noise may dip a hair below zero in the deep tail.
      s.values[k] = std::max(0.0, u);
    }
    densities.push_back({j, std::move(s)});
  }
  return GraphFunction({}, std::move(densities));
}

ComposeReport compose_check(const StarGraph& graph, const GraphFunction& phi, const GraphPoint& x,
                            double t1, double t2, const QuadratureSpec& spec) {
  check_time(t1);
  check_time(t2);
  spec.validate();
  ComposeReport report;
  report.u = apply(graph, phi, x, t1 + t2, spec).u;
  report.spacing = std::min(0.01, std::sqrt(t2) / 100.0);
  const double length = x.coord + tail_radius(t1, spec.tail_eps);
  const GraphFunction inner = sample_semigroup(graph, phi, t2, length, report.spacing, spec);
  const double composed = apply(graph, inner, x, t1, spec).u;
  report.discrepancy = std::abs(report.u - composed);

  double max_curvature = 0.0;
  const double h2 = report.spacing * report.spacing;
  for (const EdgeDensity& d : inner.densities()) {
    const auto& v = std::get<SampledDensity>(d.form).values;
    for (std::size_t k = 1; k + 1 < v.size(); ++k) {
      max_curvature = std::max(max_curvature, std::abs(v[k - 1] - 2.0 * v[k] + v[k + 1]) / h2);
    }
  }
  report.interpolation_bound = h2 / 8.0 * max_curvature;
  return report;
}

InvarianceReport harmonic_invariance(const StarGraph& graph, const HarmonicFunction& w,
                                     const GraphPoint& x, double t, const QuadratureSpec& spec) {
  spec.validate();
  check_time(t);
  graph.check_point(x);
  if (w.slopes().size() != graph.edge_count()) {
    throw DomainError("harmonic function and graph disagree on the edge count");
  }
  const double b = w.value_at_vertex();
  const double r = tail_radius(t, spec.tail_eps);
  const double sqrt_t = std::sqrt(t);
  double scale = std::abs(b);
  for (double a : w.slopes()) scale += std::abs(a) * (x.coord + sqrt_t);

  // int_r^inf g(z) (|a| (offset + z) + |b|) dz
  const double tail_mass = 0.5 * std::erfc(r / (2.0 * sqrt_t));
  const double tail_moment = std::sqrt(t / std::numbers::pi) * std::exp(-r * r / (4.0 * t));
  auto tail = [&](double a, double offset) {
    return (std::abs(a) * offset + std::abs(b)) * tail_mass + std::abs(a) * tail_moment;
  };

  InvarianceReport report;
  for (std::size_t j = 0; j < graph.edge_count(); ++j) {
    const double a = w.slopes()[j];
    const bool same = j == x.edge;
    const double upper = detail::window_upper(x.coord, same, t, spec.tail_eps);
    auto integrand = [&](double y) {
      return Values<1>{kernel_to_edge(graph, x, j, y, t).value * (a * y + b)};
    };
    report.value += integrate<1>(integrand, detail::window_breaks(x.coord, same, t, upper), spec,
                                 Values<1>{scale})
                        .integral[0];
    if (same) {
      report.truncation_bound +=
          tail(a, x.coord) + std::abs(2.0 * graph.weight(j) - 1.0) * tail(a, 0.0);
    } else {
      report.truncation_bound += 2.0 * graph.weight(j) * tail(a, 0.0);
    }
  }
  report.discrepancy = std::abs(report.value - w(x));
  return report;
}

}  // namespace stargraph
