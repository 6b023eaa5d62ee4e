#include "stargraph/kernel.hpp"

#include <cmath>
#include <numbers>

#include "stargraph/errors.hpp"

namespace stargraph {

namespace {

void check_time(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("time must be positive and finite");
}

KernelValue scaled_sum(const KernelValue& a, const KernelValue& b, double cb) {
  return {a.value + cb * b.value, a.d_x + cb * b.d_x, a.d_xx + cb * b.d_xx, a.d_t + cb * b.d_t};
}

}  // namespace

KernelValue gauss(double z, double t) {
  check_time(t);
  const double exponent = -z * z / (4.0 * t);
  if (exponent < kUnderflowExponent) return {};
  const double value = std::exp(exponent) / std::sqrt(4.0 * std::numbers::pi * t);
  const double curvature = (z * z / (4.0 * t * t) - 1.0 / (2.0 * t)) * value;
  return {value, -z / (2.0 * t) * value, curvature, curvature};
}

KernelValue kernel(const StarGraph& graph, const GraphPoint& x, const GraphPoint& y, double t) {
  check_time(t);
  graph.check_point(x);
  graph.check_point(y);
  // d/dx of g(x + y) is g'(x + y); of g(x - y) it is g'(x - y).
  const KernelValue reflected = gauss(x.coord + y.coord, t);
  if (x.edge != y.edge) {
    const double c = 2.0 * graph.weight(y.edge);
    return {c * reflected.value, c * reflected.d_x, c * reflected.d_xx, c * reflected.d_t};
  }
  const KernelValue direct = gauss(x.coord - y.coord, t);
  return scaled_sum(direct, reflected, 2.0 * graph.weight(x.edge) - 1.0);
}

double tail_radius(double t, double eps) {
  check_time(t);
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("tail eps must lie in (0,1)");
  return 2.0 * std::sqrt(t * std::log(1.0 / eps));
}

double kernel_mass(const StarGraph& graph, const GraphPoint& x, double t,
                   const QuadratureSpec& spec) {
  spec.validate();
  graph.check_point(x);
  const double r = tail_radius(t, spec.tail_eps);
  const double s = std::sqrt(t);
  double mass = 0.0;
  for (std::size_t j = 0; j < graph.edge_count(); ++j) {
    const bool same = j == x.edge;
    const double upper = same ? x.coord + r : r;
    std::vector<double> breaks = {0.0, upper};
    for (double k : {1.0, 2.0, 4.0}) {
      if (k * s < upper) breaks.push_back(k * s);
      if (same) {
        breaks.push_back(std::max(0.0, x.coord - k * s));
        breaks.push_back(x.coord + k * s < upper ? x.coord + k * s : upper);
      }
    }
    if (same) breaks.push_back(x.coord);
    auto integrand = [&](double y) {
      return Values<1>{kernel(graph, x, GraphPoint{j, y}, t).value};
    };
    mass += integrate<1>(integrand, std::move(breaks), spec).integral[0];
  }
  return mass;
}

}  // namespace stargraph
