#include <cmath>
#include <numbers>

#include "stargraph/errors.hpp"
#include "stargraph/oracles.hpp"

namespace stargraph {

namespace {

void check_time(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("time must be positive and finite");
}

// Plain evaluation, independent of the kernel module.
double heat(double z, double t) {
  return std::exp(-z * z / (4.0 * t)) / std::sqrt(4.0 * std::numbers::pi * t);
}

}  // namespace

double example1_u(double x, double t) {
  check_time(t);
  return heat(x + 1.0, t) + heat(x - 1.0, t);
}

double example1_lhs(double x, double t) {
  check_time(t);
  const double e = std::exp(-x / t);
  return -1.0 / (2.0 * t) + e / ((1.0 + e) * (1.0 + e)) / (t * t);
}

double example2_u(std::size_t edge, double x, double t) {
  check_time(t);
  if (edge > 2) throw DomainError("examples live on three edges");
  if (edge < 2) return 2.0 / 3.0 * heat(x + 1.0, t);
  return heat(x - 1.0, t) - heat(x + 1.0, t) / 3.0;
}

double example2_lhs(std::size_t edge, double x, double t) {
  check_time(t);
  if (edge > 2) throw DomainError("examples live on three edges");
  if (edge < 2) return -1.0 / (2.0 * t);
  const double e = std::exp(-x / t) / 3.0;
  return -1.0 / (2.0 * t) - e / ((1.0 - e) * (1.0 - e)) / (t * t);
}

StarGraph example_graph() { return StarGraph({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}); }

GraphFunction example1_data() {
  return GraphFunction({{0, 1.0, 1.0}, {1, 1.0, 1.0}, {2, 1.0, 1.0}}, {});
}

GraphFunction example2_data() { return GraphFunction({{2, 1.0, 1.0}}, {}); }

}  // namespace stargraph
