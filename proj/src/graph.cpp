#include "stargraph/graph.hpp"

#include <cmath>
#include <string>

#include "stargraph/errors.hpp"

namespace stargraph {

StarGraph::StarGraph(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.size() < 2) {
    throw WeightError("star graph needs at least 2 edges, got " +
                      std::to_string(weights_.size()));
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    const double a = weights_[i];
    if (!std::isfinite(a) || a <= 0.0) {
      throw WeightError("weight " + std::to_string(i + 1) + " must be positive");
    }
    sum += a;
  }
  if (std::abs(sum - 1.0) > kWeightSumTolerance) {
    throw WeightError("weights must sum to 1 (sum - 1 = " + std::to_string(sum - 1.0) + ")");
  }
}

void StarGraph::check_point(const GraphPoint& p) const {
  if (p.edge >= weights_.size()) {
    throw DomainError("edge index " + std::to_string(p.edge) + " out of range for " +
                      std::to_string(weights_.size()) + " edges");
  }
  if (!std::isfinite(p.coord) || p.coord < 0.0) {
    throw DomainError("edge coordinate must be finite and nonnegative");
  }
}

double distance(const GraphPoint& p, const GraphPoint& q) noexcept {
  if (p.edge == q.edge) return std::abs(p.coord - q.coord);
  return p.coord + q.coord;
}

bool same_point(const GraphPoint& p, const GraphPoint& q) noexcept {
  return distance(p, q) == 0.0;
}

bool in_ball(const GraphPoint& p, double radius) {
  if (!(radius > 0.0)) throw DomainError("ball radius must be positive");
  return p.coord <= radius;
}

double HarmonicFunction::operator()(const GraphPoint& p) const {
  return slopes_.at(p.edge) * p.coord + value_at_vertex_;
}

bool HarmonicFunction::is_bounded() const noexcept {
  for (double a : slopes_) {
    if (a != 0.0) return false;
  }
  return true;
}

HarmonicFunction make_harmonic(const StarGraph& graph, std::vector<double> slopes,
                               double value_at_vertex) {
  if (slopes.size() != graph.edge_count()) {
    throw DomainError("expected " + std::to_string(graph.edge_count()) + " slopes, got " +
                      std::to_string(slopes.size()));
  }
  double flux = 0.0;
  for (std::size_t i = 0; i < slopes.size(); ++i) {
    if (!std::isfinite(slopes[i])) throw DomainError("slopes must be finite");
    flux += graph.weight(i) * slopes[i];
  }
  if (std::abs(flux) > kWeightSumTolerance) {
    throw KirchhoffError("slopes violate the Kirchhoff balance: sum(alpha*a) = " +
                         std::to_string(flux));
  }
  return HarmonicFunction(std::move(slopes), value_at_vertex);
}

}  // namespace stargraph
