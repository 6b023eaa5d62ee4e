#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace stargraph {

/// Absolute tolerance on |sum(alpha) - 1| and on the Kirchhoff slope balance.
inline constexpr double kWeightSumTolerance = 1e-12;

/// A point of the star graph: coordinate along a half-line edge. Edges are
/// 0-based. Any point with coord == 0 is the central vertex O, whatever the
/// edge index says.
struct GraphPoint {
  std::size_t edge = 0;
  double coord = 0.0;

  [[nodiscard]] bool is_vertex() const noexcept { return coord == 0.0; }
};

/// N >= 2 half-lines glued at O with Kirchhoff weights alpha_i > 0, sum 1.
/// Immutable once constructed.
class StarGraph {
 public:
  /// Throws WeightError if the weights are not a valid Kirchhoff family.
  explicit StarGraph(std::vector<double> weights);

  [[nodiscard]] std::size_t edge_count() const noexcept { return weights_.size(); }
  [[nodiscard]] double weight(std::size_t edge) const { return weights_.at(edge); }
  [[nodiscard]] std::span<const double> weights() const noexcept { return weights_; }

  /// Throws DomainError when p.edge is out of range or p.coord is negative
  /// or not finite.
  void check_point(const GraphPoint& p) const;

 private:
  std::vector<double> weights_;
};

/// Named constructor mirroring the validation entry point of the C API.
inline StarGraph validate_graph(std::vector<double> weights) {
  return StarGraph(std::move(weights));
}

/// Geodesic distance: |x - y| on a common edge, x + y across edges.
[[nodiscard]] double distance(const GraphPoint& p, const GraphPoint& q) noexcept;

[[nodiscard]] bool same_point(const GraphPoint& p, const GraphPoint& q) noexcept;

/// Closed ball B_R around O.
[[nodiscard]] bool in_ball(const GraphPoint& p, double radius);

/// Harmonic function on the star: affine a_i * x + b on edge i, with the
/// weighted flux balance sum(alpha_i * a_i) = 0 at O.
class HarmonicFunction {
 public:
  HarmonicFunction(std::vector<double> slopes, double value_at_vertex)
      : slopes_(std::move(slopes)), value_at_vertex_(value_at_vertex) {}

  [[nodiscard]] double operator()(const GraphPoint& p) const;
  [[nodiscard]] std::span<const double> slopes() const noexcept { return slopes_; }
  [[nodiscard]] double value_at_vertex() const noexcept { return value_at_vertex_; }

  /// Bounded on the (unbounded) graph iff every slope vanishes.
  [[nodiscard]] bool is_bounded() const noexcept;

 private:
  std::vector<double> slopes_;
  double value_at_vertex_;
};

/// Throws KirchhoffError if |sum(alpha_i a_i)| > kWeightSumTolerance, and
/// DomainError if the slope count does not match the edge count.
[[nodiscard]] HarmonicFunction make_harmonic(const StarGraph& graph,
                                             std::vector<double> slopes,
                                             double value_at_vertex);

}  // namespace stargraph
