#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "stargraph/graph.hpp"
#include "stargraph/initial_data.hpp"

namespace stargraph {

// ---------------------------------------------------------------------------
// Closed forms for three edges with alpha = 1/3.
//   Example 1: a unit atom at y = 1 on every edge.
//   Example 2: a unit atom at y = 1 on edge 2 (0-based) only.
// ---------------------------------------------------------------------------

[[nodiscard]] double example1_u(double x, double t);
[[nodiscard]] double example1_lhs(double x, double t);
/// Throws DomainError for t <= 0 or edge > 2.
[[nodiscard]] double example2_u(std::size_t edge, double x, double t);
[[nodiscard]] double example2_lhs(std::size_t edge, double x, double t);

[[nodiscard]] StarGraph example_graph();
[[nodiscard]] GraphFunction example1_data();
[[nodiscard]] GraphFunction example2_data();

// ---------------------------------------------------------------------------
// Crank-Nicolson solver on the star truncated to [0, L] per edge.
// ---------------------------------------------------------------------------

struct FDConfig {
  double length = 20.0;         // L, Dirichlet zero at the far end of each edge
  std::size_t nx = 1000;        // interior nodes per edge
  std::size_t nt = 1000;        // time steps
  double final_time = 1.0;      // T
  std::size_t snapshots = 1;    // evenly spaced saved levels, the last one at T

  /// Throws ConfigError on L <= 0, nx < 16, nt < 8, T <= 0 or snapshots == 0.
  void validate() const;
  [[nodiscard]] double dx() const { return length / static_cast<double>(nx + 1); }
  [[nodiscard]] double dt() const { return final_time / static_cast<double>(nt); }
};

/// One saved time level: the shared vertex value and nx interior values per edge.
struct FDSnapshot {
  double time = 0.0;
  double vertex = 0.0;
  std::vector<std::vector<double>> edges;
};

class FDSolution {
 public:
  FDSolution(std::vector<double> weights, FDConfig config, std::vector<FDSnapshot> snapshots)
      : weights_(std::move(weights)), config_(config), snapshots_(std::move(snapshots)) {}

  [[nodiscard]] const FDConfig& config() const noexcept { return config_; }
  [[nodiscard]] const std::vector<FDSnapshot>& snapshots() const noexcept { return snapshots_; }
  [[nodiscard]] const FDSnapshot& final() const { return snapshots_.back(); }

  /// Grid value at node k of an edge (k = 0 is O, k = nx + 1 the Dirichlet end).
  [[nodiscard]] double node(const FDSnapshot& snap, std::size_t edge, std::size_t k) const;
  /// Linear interpolation between nodes; zero beyond L.
  [[nodiscard]] double eval(const FDSnapshot& snap, const GraphPoint& p) const;
  /// Trapezoid mass with edge j weighted by alpha_j, the quantity the flow conserves.
  [[nodiscard]] double mass(const FDSnapshot& snap) const;
  /// sum_j alpha_j (-3 u_O + 4 u_j1 - u_j2) / (2 dx)
  [[nodiscard]] double kirchhoff_residual(const FDSnapshot& snap) const;

 private:
  std::vector<double> weights_;
  FDConfig config_;
  std::vector<FDSnapshot> snapshots_;
};

/// Atoms become discrete hats of matching mass at the nearest interior node.
/// Throws ConfigError if an atom lies beyond L - 12 sqrt(2T), and
/// SingularSystemError if the vertex elimination breaks down.
[[nodiscard]] FDSolution fd_solve(const StarGraph& graph, const GraphFunction& phi,
                                  const FDConfig& config);

// ---------------------------------------------------------------------------
// Random walk with +-h steps of duration h^2/2; at O it enters edge j with
// probability alpha_j.
// ---------------------------------------------------------------------------

struct WalkConfig {
  double step = 0.01;
  std::uint64_t n_paths = 10000;
  std::uint64_t seed = 1;
};

struct WalkResult {
  std::vector<GraphPoint> endpoints;  // endpoint at O keeps the last edge visited
  double simulated_time = 0.0;        // steps * h^2 / 2
  std::uint64_t steps = 0;
};

/// Paths are independent with per-path generators seeded by seed + path index,
/// so the result does not depend on the thread count. Throws ConfigError when
/// h > 0.05 sqrt(t), n_paths == 0, or start.coord is not a multiple of h.
[[nodiscard]] WalkResult walk_simulate(const StarGraph& graph, const GraphPoint& start, double t,
                                       const WalkConfig& config, unsigned threads = 0);

struct WalkBin {
  std::size_t edge = 0;
  double lo = 0.0;
  double hi = 0.0;
  std::uint64_t count = 0;
  double expected = 0.0;  // exact kernel probability of [lo, hi] on the edge
  double z = 0.0;
};

struct WalkEdgeStat {
  double frequency = 0.0;
  double expected = 0.0;
  double sigma = 0.0;  // sqrt(p (1 - p) / n)
};

struct WalkReport {
  WalkResult walk;
  std::vector<WalkBin> bins;
  std::vector<WalkEdgeStat> edges;
  double max_abs_z = 0.0;
  double max_edge_sigmas = 0.0;  // max |frequency - expected| / sigma
};

/// Bins each edge into `bins` cells aligned with the walk lattice over
/// [0, start + 6 sqrt(2t)] and compares counts with exact kernel integrals.
[[nodiscard]] WalkReport walk_compare(const StarGraph& graph, const GraphPoint& start, double t,
                                      const WalkConfig& config, std::size_t bins,
                                      unsigned threads = 0);

/// Exact probability that the diffusion from x sits in [lo, hi] on `edge`
/// at time t (closed form in erf).
[[nodiscard]] double kernel_interval_probability(const StarGraph& graph, const GraphPoint& x,
                                                 std::size_t edge, double lo, double hi,
                                                 double t);

}  // namespace stargraph
