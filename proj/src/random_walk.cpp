#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

#include "stargraph/errors.hpp"
#include "stargraph/oracles.hpp"

namespace stargraph {

namespace {

struct LatticeState {
  std::size_t edge;
  std::int64_t m;  // coordinate = m * h
};

LatticeState walk_one(const std::vector<double>& cumulative, LatticeState s, std::uint64_t steps,
                      std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uint64_t bits = 0;
  int bits_left = 0;
  for (std::uint64_t n = 0; n < steps; ++n) {
    if (s.m == 0) {
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
      s.edge = std::min<std::size_t>(static_cast<std::size_t>(it - cumulative.begin()),
                                     cumulative.size() - 1);
      s.m = 1;
      continue;
    }
    if (bits_left == 0) {
      bits = rng();
      bits_left = 64;
    }
    s.m += (bits & 1U) ? 1 : -1;
    bits >>= 1;
    --bits_left;
  }
  return s;
}

double erf_interval(double lo, double hi, double centre, double t) {
  const double s = 2.0 * std::sqrt(t);
  return 0.5 * (std::erf((hi - centre) / s) - std::erf((lo - centre) / s));
}

}  // namespace

WalkResult walk_simulate(const StarGraph& graph, const GraphPoint& start, double t,
                         const WalkConfig& config, unsigned threads) {
  graph.check_point(start);
  if (!(t > 0.0)) throw DomainError("time must be positive");
  const double h = config.step;
  if (!(h > 0.0) || h > 0.05 * std::sqrt(t) * (1.0 + 1e-12)) {
    throw ConfigError("walk step must satisfy 0 < h <= 0.05 sqrt(t)");
  }
  if (config.n_paths == 0) throw ConfigError("walk needs at least one path");
  const double m0_real = start.coord / h;
  const double m0_round = std::round(m0_real);
  if (std::abs(m0_real - m0_round) > 1e-9 * std::max(1.0, m0_real)) {
    throw ConfigError("start coordinate must be a multiple of the walk step");
  }

  WalkResult result;
  result.steps = static_cast<std::uint64_t>(std::ceil(t / (0.5 * h * h) - 1e-9));
  result.simulated_time = static_cast<double>(result.steps) * 0.5 * h * h;
  result.endpoints.resize(config.n_paths);

  std::vector<double> cumulative;
  double acc = 0.0;
  for (double a : graph.weights()) cumulative.push_back(acc += a);

  const LatticeState init{start.edge, static_cast<std::int64_t>(m0_round)};
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, config.n_paths));
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        for (std::uint64_t p = w; p < config.n_paths; p += threads) {
          const LatticeState end = walk_one(cumulative, init, result.steps, config.seed + p);
          result.endpoints[p] = GraphPoint{end.edge, static_cast<double>(end.m) * h};
        }
      });
    }
  }
  return result;
}

double kernel_interval_probability(const StarGraph& graph, const GraphPoint& x, std::size_t edge,
                                   double lo, double hi, double t) {
  graph.check_point(x);
  if (!(t > 0.0)) throw DomainError("time must be positive");
  const double reflected = erf_interval(lo, hi, -x.coord, t);
  if (edge != x.edge) return 2.0 * graph.weight(edge) * reflected;
  return erf_interval(lo, hi, x.coord, t) + (2.0 * graph.weight(edge) - 1.0) * reflected;
}

WalkReport walk_compare(const StarGraph& graph, const GraphPoint& start, double t,
                        const WalkConfig& config, std::size_t bins, unsigned threads) {
  if (bins == 0) throw ConfigError("walk comparison needs at least one bin");
  WalkReport report;
  report.walk = walk_simulate(graph, start, t, config, threads);
  const double h = config.step;
  const double tau = report.walk.simulated_time;
  const auto n = static_cast<double>(config.n_paths);
  const std::size_t n_edges = graph.edge_count();

  // Reachable lattice sites have parity (m0 + steps) mod 2 and spacing 2h.
  const auto m0 = static_cast<std::int64_t>(std::llround(start.coord / h));
  const std::int64_t parity = (m0 + static_cast<std::int64_t>(report.walk.steps % 2)) % 2;
  const double reach = start.coord + 6.0 * std::sqrt(2.0 * t);
  const auto per_bin = static_cast<std::int64_t>(
      std::max(1.0, std::ceil(reach / (2.0 * h * static_cast<double>(bins)))));

  std::vector<std::uint64_t> counts(n_edges * bins, 0);
  std::vector<std::uint64_t> edge_counts(n_edges, 0);
  for (const GraphPoint& p : report.walk.endpoints) {
    ++edge_counts[p.edge];
    const std::int64_t m = std::llround(p.coord / h);
    const std::int64_t b = (m - parity + 1) / (2 * per_bin);
    if (b >= 0 && b < static_cast<std::int64_t>(bins)) {
      ++counts[p.edge * bins + static_cast<std::size_t>(b)];
    }
  }

  for (std::size_t j = 0; j < n_edges; ++j) {
    for (std::size_t b = 0; b < bins; ++b) {
      const auto base = static_cast<double>(parity - 1 + 2 * per_bin * static_cast<std::int64_t>(b));
      WalkBin bin;
      bin.edge = j;
      bin.lo = std::max(0.0, base * h);
      bin.hi = (base + 2.0 * static_cast<double>(per_bin)) * h;
      bin.count = counts[j * bins + b];
      bin.expected = kernel_interval_probability(graph, start, j, bin.lo, bin.hi, tau);
      const double var = n * bin.expected * (1.0 - bin.expected);
      const double diff = static_cast<double>(bin.count) - n * bin.expected;
      bin.z = var > 0.0 ? diff / std::sqrt(var) : (diff == 0.0 ? 0.0 : INFINITY);
      report.max_abs_z = std::max(report.max_abs_z, std::abs(bin.z));
      report.bins.push_back(bin);
    }
    WalkEdgeStat stat;
    stat.frequency = static_cast<double>(edge_counts[j]) / n;
    stat.expected = kernel_interval_probability(graph, start, j, 0.0, INFINITY, tau);
    stat.sigma = std::sqrt(stat.expected * (1.0 - stat.expected) / n);
    if (stat.sigma > 0.0) {
      report.max_edge_sigmas =
          std::max(report.max_edge_sigmas, std::abs(stat.frequency - stat.expected) / stat.sigma);
    }
    report.edges.push_back(stat);
  }
  return report;
}

}  // namespace stargraph
