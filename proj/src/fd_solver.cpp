#include <algorithm>
#include <cmath>
#include <string>

#include "stargraph/errors.hpp"
#include "stargraph/oracles.hpp"

namespace stargraph {

void FDConfig::validate() const {
  if (!(length > 0.0) || !std::isfinite(length)) throw ConfigError("FD length must be positive");
  if (nx < 16) throw ConfigError("FD needs nx >= 16");
  if (nt < 8) throw ConfigError("FD needs nt >= 8");
  if (!(final_time > 0.0) || !std::isfinite(final_time)) {
    throw ConfigError("FD final time must be positive");
  }
  if (snapshots == 0) throw ConfigError("FD needs at least one snapshot");
}

double FDSolution::node(const FDSnapshot& snap, std::size_t edge, std::size_t k) const {
  if (k == 0) return snap.vertex;
  if (k > config_.nx) return 0.0;
  return snap.edges.at(edge)[k - 1];
}

double FDSolution::eval(const FDSnapshot& snap, const GraphPoint& p) const {
  const double s = p.coord / config_.dx();
  if (s >= static_cast<double>(config_.nx + 1)) return 0.0;
  const auto k = static_cast<std::size_t>(std::floor(s));
  const double w = s - static_cast<double>(k);
  return (1.0 - w) * node(snap, p.edge, k) + w * node(snap, p.edge, k + 1);
}

double FDSolution::mass(const FDSnapshot& snap) const {
  double m = 0.0;
  for (std::size_t j = 0; j < snap.edges.size(); ++j) {
    double edge = 0.5 * snap.vertex;
    for (double v : snap.edges[j]) edge += v;
    m += weights_[j] * edge;
  }
  return m * config_.dx();
}

double FDSolution::kirchhoff_residual(const FDSnapshot& snap) const {
  double r = 0.0;
  for (std::size_t j = 0; j < weights_.size(); ++j) {
    r += weights_[j] * (-3.0 * snap.vertex + 4.0 * snap.edges[j][0] - snap.edges[j][1]);
  }
  return r / (2.0 * config_.dx());
}

namespace {

// LU factors of the constant tridiagonal matrix (1 + 2r) I - r (shift + shift^T).
struct Tridiagonal {
  std::vector<double> c_prime;
  std::vector<double> inv_denom;
  double off = 0.0;

  Tridiagonal(std::size_t n, double diag, double off_diag) : off(off_diag) {
    c_prime.resize(n);
    inv_denom.resize(n);
    double prev = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double denom = diag - off * prev;
      if (std::abs(denom) < 1e-300) throw SingularSystemError("tridiagonal pivot vanished");
      inv_denom[k] = 1.0 / denom;
      c_prime[k] = off * inv_denom[k];
      prev = c_prime[k];
    }
  }

  // Thomas sweep in place.
  void solve(std::vector<double>& d) const {
    const std::size_t n = d.size();
    d[0] *= inv_denom[0];
    for (std::size_t k = 1; k < n; ++k) d[k] = (d[k] - off * d[k - 1]) * inv_denom[k];
    for (std::size_t k = n - 1; k-- > 0;) d[k] -= c_prime[k] * d[k + 1];
  }
};

}  // namespace

FDSolution fd_solve(const StarGraph& graph, const GraphFunction& phi, const FDConfig& config) {
  config.validate();
  phi.check_compatible(graph);
  const std::size_t n_edges = graph.edge_count();
  const std::size_t nx = config.nx;
  const double dx = config.dx();
  const double dt = config.dt();
  const double r = dt / (2.0 * dx * dx);
  const double atom_limit = config.length - 12.0 * std::sqrt(2.0 * config.final_time);
  for (const Atom& a : phi.atoms()) {
    if (a.location > atom_limit) {
      throw ConfigError("atom at " + std::to_string(a.location) +
                        " lies beyond L - 12 sqrt(2T) = " + std::to_string(atom_limit));
    }
  }

  // Interior values u[j][k-1] for nodes k = 1..nx.
  std::vector<std::vector<double>> u(n_edges, std::vector<double>(nx, 0.0));
  for (std::size_t j = 0; j < n_edges; ++j) {
    for (std::size_t k = 1; k <= nx; ++k) {
      u[j][k - 1] = phi.eval_density(GraphPoint{j, static_cast<double>(k) * dx});
    }
  }
  for (const Atom& a : phi.atoms()) {
    const auto k = std::clamp<std::size_t>(
        static_cast<std::size_t>(std::llround(a.location / dx)), 1, nx);
    u[a.edge][k - 1] += a.weight / dx;
  }
  auto vertex_from = [&](const std::vector<std::vector<double>>& v) {
    double s = 0.0;
    for (std::size_t j = 0; j < n_edges; ++j) s += graph.weight(j) * (4.0 * v[j][0] - v[j][1]);
    return s / 3.0;
  };
  double vertex = vertex_from(u);

  const Tridiagonal lhs(nx, 1.0 + 2.0 * r, -r);
  // Response of every edge to a unit vertex value entering row 1.
  std::vector<double> q(nx, 0.0);
  q[0] = r;
  lhs.solve(q);
  const double vertex_denom = 3.0 - 4.0 * q[0] + q[1];
  if (std::abs(vertex_denom) < 1e-14) {
    throw SingularSystemError("vertex elimination produced a vanishing pivot");
  }

  std::vector<FDSnapshot> snaps;
  const std::size_t every = std::max<std::size_t>(1, config.nt / config.snapshots);
  auto save = [&](std::size_t step) {
    snaps.push_back({static_cast<double>(step) * dt, vertex, u});
  };

  std::vector<double> rhs(nx);
  for (std::size_t step = 1; step <= config.nt; ++step) {
    double flux = 0.0;
    for (std::size_t j = 0; j < n_edges; ++j) {
      const auto& uj = u[j];
      for (std::size_t k = 0; k < nx; ++k) {
        const double left = k == 0 ? vertex : uj[k - 1];
        const double right = k + 1 == nx ? 0.0 : uj[k + 1];
        rhs[k] = r * left + (1.0 - 2.0 * r) * uj[k] + r * right;
      }
      lhs.solve(rhs);
      u[j].swap(rhs);
      rhs.resize(nx);
      flux += graph.weight(j) * (4.0 * u[j][0] - u[j][1]);
    }
    // u_j = p_j + u_O q with the Kirchhoff row closing the system.
    vertex = flux / vertex_denom;
    for (std::size_t j = 0; j < n_edges; ++j) {
      for (std::size_t k = 0; k < nx; ++k) u[j][k] += vertex * q[k];
    }
    const bool last = step == config.nt;
    if (last || (step % every == 0 && snaps.size() + 1 < config.snapshots)) save(step);
  }
  return FDSolution(std::vector<double>(graph.weights().begin(), graph.weights().end()), config,
                    std::move(snaps));
}

}  // namespace stargraph
