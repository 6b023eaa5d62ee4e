#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "reference_values.hpp"
#include "stargraph/errors.hpp"
#include "stargraph/kernel.hpp"
#include "stargraph/oracles.hpp"
#include "stargraph/semigroup.hpp"

using namespace stargraph;

TEST_CASE("closed-form examples") {
  CHECK(example1_u(1, 1) == doctest::Approx(ref::example1_u_1_1).epsilon(1e-15));
  CHECK(example1_lhs(1, 1) == doctest::Approx(ref::example1_lhs_1_1).epsilon(1e-14));
  CHECK(example1_u(0, 1) == doctest::Approx(2 * gauss(1, 1).value).epsilon(1e-15));
  const double tail = example1_lhs(50, 1) + 0.5;
  CHECK(tail >= 0.0);
  CHECK(tail <= 1e-6);

  CHECK(example2_lhs(2, 1, 1) == doctest::Approx(ref::example2_lhs_e3_1_1).epsilon(1e-14));
  for (double x : {0.0, 0.5, 3.0, 20.0}) {
    for (double t : {0.05, 1.0, 9.0}) {
      CHECK(example2_lhs(0, x, t) == -1 / (2 * t));
      CHECK(example2_lhs(1, x, t) == -1 / (2 * t));
      if (x * x / t < 1000) CHECK(example2_u(2, x, t) > 0.0);
    }
  }
  CHECK_THROWS_AS((void)example1_u(1, 0), DomainError);
  CHECK_THROWS_AS((void)example2_u(3, 1, 1), DomainError);
  CHECK_THROWS_AS((void)example2_lhs(0, 1, -1), DomainError);
}

TEST_CASE("finite-difference configuration") {
  CHECK_THROWS_AS(FDConfig({0, 100, 100, 1, 1}).validate(), ConfigError);
  CHECK_THROWS_AS(FDConfig({10, 15, 100, 1, 1}).validate(), ConfigError);
  CHECK_THROWS_AS(FDConfig({10, 100, 7, 1, 1}).validate(), ConfigError);
  CHECK_THROWS_AS(FDConfig({10, 100, 100, 0, 1}).validate(), ConfigError);
  CHECK_THROWS_AS(FDConfig({10, 100, 100, 1, 0}).validate(), ConfigError);
  const StarGraph g({0.5, 0.5});
  CHECK_THROWS_AS((void)fd_solve(g, GraphFunction({{0, 9.0, 1.0}}, {}), FDConfig{10, 200, 50, 0.1, 1}),
                  ConfigError);
}

TEST_CASE("finite differences against the kernel") {
  const StarGraph g({0.2, 0.5, 0.3});
  const GraphFunction phi({}, {{0, GaussianBump{3, 0.5, 1}}, {2, GaussianBump{2, 0.4, 0.5}}});
  const FDConfig cfg{20, 800, 800, 1.0, 2};
  const auto sol = fd_solve(g, phi, cfg);
  REQUIRE(sol.snapshots().size() == 2);
  CHECK(sol.snapshots()[0].time == doctest::Approx(0.5));
  CHECK(sol.final().time == doctest::Approx(1.0));

  double err = 0;
  for (std::size_t e = 0; e < 3; ++e) {
    for (double x : {0.0, 0.5, 1.5, 2.5, 3.0, 4.0, 6.0}) {
      err = std::max(err, std::abs(sol.eval(sol.final(), {e, x}) - apply(g, phi, {e, x}, 1.0).u));
    }
  }
  CHECK(err <= 1e-3);
  CHECK(std::abs(sol.kirchhoff_residual(sol.final())) <= 1e-12);
  CHECK(sol.mass(sol.final()) == doctest::Approx(phi.weighted_mass(g)).epsilon(1e-6));
}

TEST_CASE("finite differences respect the maximum principle") {
  const StarGraph g({0.3, 0.7});
  const GraphFunction flat({}, {{0, IndicatorDensity{0, 10, 1}}, {1, IndicatorDensity{0, 10, 1}}});
  const auto sol = fd_solve(g, flat, FDConfig{10, 99, 200, 1.0, 4});
  for (const auto& snap : sol.snapshots()) {
    CHECK(snap.vertex <= 1.0 + 1e-12);
    for (const auto& edge : snap.edges) {
      CHECK(*std::min_element(edge.begin(), edge.end()) >= -1e-12);
      CHECK(*std::max_element(edge.begin(), edge.end()) <= 1.0 + 1e-12);
    }
    CHECK(std::abs(sol.kirchhoff_residual(snap)) <= 1e-12);
  }
}

TEST_CASE("finite differences with atoms") {
  const StarGraph g({1.0 / 3, 1.0 / 3, 1.0 / 3});
  const auto sol = fd_solve(g, example1_data(), FDConfig{20, 1000, 1000, 1.0, 1});
  double err = 0;
  for (double x : {0.0, 0.5, 1.0, 2.0, 4.0}) {
    err = std::max(err, std::abs(sol.eval(sol.final(), {1, x}) - example1_u(x, 1.0)));
  }
  CHECK(err <= 1e-3);
}

TEST_CASE("interval probabilities of the kernel") {
  const StarGraph g({1.0 / 3, 1.0 / 3, 1.0 / 3});
  CHECK(kernel_interval_probability(g, {2, 1}, 2, 0.5, 1.5, 1) ==
        doctest::Approx(ref::interval_same).epsilon(1e-13));
  CHECK(kernel_interval_probability(g, {2, 1}, 0, 0.5, 1.5, 1) ==
        doctest::Approx(ref::interval_other).epsilon(1e-13));
  const StarGraph h({0.1, 0.2, 0.7});
  double total = 0;
  for (std::size_t j = 0; j < 3; ++j) {
    const double p = kernel_interval_probability(h, {0, 0}, j, 0, INFINITY, 2.0);
    CHECK(p == doctest::Approx(h.weight(j)).epsilon(1e-14));
    total += kernel_interval_probability(h, {1, 0.8}, j, 0, INFINITY, 0.3);
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("random walk configuration") {
  const StarGraph g({0.5, 0.5});
  CHECK_THROWS_AS((void)walk_simulate(g, {0, 0}, 1.0, {0.1, 10, 1}), ConfigError);
  CHECK_THROWS_AS((void)walk_simulate(g, {0, 0}, 1.0, {0.01, 0, 1}), ConfigError);
  CHECK_THROWS_AS((void)walk_simulate(g, {0, 0.015}, 1.0, {0.01, 10, 1}), ConfigError);
  CHECK_THROWS_AS((void)walk_compare(g, {0, 0}, 1.0, {0.01, 10, 1}, 0), ConfigError);
}

TEST_CASE("random walk is deterministic") {
  const StarGraph g({0.2, 0.3, 0.5});
  const WalkConfig cfg{0.02, 2000, 99};
  const auto a = walk_simulate(g, {1, 0.4}, 0.5, cfg, 1);
  const auto b = walk_simulate(g, {1, 0.4}, 0.5, cfg, 7);
  REQUIRE(a.endpoints.size() == b.endpoints.size());
  bool same = true;
  for (std::size_t i = 0; i < a.endpoints.size(); ++i) {
    same = same && a.endpoints[i].edge == b.endpoints[i].edge && a.endpoints[i].coord == b.endpoints[i].coord;
  }
  CHECK(same);
  const auto c = walk_simulate(g, {1, 0.4}, 0.5, {0.02, 2000, 100}, 1);
  bool differs = false;
  for (std::size_t i = 0; i < a.endpoints.size(); ++i) differs = differs || a.endpoints[i].coord != c.endpoints[i].coord;
  CHECK(differs);
}

TEST_CASE("random walk from the vertex occupies edges by weight") {
  const StarGraph g({0.2, 0.3, 0.5});
  const auto r = walk_compare(g, {0, 0}, 1.0, {0.05, 20000, 5}, 20);
  for (std::size_t j = 0; j < 3; ++j) {
    CHECK(r.edges[j].expected == doctest::Approx(g.weight(j)).epsilon(1e-14));
    CHECK(std::abs(r.edges[j].frequency - r.edges[j].expected) <= 4 * r.edges[j].sigma);
  }
  CHECK(r.max_abs_z <= 5.0);
}

TEST_CASE("random walk on the line is Brownian motion") {
  const StarGraph g({0.5, 0.5});
  const std::size_t n = 20000;
  const auto w = walk_simulate(g, {0, 1}, 1.0, {0.05, n, 11});
  // Kolmogorov-Smirnov on the signed coordinate
  std::vector<double> s;
  for (const auto& p : w.endpoints) s.push_back(p.edge == 0 ? p.coord : -p.coord);
  std::sort(s.begin(), s.end());
  const double h = 0.05;
  double ks = 0;
  for (std::size_t i = 0; i < n; ++i) {
    // compare at lattice midpoints to avoid the atom of the discrete law
    const double mid = s[i] + h;
    const double cdf = 0.5 * std::erfc(-(mid - 1) / std::sqrt(4 * w.simulated_time));
    const auto upto = static_cast<double>(std::upper_bound(s.begin(), s.end(), mid) - s.begin());
    ks = std::max(ks, std::abs(upto / n - cdf));
  }
  CHECK(ks <= 1.63 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("small and far-from-vertex walks") {
  const StarGraph g({1.0 / 3, 1.0 / 3, 1.0 / 3});
  const auto small = walk_compare(g, {2, 1}, 1.0, {0.05, 100, 3}, 10);
  CHECK(small.max_abs_z < 10.0);
  const auto far = walk_compare(g, {1, 20}, 0.1, {0.01, 5000, 4}, 20);
  CHECK(far.edges[1].frequency == 1.0);
  CHECK(far.edges[1].expected == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(far.max_abs_z <= 5.0);
}
