#include <doctest.h>

#include <cmath>
#include <random>

#include "reference_values.hpp"
#include "stargraph/errors.hpp"
#include "stargraph/kernel.hpp"

using namespace stargraph;

namespace {

StarGraph random_graph(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(2, 5);
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> w(static_cast<std::size_t>(count(rng)));
  double sum = 0;
  for (auto& v : w) sum += (v = expo(rng) + 1e-3);
  for (auto& v : w) v /= sum;
  double rest = 1.0;
  for (std::size_t i = 0; i + 1 < w.size(); ++i) rest -= w[i];
  w.back() = rest;
  return StarGraph(w);
}

}  // namespace

TEST_CASE("line Gaussian") {
  CHECK(gauss(0, 1).value == doctest::Approx(ref::gauss_0_1).epsilon(1e-15));
  CHECK(gauss(2, 1).value == doctest::Approx(ref::gauss_2_1).epsilon(1e-15));
  CHECK_THROWS_AS((void)gauss(1, 0), DomainError);
  CHECK_THROWS_AS((void)gauss(1, -1), DomainError);
  CHECK(gauss(100, 1e-3).value == 0.0);
  CHECK(gauss(100, 1e-3).d_x == 0.0);
}

TEST_CASE("line Gaussian has unit mass") {
  for (double t : {0.1, 1.0, 10.0}) {
    const double r = tail_radius(t, 1e-18);
    const auto res = integrate<1>([&](double z) { return Values<1>{gauss(z, t).value}; },
                                  std::vector<double>{-r, 0.0, r}, QuadratureSpec{});
    CHECK(res.integral[0] == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("kernel closed forms") {
  const StarGraph tri({1.0 / 3, 1.0 / 3, 1.0 / 3});
  CHECK(kernel(tri, {0, 1}, {0, 1}, 1).value == doctest::Approx(ref::kernel_example).epsilon(1e-15));

  const StarGraph line({0.5, 0.5});
  for (double x : {0.0, 0.3, 2.0}) {
    for (double y : {0.0, 1.1, 4.0}) {
      CHECK(kernel(line, {0, x}, {0, y}, 0.8).value == gauss(x - y, 0.8).value);
      CHECK(kernel(line, {0, x}, {1, y}, 0.8).value == doctest::Approx(gauss(x + y, 0.8).value).epsilon(1e-15));
    }
  }

  const StarGraph g({0.1, 0.6, 0.3});
  for (std::size_t j = 0; j < 3; ++j) {
    CHECK(kernel(g, {0, 0}, {j, 1.7}, 0.4).value ==
          doctest::Approx(2 * g.weight(j) * gauss(1.7, 0.4).value).epsilon(1e-15));
  }
}

TEST_CASE("tail radius") {
  CHECK(tail_radius(1, std::exp(-36.0)) == doctest::Approx(12.0).epsilon(1e-14));
  CHECK(tail_radius(4, std::exp(-36.0)) == doctest::Approx(24.0).epsilon(1e-14));
  CHECK_THROWS_AS((void)tail_radius(1, 1), DomainError);
  CHECK_THROWS_AS((void)tail_radius(1, 0), DomainError);
  CHECK_THROWS_AS((void)tail_radius(0, 0.5), DomainError);
}

TEST_CASE("kernel mass") {
  CHECK(kernel_mass(StarGraph({0.5, 0.5}), {0, 0}, 1) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::abs(kernel_mass(StarGraph({0.9, 0.05, 0.05}), {1, 3}, 0.5) - 1) <= 1e-10);
}

TEST_CASE("kernel properties on random samples") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> coord(0.0, 6.0);
  std::uniform_real_distribution<double> logt(std::log(0.05), std::log(10.0));
  for (int k = 0; k < 200; ++k) {
    const StarGraph g = random_graph(rng);
    const std::size_t n = g.edge_count();
    std::uniform_int_distribution<std::size_t> edge(0, n - 1);
    const GraphPoint x{edge(rng), coord(rng)};
    const GraphPoint y{edge(rng), coord(rng)};
    const double t = std::exp(logt(rng));
    const auto kv = kernel(g, x, y, t);
    CHECK(kv.value > 0.0);

    // heat equation in x away from O
    CHECK(std::abs(kv.d_t - kv.d_xx) <= 1e-10 * (std::abs(kv.d_t) + std::abs(kv.d_xx) + 1e-300));

    // weighted symmetry
    const double lhs = kv.value / g.weight(y.edge);
    const double rhs = kernel(g, y, x, t).value / g.weight(x.edge);
    CHECK(std::abs(lhs - rhs) <= 1e-14 * std::max(1.0, std::abs(lhs)));

    // vertex continuity and Kirchhoff flux
    double flux = 0.0;
    const double v0 = kernel(g, {0, 0}, y, t).value;
    for (std::size_t i = 0; i < n; ++i) {
      const auto at_o = kernel(g, {i, 0}, y, t);
      CHECK(std::abs(at_o.value - v0) <= 1e-14);
      flux += g.weight(i) * at_o.d_x;
    }
    CHECK(std::abs(flux) <= 1e-10);

    CHECK(std::abs(kernel_mass(g, x, t) - 1.0) <= 1e-10);
  }
}

TEST_CASE("analytic derivatives agree with central differences") {
  const StarGraph g({0.15, 0.35, 0.5});
  const double step = 1e-5;
  for (const auto& [x, y, t] : {std::tuple{GraphPoint{0, 1.2}, GraphPoint{0, 0.7}, 0.6},
                                std::tuple{GraphPoint{1, 2.0}, GraphPoint{2, 0.4}, 1.5},
                                std::tuple{GraphPoint{2, 0.3}, GraphPoint{2, 2.5}, 3.0}}) {
    const auto kv = kernel(g, x, y, t);
    auto at = [&](double dx, double dt) {
      return kernel(g, {x.edge, x.coord + dx}, y, t + dt).value;
    };
    const double fd_x = (at(step, 0) - at(-step, 0)) / (2 * step);
    auto slope = [&](double dx) { return kernel(g, {x.edge, x.coord + dx}, y, t).d_x; };
    const double fd_xx = (slope(step) - slope(-step)) / (2 * step);
    const double fd_t = (at(0, step) - at(0, -step)) / (2 * step);
    CHECK(kv.d_x == doctest::Approx(fd_x).epsilon(1e-6));
    CHECK(kv.d_xx == doctest::Approx(fd_xx).epsilon(1e-6));
    CHECK(kv.d_t == doctest::Approx(fd_t).epsilon(1e-6));
  }
}
