#include <doctest.h>

#include <cmath>
#include <random>

#include "reference_values.hpp"
#include "stargraph/analysis.hpp"
#include "stargraph/errors.hpp"
#include "stargraph/kernel.hpp"
#include "stargraph/oracles.hpp"

using namespace stargraph;

namespace {

const StarGraph kThird({1.0 / 3, 1.0 / 3, 1.0 / 3});
const StarGraph kLine({0.5, 0.5});
const GraphFunction kDeltaO({{0, 0.0, 1.0}}, {});

}  // namespace

TEST_CASE("h factor") {
  CHECK(h_factor(kThird, 0, 1, 1, 1) == doctest::Approx(ref::h_example).epsilon(1e-14));
  for (double x : {0.0, 0.5, 2.0}) {
    for (double y : {0.0, 1.0, 3.0}) {
      CHECK(h_factor(kLine, 1, x, y, 0.7) == doctest::Approx(gauss(x + y, 0.7).value).epsilon(1e-14));
    }
  }
  CHECK_THROWS_AS((void)h_factor(kThird, 0, 1, 1, 0), DomainError);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  const StarGraph g({0.05, 0.6, 0.35});
  for (int k = 0; k < 500; ++k) {
    const std::size_t i = static_cast<std::size_t>(k % 3);
    const double x = u(rng), y = u(rng), t = 0.05 + u(rng);
    const double h = h_factor(g, i, x, y, t);
    CHECK(h > 0);
    CHECK(h <= gauss(x - y, t).value / (2 * g.weight(i)) * (1 + 1e-14));
  }
}

TEST_CASE("correction term") {
  CHECK(curvature_term(kThird, example1_data(), {0, 1}, 1) ==
        doctest::Approx(ref::example1_I_1_1).epsilon(1e-13));
  for (double t : {0.2, 1.0, 5.0}) {
    for (double x : {0.0, 1.0, 4.0}) {
      CHECK(curvature_term(kLine, kDeltaO, {0, x}, t) == 0.0);
      CHECK(curvature_term_literal(kLine, kDeltaO, {1, x}, t) == 0.0);
    }
  }
  // literal form vanishes at the vertex for any data
  const auto ex1 = example1_data();
  CHECK(curvature_term_literal(kThird, ex1, {1, 0}, 0.6) == 0.0);

  const StarGraph h({0.2, 0.5, 0.3});
  const GraphFunction mix({}, {{0, GaussianBump{2, 1, 1}}, {2, ExponentialDecay{1.5, 3}}});
  CHECK(curvature_term(h, mix, {0, 1.3}, 0.9) == doctest::Approx(ref::mix_e0_I).epsilon(1e-9));
  CHECK(curvature_term_literal(h, mix, {0, 1.3}, 0.9) == doctest::Approx(ref::mix_e0_I_literal).epsilon(1e-9));
  // only data on the evaluation edge contributes
  CHECK(curvature_term(h, mix, {1, 1.3}, 0.9) == 0.0);
}

TEST_CASE("Li-Yau reports on the examples") {
  const auto r1 = liyau_report(kThird, example1_data(), {0, 1}, 1);
  CHECK(r1.lhs == doctest::Approx(ref::example1_lhs_1_1).epsilon(1e-12));
  CHECK(r1.rhs == doctest::Approx(ref::example1_rhs_1_1).epsilon(1e-12));
  CHECK(r1.margin == doctest::Approx(ref::example1_margin_1_1).epsilon(1e-11));
  CHECK(r1.u == doctest::Approx(ref::example1_u_1_1).epsilon(1e-14));
  CHECK_FALSE(r1.refined);

  const auto r2 = liyau_report(kThird, example2_data(), {2, 1}, 1);
  CHECK(r2.lhs == doctest::Approx(ref::example2_lhs_e3_1_1).epsilon(1e-12));
  CHECK(std::abs(r2.margin) <= 1e-10);

  for (double x : {0.0, 0.5, 3.0}) {
    for (double t : {0.1, 1.0, 10.0}) {
      const auto r = liyau_report(kLine, kDeltaO, {0, x}, t);
      CHECK(r.rhs == -1 / (2 * t));
      CHECK(std::abs(r.margin) <= 1e-10);
    }
  }
  const auto lim = liyau_report(kThird, example1_data(), {1, 50}, 1);
  CHECK(std::abs(lim.lhs + 0.5) <= 1e-6);
}

TEST_CASE("literal correction term is not a valid bound") {
  // Example 2, third edge, x = 0.5: the literal form pushes rhs above lhs.
  const auto r = liyau_report(kThird, example2_data(), {2, 0.5}, 1);
  CHECK(r.lhs == doctest::Approx(ref::example2_e3_half_lhs).epsilon(1e-12));
  CHECK(std::abs(r.margin) <= 1e-10);
  const double rhs_literal = -0.5 - r.I_literal / 3;
  CHECK(rhs_literal == doctest::Approx(ref::example2_e3_half_rhs_literal).epsilon(1e-12));
  CHECK(r.lhs < rhs_literal);
}

TEST_CASE("single atoms are sharp") {
  const StarGraph g({0.15, 0.25, 0.6});
  for (std::size_t e = 0; e < 3; ++e) {
    const GraphFunction atom({{e, 1.7, 0.8}}, {});
    for (std::size_t i = 0; i < 3; ++i) {
      for (double x : {0.0, 0.4, 1.7, 3.5}) {
        for (double t : {0.3, 2.0}) {
          CHECK(std::abs(liyau_report(g, atom, {i, x}, t).margin) <= 1e-9);
        }
      }
    }
  }
}

TEST_CASE("Remark bounds order the literal correction") {
  const StarGraph g({0.2, 0.5, 0.3});
  const GraphFunction phi({{0, 0.7, 0.4}}, {{0, GaussianBump{2, 1, 1}}, {2, IndicatorDensity{0.5, 2, 1}}});
  for (std::size_t e : {0u, 2u}) {
    for (double x : {0.2, 1.5, 4.0}) {
      const auto r = liyau_report(g, phi, {e, x}, 0.8);
      CHECK(r.margin >= -1e-8);
      CHECK(r.I_literal >= 0.0);
      CHECK(r.I_literal <= r.bound_x * (1 + 1e-10));
      CHECK(r.bound_x <= r.bound_l1 + 1e-12);
    }
  }
}

TEST_CASE("rho and the path") {
  CHECK(rho({0, 1}, {0, 2}, 2, 1) == 3.0);
  CHECK(rho({0, 1}, {1, 2}, 2, 1) == -5.0);
  CHECK(rho({1, 1.5}, {1, 1.5}, 3, 2) == 1.5);
  CHECK_THROWS_AS((void)rho({0, 1}, {0, 2}, 1, 1), DomainError);
  CHECK_THROWS_AS((void)rho({0, 1}, {0, 2}, 1, 0), DomainError);

  const GraphPoint x{0, 1}, y{1, 2};
  CHECK(same_point(harnack_path(x, y, 2, 1, 0), x));
  CHECK(same_point(harnack_path(x, y, 2, 1, 1), y));
  CHECK(harnack_path(x, y, 2, 1, 1.0 / 3).coord == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(harnack_path(x, y, 2, 1, 2.0 / 3).edge == 1);
  CHECK(harnack_path({0, 1}, {0, 3}, 2, 1, 0.5).coord == doctest::Approx(2.0));
}

TEST_CASE("Harnack constant") {
  CHECK(harnack_constant(kLine, kDeltaO, {0, 0}, {0, 1}, 2, 1) == doctest::Approx(1.0).epsilon(1e-12));

  const auto ex1 = example1_data();
  const double c101 = harnack_constant(kThird, ex1, {0, 1}, {0, 2}, 2, 1, {}, 101);
  const double c10k = harnack_constant(kThird, ex1, {0, 1}, {0, 2}, 2, 1, {}, 10001);
  CHECK(c101 > 0);
  CHECK(c101 == doctest::Approx(c10k).epsilon(1e-3));
  CHECK_THROWS_AS((void)harnack_constant_bound(kThird, ex1, 1, 1), NoWitnessError);
}

TEST_CASE("Harnack constant bound") {
  const GraphFunction ind({}, {{0, IndicatorDensity{0, 1, 1}}});
  CHECK(harnack_constant_bound(kLine, ind, 1, 1) == doctest::Approx(std::exp(1.0)).epsilon(1e-14));
  const GraphFunction tall({}, {{0, IndicatorDensity{0, 1, 2}}});
  // doubling eta doubles the mass too, so the bound is unchanged
  CHECK(harnack_constant_bound(kLine, tall, 1, 1) == doctest::Approx(std::exp(1.0)).epsilon(1e-14));
  const GraphFunction low({{1, 2.0, 10.0}}, {{0, IndicatorDensity{0, 1, 1}}});
  const GraphFunction high({{1, 2.0, 10.0}}, {{0, IndicatorDensity{0, 1, 2}}});
  CHECK(harnack_constant_bound(kLine, high, 1, 1) ==
        doctest::Approx(0.5 * harnack_constant_bound(kLine, low, 1, 1)).epsilon(1e-14));
  CHECK(harnack_constant_bound(kLine, ind, 1, 1e6) == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(harnack_constant_bound(kLine, ind, 1, 0.5) > harnack_constant_bound(kLine, ind, 1, 1));

  const GraphFunction smooth({}, {{0, GaussianBump{1, 0.5, 1}}});
  const double numeric = harnack_constant(kLine, smooth, {0, 0.5}, {1, 0.5}, 2, 1);
  CHECK(numeric <= harnack_constant_bound(kLine, smooth, 1, 1));
}

TEST_CASE("Harnack reports") {
  const auto line = harnack_report(kLine, kDeltaO, {0, 0}, {0, 1}, 2, 1);
  CHECK(line.ratio == doctest::Approx(ref::harnack_ratio_line).epsilon(1e-14));
  CHECK(line.C == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(line.rhs == doctest::Approx(ref::harnack_rhs_line).epsilon(1e-11));
  CHECK(line.margin >= 0.0);

  const auto ex1 = example1_data();
  const auto a = harnack_report(kThird, ex1, {0, 1}, {1, 1}, 2, 1);
  CHECK(a.margin >= -1e-8);
  const auto fine = harnack_report(kThird, ex1, {0, 1}, {1, 1}, 2, 1, QuadratureSpec{}.tightened(10));
  CHECK(fine.margin == doctest::Approx(a.margin).epsilon(1e-8));

  const auto close = harnack_report(kThird, ex1, {0, 1.5}, {0, 1.5}, 1.001, 1.0);
  CHECK(close.ratio == doctest::Approx(1.0).epsilon(1e-2));
  CHECK(close.rhs <= 1.0);
  CHECK(close.margin >= -1e-8);
}
