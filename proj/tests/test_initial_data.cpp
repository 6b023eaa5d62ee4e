#include <doctest.h>

#include <cmath>

#include "stargraph/errors.hpp"
#include "stargraph/initial_data.hpp"

using namespace stargraph;

namespace {

double trapezoid(const DensityForm& f, double lower, double upper, std::size_t panels) {
  const double h = (upper - lower) / static_cast<double>(panels);
  double s = 0.5 * (density_value(f, lower) + density_value(f, upper));
  for (std::size_t k = 1; k < panels; ++k) s += density_value(f, lower + static_cast<double>(k) * h);
  return s * h;
}

void check_witness(const GraphFunction& f) {
  const auto w = f.positivity_witness();
  REQUIRE(w.lambda > 0.0);
  CHECK(w.eta > 0.0);
  CHECK(w.lo + w.lambda <= w.r0 + 1e-12);
  for (int k = 0; k <= 10000; ++k) {
    const double y = w.lo + w.lambda * k / 10000.0;
    CHECK(f.eval_density({w.edge, y}) >= w.eta * (1 - 1e-12));
  }
}

}  // namespace

TEST_CASE("l1 norms") {
  const GraphFunction ind({}, {{0, IndicatorDensity{0, 1, 1}}});
  CHECK(ind.l1_norm(0) == 1.0);
  CHECK(ind.l1_norm(1) == 0.0);
  const GraphFunction atom({{0, 1.0, 1.0}}, {});
  CHECK(atom.l1_norm(0) == 1.0);
  CHECK(atom.total_mass() == 1.0);
}

TEST_CASE("total mass is the sum of edge norms") {
  const GraphFunction f({{0, 1.0, 0.5}, {2, 0.0, 2.0}},
                        {{0, GaussianBump{1.0, 0.4, 2.0}},
                         {1, ExponentialDecay{0.7, 1.5}},
                         {2, SampledDensity{0.5, {0, 1, 3, 2, 0.5}}}});
  CHECK(f.total_mass() == doctest::Approx(f.l1_norm(0) + f.l1_norm(1) + f.l1_norm(2)).epsilon(1e-15));
  CHECK(f.min_edge_count() == 3);
}

TEST_CASE("catalog masses match a fine trapezoid") {
  const DensityForm forms[] = {GaussianBump{2.0, 0.7, 1.3}, GaussianBump{-0.5, 1.0, 1.0},
                               ExponentialDecay{1.7, 2.0}};
  for (const auto& f : forms) {
    const double upper = density_support_end(f, 1e-20) + 1.0;
    CHECK(density_mass(f) == doctest::Approx(trapezoid(f, 0.0, upper, 1000000)).epsilon(1e-9));
  }
  // the indicator is integrated over its own support to keep the jumps on nodes
  const DensityForm box = IndicatorDensity{0.25, 2.0, 3.0};
  CHECK(density_mass(box) == doctest::Approx(trapezoid(box, 0.25, 2.0, 1000000)).epsilon(1e-9));
}

TEST_CASE("density evaluation") {
  const GraphFunction ind({}, {{0, IndicatorDensity{0, 1, 1}}});
  CHECK(ind.eval_density({0, 0.5}) == 1.0);
  CHECK(ind.eval_density({0, 2.0}) == 0.0);
  const GraphFunction grid({}, {{0, SampledDensity{1.0, {0.0, 2.0}}}});
  CHECK(grid.eval_density({0, 0.5}) == 1.0);
  CHECK(grid.eval_density({0, 1.5}) == 0.0);
  // atoms are not densities
  CHECK(GraphFunction({{0, 1.0, 1.0}}, {}).eval_density({0, 1.0}) == 0.0);
}

TEST_CASE("positivity witnesses") {
  const auto w = GraphFunction({}, {{2, IndicatorDensity{0, 1, 2}}}).positivity_witness();
  CHECK(w.edge == 2);
  CHECK(w.eta == 2.0);
  CHECK(w.lambda == 1.0);
  CHECK(w.r0 == 1.0);

  const auto b = GraphFunction({}, {{0, GaussianBump{2, 1, 1}}}).positivity_witness();
  CHECK(b.eta == doctest::Approx(std::exp(-0.5)).epsilon(1e-15));
  CHECK(b.lo == doctest::Approx(1.0));
  CHECK(b.lambda == doctest::Approx(2.0));
  CHECK(b.r0 == doctest::Approx(3.0));

  CHECK_THROWS_AS((void)GraphFunction().positivity_witness(), NoWitnessError);
  CHECK_THROWS_AS((void)GraphFunction({{0, 1, 1}}, {}).positivity_witness(), NoWitnessError);
  CHECK_THROWS_AS((void)GraphFunction({}, {{0, IndicatorDensity{0, 1, 0}}}).positivity_witness(),
                  NoWitnessError);
}

TEST_CASE("witnesses hold on a dense grid of their set") {
  check_witness(GraphFunction({}, {{1, IndicatorDensity{0.5, 4, 0.3}}}));
  check_witness(GraphFunction({}, {{0, GaussianBump{0.2, 0.6, 5}}}));
  check_witness(GraphFunction({}, {{0, GaussianBump{-1.0, 0.5, 2}}}));
  check_witness(GraphFunction({}, {{0, ExponentialDecay{3, 1}}}));
  check_witness(GraphFunction({}, {{1, SampledDensity{0.1, {0, 0.2, 1, 1.5, 0.9, 0.1, 0, 3, 0}}}}));
  check_witness(GraphFunction({{0, 1, 3}}, {{1, SampledDensity{0.5, {1, 1, 1}}}}));
}

TEST_CASE("invalid data is rejected") {
  CHECK_THROWS_AS(GraphFunction({{0, 1, -1}}, {}), ConfigError);
  CHECK_THROWS_AS(GraphFunction({{0, -1, 1}}, {}), ConfigError);
  CHECK_THROWS_AS(GraphFunction({}, {{0, IndicatorDensity{2, 1, 1}}}), ConfigError);
  CHECK_THROWS_AS(GraphFunction({}, {{0, GaussianBump{1, 0, 1}}}), ConfigError);
  CHECK_THROWS_AS(GraphFunction({}, {{0, SampledDensity{0.1, {1, -1}}}}), ConfigError);
  CHECK_THROWS_AS(GraphFunction({}, {{0, SampledDensity{0.1, {}}}}), ConfigError);
}

TEST_CASE("json round trip") {
  const auto f = GraphFunction::from_json(R"({
    "atoms": [{"edge": 3, "loc": 1.0, "w": 1.0}],
    "densities": [{"edge": 1, "kind": "indicator", "a": 0, "b": 1},
                  {"edge": 2, "kind": "gauss", "center": 2, "sigma": 0.5, "height": 3},
                  {"edge": 2, "kind": "exp", "rate": 2},
                  {"edge": 1, "kind": "grid", "h": 0.5, "values": [0, 1, 0]}]})");
  CHECK(f.atoms().size() == 1);
  CHECK(f.atoms()[0].edge == 2);
  CHECK(f.densities().size() == 4);
  CHECK(f.min_edge_count() == 3);
  const auto g = GraphFunction::from_json(f.to_json());
  CHECK(g.total_mass() == f.total_mass());
  CHECK(g.eval_density({1, 1.7}) == f.eval_density({1, 1.7}));

  CHECK_THROWS_AS((void)GraphFunction::from_json("{"), ConfigError);
  CHECK_THROWS_AS((void)GraphFunction::from_json(R"({"atoms":[{"edge":0,"loc":1,"w":1}]})"), ConfigError);
  CHECK_THROWS_AS((void)GraphFunction::from_json(R"({"densities":[{"edge":1,"kind":"box"}]})"), ConfigError);
  CHECK_THROWS_AS((void)GraphFunction::from_json(R"({"densities":[{"edge":1,"kind":"gauss","center":1}]})"),
                  ConfigError);
}

TEST_CASE("compatibility with a graph") {
  const GraphFunction f({{3, 1, 1}}, {});
  CHECK_THROWS_AS(f.check_compatible(StarGraph({0.5, 0.5})), DomainError);
  CHECK_NOTHROW(f.check_compatible(StarGraph({0.25, 0.25, 0.25, 0.25})));
}
