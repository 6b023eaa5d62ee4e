#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "stargraph/graph.hpp"

namespace stargraph {

/// height on [a, b], zero elsewhere.
struct IndicatorDensity {
  double a = 0.0;
  double b = 1.0;
  double height = 1.0;
};

/// height * exp(-(y - center)^2 / (2 sigma^2)) restricted to y >= 0.
struct GaussianBump {
  double center = 0.0;
  double sigma = 1.0;
  double height = 1.0;
};

/// height * exp(-rate * y).
struct ExponentialDecay {
  double rate = 1.0;
  double height = 1.0;
};

/// Samples at y = k * spacing, k = 0..n-1, linearly interpolated and zero
/// beyond the last sample.
struct SampledDensity {
  double spacing = 1.0;
  std::vector<double> values;
};

using DensityForm = std::variant<IndicatorDensity, GaussianBump, ExponentialDecay, SampledDensity>;

struct EdgeDensity {
  std::size_t edge = 0;
  DensityForm form;
};

/// Dirac mass of the given weight at a point of an edge.
struct Atom {
  std::size_t edge = 0;
  double location = 0.0;
  double weight = 1.0;
};

/// phi_edge >= eta on a set of measure lambda inside B_r0.
struct PositivityWitness {
  std::size_t edge = 0;
  double eta = 0.0;
  double lambda = 0.0;
  double r0 = 0.0;
  // Witness set K = [lo, lo + lambda] on the edge.
  double lo = 0.0;
};

[[nodiscard]] double density_value(const DensityForm& form, double y);
[[nodiscard]] double density_mass(const DensityForm& form);
/// Coordinate beyond which the density is zero or below eps times its peak.
[[nodiscard]] double density_support_end(const DensityForm& form, double eps);
/// Coordinate below which the density is zero or below eps times its peak.
[[nodiscard]] double density_support_start(const DensityForm& form, double eps);
/// Kinks and natural length scales of the density inside [0, upper].
[[nodiscard]] std::vector<double> density_breakpoints(const DensityForm& form, double upper);

/// Nonnegative initial datum with finite mass: Dirac atoms plus densities.
/// Immutable after construction.
class GraphFunction {
 public:
  GraphFunction() = default;
  /// Throws ConfigError on negative weights, locations, heights or samples.
  GraphFunction(std::vector<Atom> atoms, std::vector<EdgeDensity> densities);

  /// Parses {"atoms":[{"edge","loc","w"}], "densities":[{"edge","kind",...}]}
  /// with 1-based edges. Throws ConfigError on malformed input.
  static GraphFunction from_json(std::string_view text);
  [[nodiscard]] std::string to_json() const;

  [[nodiscard]] const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  [[nodiscard]] const std::vector<EdgeDensity>& densities() const noexcept { return densities_; }

  /// Density mass plus atom weights on one edge.
  [[nodiscard]] double l1_norm(std::size_t edge) const;
  [[nodiscard]] double total_mass() const noexcept { return total_mass_; }
  /// sum_j alpha_j l1_norm(j). The heat flow conserves this, not total_mass().
  [[nodiscard]] double weighted_mass(const StarGraph& graph) const;
  /// Largest edge index referenced plus one (0 for the zero function).
  [[nodiscard]] std::size_t min_edge_count() const noexcept;

  /// Sum of densities at p; atoms are excluded.
  [[nodiscard]] double eval_density(const GraphPoint& p) const;

  /// Throws NoWitnessError if no density carries positive mass.
  [[nodiscard]] PositivityWitness positivity_witness() const;

  /// Throws DomainError if an edge index exceeds the graph.
  void check_compatible(const StarGraph& graph) const;

 private:
  std::vector<Atom> atoms_;
  std::vector<EdgeDensity> densities_;
  double total_mass_ = 0.0;
};

/// Exact witness for catalog densities, best eta*lambda over 21 thresholds
/// for sampled ones. Empty optional-like result is signalled by lambda == 0.
[[nodiscard]] PositivityWitness density_witness(const DensityForm& form, std::size_t edge);

}  // namespace stargraph
