#include "stargraph/initial_data.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include "json.hpp"
#include "stargraph/errors.hpp"

namespace stargraph {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

void validate_form(const DensityForm& form) {
  std::visit(
      overloaded{
          [](const IndicatorDensity& d) {
            require(std::isfinite(d.a) && std::isfinite(d.b) && d.a >= 0.0 && d.b > d.a,
                    "indicator needs 0 <= a < b");
            require(std::isfinite(d.height) && d.height >= 0.0, "indicator height must be >= 0");
          },
          [](const GaussianBump& d) {
            require(std::isfinite(d.center), "gauss center must be finite");
            require(std::isfinite(d.sigma) && d.sigma > 0.0, "gauss sigma must be positive");
            require(std::isfinite(d.height) && d.height >= 0.0, "gauss height must be >= 0");
          },
          [](const ExponentialDecay& d) {
            require(std::isfinite(d.rate) && d.rate > 0.0, "exp rate must be positive");
            require(std::isfinite(d.height) && d.height >= 0.0, "exp height must be >= 0");
          },
          [](const SampledDensity& d) {
            require(std::isfinite(d.spacing) && d.spacing > 0.0, "grid spacing must be positive");
            require(!d.values.empty(), "grid needs at least one sample");
            for (double v : d.values) {
              require(std::isfinite(v) && v >= 0.0, "grid samples must be finite and >= 0");
            }
          },
      },
      form);
}

// Longest run where the piecewise-linear interpolant is >= eta.
PositivityWitness sampled_witness_at(const SampledDensity& d, double eta, std::size_t edge) {
  PositivityWitness best{edge, eta, 0.0, 0.0, 0.0};
  const auto& v = d.values;
  const double h = d.spacing;
  bool active = v[0] >= eta;
  double start = 0.0;
  auto close = [&](double end) {
    if (end - start > best.lambda) {
      best.lambda = end - start;
      best.lo = start;
      best.r0 = end;
    }
  };
  for (std::size_t k = 0; k + 1 < v.size(); ++k) {
    const double y0 = static_cast<double>(k) * h;
    const bool in0 = v[k] >= eta;
    const bool in1 = v[k + 1] >= eta;
    if (in0 && !in1) {
      close(y0 + (v[k] - eta) / (v[k] - v[k + 1]) * h);
      active = false;
    } else if (!in0 && in1) {
      start = y0 + (eta - v[k]) / (v[k + 1] - v[k]) * h;
      active = true;
    }
  }
  if (active) close(static_cast<double>(v.size() - 1) * h);
  return best;
}

}  // namespace

double density_value(const DensityForm& form, double y) {
  if (y < 0.0) return 0.0;
  return std::visit(
      overloaded{
          [y](const IndicatorDensity& d) { return (y >= d.a && y <= d.b) ? d.height : 0.0; },
          [y](const GaussianBump& d) {
            const double z = (y - d.center) / d.sigma;
            return d.height * std::exp(-0.5 * z * z);
          },
          [y](const ExponentialDecay& d) { return d.height * std::exp(-d.rate * y); },
          [y](const SampledDensity& d) {
            const double s = y / d.spacing;
            const double last = static_cast<double>(d.values.size() - 1);
            if (s > last) return 0.0;
            const auto k = static_cast<std::size_t>(std::floor(s));
            if (k + 1 >= d.values.size()) return d.values.back();
            const double w = s - static_cast<double>(k);
            return (1.0 - w) * d.values[k] + w * d.values[k + 1];
          },
      },
      form);
}

double density_mass(const DensityForm& form) {
  return std::visit(
      overloaded{
          [](const IndicatorDensity& d) { return d.height * (d.b - d.a); },
          [](const GaussianBump& d) {
            return d.height * d.sigma * std::sqrt(std::numbers::pi / 2.0) *
                   (1.0 + std::erf(d.center / (d.sigma * std::numbers::sqrt2)));
          },
          [](const ExponentialDecay& d) { return d.height / d.rate; },
          [](const SampledDensity& d) {
            const auto& v = d.values;
            if (v.size() < 2) return 0.0;
            double s = 0.5 * (v.front() + v.back());
            for (std::size_t k = 1; k + 1 < v.size(); ++k) s += v[k];
            return s * d.spacing;
          },
      },
      form);
}

double density_support_end(const DensityForm& form, double eps) {
  const double log_inv = std::log(1.0 / eps);
  return std::visit(
      overloaded{
          [](const IndicatorDensity& d) { return d.b; },
          [log_inv](const GaussianBump& d) {
            return std::max(0.0, d.center + d.sigma * std::sqrt(2.0 * log_inv));
          },
          [log_inv](const ExponentialDecay& d) { return log_inv / d.rate; },
          [](const SampledDensity& d) {
            return static_cast<double>(d.values.size() - 1) * d.spacing;
          },
      },
      form);
}

double density_support_start(const DensityForm& form, double eps) {
  const double log_inv = std::log(1.0 / eps);
  return std::visit(
      overloaded{
          [](const IndicatorDensity& d) { return d.a; },
          [log_inv](const GaussianBump& d) {
            return std::max(0.0, d.center - d.sigma * std::sqrt(2.0 * log_inv));
          },
          [](const ExponentialDecay&) { return 0.0; },
          [](const SampledDensity& d) {
            std::size_t k = 0;
            while (k < d.values.size() && d.values[k] == 0.0) ++k;
            if (k == d.values.size()) return static_cast<double>(k - 1) * d.spacing;
            return k == 0 ? 0.0 : static_cast<double>(k - 1) * d.spacing;
          },
      },
      form);
}

std::vector<double> density_breakpoints(const DensityForm& form, double upper) {
  std::vector<double> out;
  auto add = [&](double y) {
    if (y > 0.0 && y < upper) out.push_back(y);
  };
  std::visit(overloaded{
                 [&](const IndicatorDensity& d) {
                   add(d.a);
                   add(d.b);
                 },
                 [&](const GaussianBump& d) {
                   for (int k = -4; k <= 4; ++k) add(d.center + k * d.sigma);
                 },
                 [&](const ExponentialDecay& d) {
                   for (double k : {1.0, 2.0, 4.0, 8.0, 16.0}) add(k / d.rate);
                 },
                 [&](const SampledDensity& d) {
                   for (std::size_t k = 1; k < d.values.size(); ++k) {
                     add(static_cast<double>(k) * d.spacing);
                   }
                 },
             },
             form);
  return out;
}

PositivityWitness density_witness(const DensityForm& form, std::size_t edge) {
  if (!(density_mass(form) > 0.0)) return {edge, 0.0, 0.0, 0.0, 0.0};
  return std::visit(
      overloaded{
          [edge](const IndicatorDensity& d) {
            return PositivityWitness{edge, d.height, d.b - d.a, d.b, d.a};
          },
          [edge](const GaussianBump& d) {
            if (d.center >= 0.0) {
              // eta * lambda = 2a * exp(-a^2 / 2 sigma^2) peaks at a = sigma.
              const double lo = std::max(0.0, d.center - d.sigma);
              const double hi = d.center + d.sigma;
              return PositivityWitness{edge, d.height * std::exp(-0.5), hi - lo, hi, lo};
            }
            // Decreasing on the edge: best [0, L] solves L (L - c) = sigma^2.
            const double c = d.center;
            const double len = 0.5 * (c + std::sqrt(c * c + 4.0 * d.sigma * d.sigma));
            const double z = (len - c) / d.sigma;
            return PositivityWitness{edge, d.height * std::exp(-0.5 * z * z), len, len, 0.0};
          },
          [edge](const ExponentialDecay& d) {
            const double len = 1.0 / d.rate;
            return PositivityWitness{edge, d.height * std::exp(-1.0), len, len, 0.0};
          },
          [edge](const SampledDensity& d) {
            const double vmax = *std::max_element(d.values.begin(), d.values.end());
            PositivityWitness best{edge, 0.0, 0.0, 0.0, 0.0};
            // 21 thresholds from vmax down to vmax / 1000, logarithmically spaced.
            for (int k = 0; k <= 20; ++k) {
              const double eta = vmax * std::pow(10.0, -3.0 * k / 20.0);
              const PositivityWitness w = sampled_witness_at(d, eta, edge);
              if (w.lambda > 0.0 && w.eta * w.lambda > best.eta * best.lambda) best = w;
            }
            return best;
          },
      },
      form);
}

GraphFunction::GraphFunction(std::vector<Atom> atoms, std::vector<EdgeDensity> densities)
    : atoms_(std::move(atoms)), densities_(std::move(densities)) {
  for (const Atom& a : atoms_) {
    require(std::isfinite(a.location) && a.location >= 0.0, "atom location must be >= 0");
    require(std::isfinite(a.weight) && a.weight > 0.0, "atom weight must be positive");
  }
  for (const EdgeDensity& d : densities_) validate_form(d.form);
  for (const Atom& a : atoms_) total_mass_ += a.weight;
  for (const EdgeDensity& d : densities_) total_mass_ += density_mass(d.form);
}

double GraphFunction::weighted_mass(const StarGraph& graph) const {
  check_compatible(graph);
  double m = 0.0;
  for (std::size_t j = 0; j < graph.edge_count(); ++j) m += graph.weight(j) * l1_norm(j);
  return m;
}

double GraphFunction::l1_norm(std::size_t edge) const {
  double s = 0.0;
  for (const Atom& a : atoms_) {
    if (a.edge == edge) s += a.weight;
  }
  for (const EdgeDensity& d : densities_) {
    if (d.edge == edge) s += density_mass(d.form);
  }
  return s;
}

std::size_t GraphFunction::min_edge_count() const noexcept {
  std::size_t n = 0;
  for (const Atom& a : atoms_) n = std::max(n, a.edge + 1);
  for (const EdgeDensity& d : densities_) n = std::max(n, d.edge + 1);
  return n;
}

double GraphFunction::eval_density(const GraphPoint& p) const {
  double s = 0.0;
  for (const EdgeDensity& d : densities_) {
    // At O every edge's density is seen; continuity is the caller's business.
    if (d.edge == p.edge) s += density_value(d.form, p.coord);
  }
  return s;
}

PositivityWitness GraphFunction::positivity_witness() const {
  PositivityWitness best;
  bool found = false;
  for (const EdgeDensity& d : densities_) {
    const PositivityWitness w = density_witness(d.form, d.edge);
    if (w.lambda > 0.0 && w.eta > 0.0 && (!found || w.eta * w.lambda > best.eta * best.lambda)) {
      best = w;
      found = true;
    }
  }
  if (!found) {
    throw NoWitnessError("initial datum has no density with positive mass; "
                         "only the numeric Harnack constant is available");
  }
  return best;
}

void GraphFunction::check_compatible(const StarGraph& graph) const {
  if (min_edge_count() > graph.edge_count()) {
    throw DomainError("initial datum references edge " + std::to_string(min_edge_count()) +
                      " but the graph has " + std::to_string(graph.edge_count()) + " edges");
  }
}

GraphFunction GraphFunction::from_json(std::string_view text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("initial datum JSON: ") + e.what());
  }
  require(doc.is_object(), "initial datum JSON must be an object");
  auto edge_of = [](const json& item) -> std::size_t {
    require(item.contains("edge") && item["edge"].is_number_integer(),
            "every atom and density needs an integer \"edge\" (1-based)");
    const auto e = item["edge"].get<long long>();
    require(e >= 1, "edge indices are 1-based");
    return static_cast<std::size_t>(e - 1);
  };
  auto number = [](const json& item, const char* key, std::optional<double> fallback = {}) {
    if (!item.contains(key)) {
      require(fallback.has_value(), std::string("missing numeric field \"") + key + "\"");
      return *fallback;
    }
    require(item[key].is_number(), std::string("field \"") + key + "\" must be a number");
    return item[key].get<double>();
  };

  std::vector<Atom> atoms;
  std::vector<EdgeDensity> densities;
  try {
    if (doc.contains("atoms")) {
      require(doc["atoms"].is_array(), "\"atoms\" must be an array");
      for (const json& a : doc["atoms"]) {
        atoms.push_back({edge_of(a), number(a, "loc"), number(a, "w")});
      }
    }
    if (doc.contains("densities")) {
      require(doc["densities"].is_array(), "\"densities\" must be an array");
      for (const json& d : doc["densities"]) {
        require(d.contains("kind") && d["kind"].is_string(), "density needs a string \"kind\"");
        const std::string kind = d["kind"].get<std::string>();
        const std::size_t edge = edge_of(d);
        const double height = number(d, "height", 1.0);
        if (kind == "indicator") {
          densities.push_back({edge, IndicatorDensity{number(d, "a"), number(d, "b"), height}});
        } else if (kind == "gauss") {
          densities.push_back(
              {edge, GaussianBump{number(d, "center"), number(d, "sigma"), height}});
        } else if (kind == "exp") {
          densities.push_back({edge, ExponentialDecay{number(d, "rate"), height}});
        } else if (kind == "grid") {
          require(d.contains("values") && d["values"].is_array(), "grid needs \"values\"");
          SampledDensity s{number(d, "h"), {}};
          for (const json& v : d["values"]) {
            require(v.is_number(), "grid values must be numbers");
            s.values.push_back(v.get<double>());
          }
          densities.push_back({edge, std::move(s)});
        } else {
          throw ConfigError("unknown density kind \"" + kind + "\"");
        }
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("initial datum JSON: ") + e.what());
  }
  return GraphFunction(std::move(atoms), std::move(densities));
}

std::string GraphFunction::to_json() const {
  using nlohmann::json;
  json doc = {{"atoms", json::array()}, {"densities", json::array()}};
  for (const Atom& a : atoms_) {
    doc["atoms"].push_back({{"edge", a.edge + 1}, {"loc", a.location}, {"w", a.weight}});
  }
  for (const EdgeDensity& d : densities_) {
    json item = {{"edge", d.edge + 1}};
    std::visit(overloaded{
                   [&](const IndicatorDensity& f) {
                     item.update({{"kind", "indicator"}, {"a", f.a}, {"b", f.b}, {"height", f.height}});
                   },
                   [&](const GaussianBump& f) {
                     item.update({{"kind", "gauss"},
                                  {"center", f.center},
                                  {"sigma", f.sigma},
                                  {"height", f.height}});
                   },
                   [&](const ExponentialDecay& f) {
                     item.update({{"kind", "exp"}, {"rate", f.rate}, {"height", f.height}});
                   },
                   [&](const SampledDensity& f) {
                     item.update({{"kind", "grid"}, {"h", f.spacing}, {"values", f.values}});
                   },
               },
               d.form);
    doc["densities"].push_back(std::move(item));
  }
  return doc.dump();
}

}  // namespace stargraph
