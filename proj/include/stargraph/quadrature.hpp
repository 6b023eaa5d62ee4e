#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <queue>
#include <string>
#include <vector>

#include "stargraph/errors.hpp"

namespace stargraph {

enum class PanelRule { kGaussKronrod15 };

/// Controls every semi-infinite integral: tails are cut where the Gaussian
/// factor drops below tail_eps, and panels are bisected until the summed
/// Kronrod-Gauss difference is below rel_tol of the integral.
struct QuadratureSpec {
  double tail_eps = 1e-16;
  double rel_tol = 1e-10;
  int max_panels = 4096;
  PanelRule panel_rule = PanelRule::kGaussKronrod15;

  void validate() const {
    if (!(tail_eps > 0.0 && tail_eps < 1.0)) throw DomainError("tail_eps must lie in (0,1)");
    if (!(rel_tol > 0.0)) throw DomainError("rel_tol must be positive");
    if (max_panels < 8) throw DomainError("max_panels must be at least 8");
  }

  [[nodiscard]] QuadratureSpec tightened(double factor) const {
    QuadratureSpec q = *this;
    q.rel_tol /= factor;
    q.max_panels *= 4;
    return q;
  }
};

template <std::size_t K>
using Values = std::array<double, K>;

template <std::size_t K>
struct QuadratureResult {
  Values<K> integral{};
  Values<K> error{};
  int panels = 0;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss-Legendre rule on [-1, 1].
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for Kronrod nodes 1, 3, 5 and 7.
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <std::size_t K>
struct Panel {
  double a;
  double b;
  Values<K> value;
  Values<K> error;
  double priority;
};

template <std::size_t K, class F>
void gauss_kronrod15(F& f, double a, double b, Values<K>& value, Values<K>& error) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  Values<K> kronrod{};
  Values<K> gauss{};
  const Values<K> fc = f(center);
  for (std::size_t k = 0; k < K; ++k) {
    kronrod[k] = fc[k] * kKronrodWeights[7];
    gauss[k] = fc[k] * kGaussWeights[3];
  }
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    const Values<K> f1 = f(center - dx);
    const Values<K> f2 = f(center + dx);
    for (std::size_t k = 0; k < K; ++k) {
      const double s = f1[k] + f2[k];
      kronrod[k] += kKronrodWeights[j] * s;
      if (j % 2 == 1) gauss[k] += kGaussWeights[j / 2] * s;
    }
  }
  for (std::size_t k = 0; k < K; ++k) {
    value[k] = kronrod[k] * half;
    error[k] = std::abs((kronrod[k] - gauss[k]) * half);
  }
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod integration of a vector-valued integrand
/// over [breaks.front(), breaks.back()], with the interior breakpoints as
/// initial panel boundaries. Component k converges when its summed error is
/// at most rel_tol * max(|I_k|, floor_k, coupling_k * |I_0|); the coupling
/// lets derivative components that happen to vanish be measured against the
/// value component. Throws QuadratureError once more than max_panels
/// bisections have been spent.
template <std::size_t K, class F>
QuadratureResult<K> integrate(F&& f, std::vector<double> breaks, const QuadratureSpec& spec,
                              const Values<K>& floors = {}, const Values<K>& coupling = {}) {
  QuadratureResult<K> result;
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  if (breaks.size() < 2) return result;

  using Panel = detail::Panel<K>;
  std::vector<Panel> panels;
  panels.reserve(breaks.size() - 1);
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    Panel p{breaks[i], breaks[i + 1], {}, {}, 0.0};
    detail::gauss_kronrod15<K>(f, p.a, p.b, p.value, p.error);
    panels.push_back(p);
  }

  auto totals = [&panels] {
    Values<K> v{};
    Values<K> e{};
    for (const Panel& p : panels) {
      for (std::size_t k = 0; k < K; ++k) {
        v[k] += p.value[k];
        e[k] += p.error[k];
      }
    }
    return std::pair{v, e};
  };

  auto [value, error] = totals();
  // Priorities are normalized by a scale frozen from the first pass.
  Values<K> scale{};
  for (std::size_t k = 0; k < K; ++k) {
    double abs_sum = 0.0;
    for (const Panel& p : panels) abs_sum += std::abs(p.value[k]);
    scale[k] = std::max({std::abs(value[k]), floors[k], coupling[k] * std::abs(value[0]),
                         1e-300 * abs_sum, 1e-300});
  }
  auto priority = [&scale](const Panel& p) {
    double w = 0.0;
    for (std::size_t k = 0; k < K; ++k) w = std::max(w, p.error[k] / scale[k]);
    return w;
  };
  auto cmp = [&panels](std::size_t i, std::size_t j) {
    return panels[i].priority < panels[j].priority;
  };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(cmp)> heap(cmp);
  for (std::size_t i = 0; i < panels.size(); ++i) {
    panels[i].priority = priority(panels[i]);
    heap.push(i);
  }

  auto converged = [&](const Values<K>& v, const Values<K>& e) {
    for (std::size_t k = 0; k < K; ++k) {
      const double tol =
          spec.rel_tol * std::max({std::abs(v[k]), floors[k], coupling[k] * std::abs(v[0])});
      if (!(e[k] <= tol)) return false;
    }
    return true;
  };

  int bisections = 0;
  while (!converged(value, error)) {
    if (bisections >= spec.max_panels) {
      // Incremental totals drift; confirm with an exact resum before giving up.
      std::tie(value, error) = totals();
      if (converged(value, error)) break;
      throw QuadratureError("adaptive quadrature did not converge within " +
                            std::to_string(spec.max_panels) + " panel bisections");
    }
    const std::size_t worst = heap.top();
    heap.pop();
    Panel old = panels[worst];
    const double mid = 0.5 * (old.a + old.b);
    if (!(mid > old.a && mid < old.b)) {
      throw QuadratureError("adaptive quadrature exhausted floating-point resolution");
    }
    Panel left{old.a, mid, {}, {}, 0.0};
    Panel right{mid, old.b, {}, {}, 0.0};
    detail::gauss_kronrod15<K>(f, left.a, left.b, left.value, left.error);
    detail::gauss_kronrod15<K>(f, right.a, right.b, right.value, right.error);
    for (std::size_t k = 0; k < K; ++k) {
      value[k] += left.value[k] + right.value[k] - old.value[k];
      error[k] += left.error[k] + right.error[k] - old.error[k];
    }
    left.priority = priority(left);
    right.priority = priority(right);
    panels[worst] = left;
    panels.push_back(right);
    heap.push(worst);
    heap.push(panels.size() - 1);
    ++bisections;
  }

  std::tie(result.integral, result.error) = totals();
  result.panels = static_cast<int>(panels.size());
  return result;
}

}  // namespace stargraph
