#pragma once

#include <cmath>
#include <type_traits>
#include <vector>

namespace igk {

// Nodes t_i and weights w_i for ∫ g(t) e^{-t²} dt ≈ Σ w_i g(t_i).
// scaled[i] = w_i e^{t_i²}, usable for integrands that already carry their own decay.
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> scaled;
};

GaussHermiteRule gauss_hermite(int order);

// ∫ g(x) dx over the real line, for g concentrated around `center` with width `scale`.
template <class Fn>
auto integrate_real_line(const GaussHermiteRule& rule, Fn&& g, double center, double scale) {
  using R = std::decay_t<decltype(g(0.0))>;
  const double h = std::sqrt(2.0) * scale;
  R acc = (h * rule.scaled[0]) * g(center + h * rule.nodes[0]);
  for (std::size_t i = 1; i < rule.nodes.size(); ++i) {
    acc += (h * rule.scaled[i]) * g(center + h * rule.nodes[i]);
  }
  return acc;
}

}  // namespace igk
