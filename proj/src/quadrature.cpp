#include "igk/quadrature.hpp"

#include <numbers>

#include <Eigen/Eigenvalues>

#include "igk/errors.hpp"
#include "igk/linalg.hpp"

namespace igk {

namespace {

// Orthonormal Hermite functions ψ_{n-1}(x), ψ_n(x) by the stable three-term recursion.
std::pair<double, double> hermite_functions(int n, double x) {
  double prev = 0.0;
  double cur = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
  for (int k = 0; k < n; ++k) {
    const double next = std::sqrt(2.0 / (k + 1)) * x * cur - std::sqrt(static_cast<double>(k) / (k + 1)) * prev;
    prev = cur;
    cur = next;
  }
  return {prev, cur};
}

}  // namespace

GaussHermiteRule gauss_hermite(int order) {
  if (order < 1) throw DomainError("Gauss-Hermite order must be >= 1");
  // Golub-Welsch for starting values, then Newton on ψ_n to full precision.
  Mat jacobi = Mat::Zero(order, order);
  for (int k = 1; k < order; ++k) {
    jacobi(k, k - 1) = jacobi(k - 1, k) = std::sqrt(k / 2.0);
  }
  Eigen::SelfAdjointEigenSolver<Mat> solver(jacobi, Eigen::EigenvaluesOnly);
  GaussHermiteRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  rule.scaled.resize(order);
  for (int i = 0; i < order; ++i) {
    double x = solver.eigenvalues()(i);
    for (int it = 0; it < 10; ++it) {
      auto [pm1, p] = hermite_functions(order, x);
      // ψ_n' = √(2n) ψ_{n-1} − x ψ_n
      const double dp = std::sqrt(2.0 * order) * pm1 - x * p;
      if (dp == 0.0) break;
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16 * std::max(1.0, std::abs(x))) break;
    }
    auto [pm1, p] = hermite_functions(order, x);
    (void)p;
    // w e^{x²} = 1 / (n ψ_{n-1}(x)²)
    rule.nodes[i] = x;
    rule.scaled[i] = 1.0 / (order * pm1 * pm1);
    rule.weights[i] = rule.scaled[i] * std::exp(-x * x);
  }
  return rule;
}

}  // namespace igk
