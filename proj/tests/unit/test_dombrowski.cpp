#include <cmath>

#include <gtest/gtest.h>

#include "igk/dombrowski.hpp"
#include "igk/errors.hpp"
#include "igk/families.hpp"
#include "igk/geometry.hpp"
#include "igk/rng.hpp"

using namespace igk;

namespace {

Vec vec(std::initializer_list<double> v) {
  Vec c(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) c(i++) = x;
  return c;
}

TangentBundlePoint tb(Vec base, Vec fiber) { return {{std::move(base)}, std::move(fiber)}; }

// E_θ X for B(2, ·) by direct summation.
double binomial2_mean(double theta, const std::function<double(double)>& X) {
  const double q = 1.0 / (1.0 + std::exp(-theta));
  return (1 - q) * (1 - q) * X(0) + 2 * q * (1 - q) * X(1) + q * q * X(2);
}

}  // namespace

TEST(Dombrowski, StructureExamples) {
  const auto b1 = kahler_structure_at(binomial_family(1), tb(vec({0.0}), vec({1.7})));
  EXPECT_LT((b1.G - 0.25 * Mat::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-15);
  Mat om(2, 2);
  om << 0, 0.25, -0.25, 0;
  EXPECT_LT((b1.Omega - om).cwiseAbs().maxCoeff(), 1e-15);

  const auto g = kahler_structure_at(normal_fixed_sigma_family(), tb(vec({0.4}), vec({-2.0})));
  EXPECT_LT((g.G - Mat::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-15);

  const auto c = kahler_structure_at(categorical_family(4), tb(vec({0.1, 0.2, -0.3}), vec({1, 2, 3})));
  EXPECT_LT((c.J * c.J + Mat::Identity(6, 6)).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT(structure_compatibility_residual(c), 1e-12);
}

TEST(Dombrowski, SplitVectorsUseTheBlocks) {
  const auto fam = categorical_family(3);
  const TangentBundlePoint p = tb(vec({0.3, -0.2}), vec({0.5, 0.1}));
  const auto s = kahler_structure_at(fam, p);
  const Mat h = fisher_metric_hessian(fam, p.base).entries;
  const SplitTangentVector a{p, vec({1, 2}), vec({-1, 0.5})};
  const SplitTangentVector b{p, vec({0.3, -0.4}), vec({2, 1})};
  EXPECT_NEAR(s.metric(a, b), a.horizontal.dot(h * b.horizontal) + a.vertical.dot(h * b.vertical), 1e-14);
  EXPECT_NEAR(s.symplectic(a, b), a.horizontal.dot(h * b.vertical) - a.vertical.dot(h * b.horizontal), 1e-14);
}

TEST(Dombrowski, ClosednessExamples) {
  EXPECT_LT(omega_closedness_residual(categorical_family(3), tb(vec({0.2, -0.1}), vec({0, 0}))), 1e-6);
  EXPECT_EQ(omega_closedness_residual(binomial_family(5), tb(vec({0.2}), vec({1}))), 0.0);
  EXPECT_LT(omega_closedness_residual(normal_family(), tb(vec({0.5, -0.8}), vec({1, 1}))), 1e-6);
}

TEST(Dombrowski, GradientExamples) {
  const auto fam = categorical_family(4);
  for (int i = 0; i < 3; ++i) {
    Vec a = Vec::Zero(4);
    a(i + 1) = 1.0;
    const Vec gr = kahler_gradient_field(fam, {a}, {vec({0.3, -1.0, 0.2})});
    EXPECT_EQ(gr, Vec::Unit(3, i));
  }
  EXPECT_EQ(kahler_gradient_field(fam, {vec({1, 0, 0, 0})}, {vec({0, 0, 0})}), Vec::Zero(3));

  const auto b2 = binomial_family(2);
  const RandomVariable X = [](double k) { return 3 * k - 1; };
  const auto f = fit_affine_observable(b2, X);
  EXPECT_NEAR(f.coefficients(0), -1.0, 1e-12);
  EXPECT_NEAR(f.coefficients(1), 3.0, 1e-12);
  for (double th : {-1.0, 0.0, 0.9}) {
    const double s = 1e-5;
    const double dE = (binomial2_mean(th + s, X) - binomial2_mean(th - s, X)) / (2 * s);
    const double q = 1.0 / (1.0 + std::exp(-th));
    const double fd_gradient = dE / (2 * q * (1 - q));
    EXPECT_NEAR(fd_gradient, 3.0, 1e-8);
    EXPECT_NEAR(kahler_gradient_field(b2, f, {vec({th})})(0), 3.0, 1e-15);
    EXPECT_NEAR(riemannian_gradient(b2, X, {vec({th})})(0), 3.0, 1e-10);
  }
}

TEST(Dombrowski, NonAffineVariableRejected) {
  EXPECT_THROW(fit_affine_observable(binomial_family(2), [](double k) { return k * k; }), NotKahlerError);
  EXPECT_THROW(fit_affine_observable(normal_fixed_sigma_family(), [](double x) { return x; }), DomainError);
}

TEST(Dombrowski, FlowExamples) {
  const auto fam = categorical_family(3);
  const TangentBundlePoint p = tb(vec({0.1, 0.4}), vec({2.0, -1.0}));
  const AffineObservable eta1{vec({0, 1, 0})};
  const auto q = hamiltonian_flow_step(fam, eta1, p, 1.0);
  EXPECT_EQ(q.base.coords, p.base.coords);
  EXPECT_EQ(q.fiber, vec({1.0, -1.0}));
  EXPECT_EQ(hamiltonian_flow_step(fam, eta1, p, 0.0).fiber, p.fiber);

  Rng rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const AffineObservable f{rng.normal_vector(3)};
    const double t1 = rng.uniform(-2, 2), t2 = rng.uniform(-2, 2);
    const auto a = hamiltonian_flow_step(fam, f, hamiltonian_flow_step(fam, f, p, t2), t1);
    const auto b = hamiltonian_flow_step(fam, f, p, t1 + t2);
    EXPECT_LT((a.fiber - b.fiber).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(Dombrowski, FlowIsometry) {
  const auto b3 = binomial_family(3);
  const auto p = tb(vec({0.5}), vec({0.2}));
  EXPECT_LT(flow_isometry_residual(b3, [](double k) { return k; }, p, 2.0), 1e-8);
  // Cov(F, c) is zero only up to rounding in the summation.
  EXPECT_LT(flow_isometry_residual(b3, [](double) { return 7.0; }, p, 3.0), 1e-20);
  EXPECT_GT(flow_isometry_residual(binomial_family(2), [](double k) { return k * k; }, tb(vec({0.3}), vec({0})), 1.0),
            1e-3);
}

TEST(DombrowskiProperty, RandomPointsPerFamily) {
  Rng rng(5);
  for (const auto& name : builtin_family_names()) {
    const auto fam = builtin_family(name);
    const int n = fam.dim();
    for (int trial = 0; trial < 10; ++trial) {
      Vec base = rng.normal_vector(n) * 0.8;
      if (name == "normal") base(1) = -rng.uniform(0.2, 2.0);
      const TangentBundlePoint p = tb(base, rng.normal_vector(n));
      const auto s = kahler_structure_at(fam, p);
      EXPECT_LT(structure_compatibility_residual(s), 1e-12) << name;
      EXPECT_EQ(s.G.topLeftCorner(n, n), fisher_metric_hessian(fam, p.base).entries) << name;
      EXPECT_LT(omega_closedness_residual(fam, p), 1e-6) << name;

      const Vec a = rng.normal_vector(n + 1), b = rng.normal_vector(n + 1);
      const AffineObservable f{a}, g{b};
      EXPECT_LT(flow_isometry_residual(fam, f.as_variable(fam), p, rng.uniform(-3, 3)), 1e-8) << name;
      EXPECT_LT(std::abs(poisson_bracket(fam, f.as_variable(fam), g.as_variable(fam), p)), 1e-9) << name;
      EXPECT_EQ(hamiltonian_flow_step(fam, f, p, 1.3).base.coords, p.base.coords) << name;
    }
  }
}
