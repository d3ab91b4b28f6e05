#include <algorithm>
#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "igk/dombrowski.hpp"
#include "igk/errors.hpp"
#include "igk/projective.hpp"
#include "igk/rng.hpp"

using namespace igk;

namespace {

constexpr double kPi = std::numbers::pi;

CVec cvec(std::initializer_list<Complex> v) {
  CVec c(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (Complex x : v) c(i++) = x;
  return c;
}

Vec vec(std::initializer_list<double> v) {
  Vec c(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) c(i++) = x;
  return c;
}

KahlerObservableCP random_observable(Rng& rng, int n) { return spectral_decompose(rng.hermitian(n)); }

// Fiber u with Σ p u = 0.
Vec centered_fiber(Rng& rng, const Vec& p) {
  Vec u = rng.normal_vector(static_cast<int>(p.size()));
  return u.array() - p.dot(u);
}

}  // namespace

TEST(Projective, TauExamples) {
  const auto a = tau(vec({0.5, 0.5}), vec({0, 0}));
  EXPECT_TRUE(a.same_point(ProjectivePoint(cvec({1, 1}))));
  const auto b = tau(vec({0.5, 0.5}), vec({kPi, -kPi}));
  EXPECT_TRUE(b.same_point(ProjectivePoint(cvec({kI, -kI}))));
  const Vec p = vec({0.5, 0.5}), u = vec({0.3, -0.3});
  Eigen::VectorXi m(2);
  m << 1, 0;
  EXPECT_TRUE(tau(p, deck_shift(p, u, m)).same_point(tau(p, u)));
  EXPECT_THROW(tau(vec({0.5, 0.5}), vec({1, 0})), DomainError);
  EXPECT_THROW(tau(vec({1.0, 0.0}), vec({0, 0})), DomainError);
}

TEST(Projective, PiExamples) {
  const Vec a = pi_projection(ProjectivePoint(cvec({1, 1})));
  EXPECT_NEAR(a(0), 0.5, 1e-15);
  EXPECT_NEAR(a(1), 0.5, 1e-15);
  const Vec b = pi_projection(ProjectivePoint(cvec({1, kI, 0})));
  EXPECT_NEAR(b(0), 0.5, 1e-15);
  EXPECT_NEAR(b(1), 0.5, 1e-15);
  EXPECT_EQ(b(2), 0.0);
}

TEST(Projective, DistanceExamples) {
  const ProjectivePoint e0(cvec({1, 0})), e1(cvec({0, 1})), d(cvec({1, 1}));
  EXPECT_NEAR(fubini_study_distance(e0, e1), kPi / 2, 1e-15);
  EXPECT_NEAR(fubini_study_distance(d, d), 0.0, 1e-7);
  EXPECT_NEAR(fubini_study_distance(e0, d), kPi / 4, 1e-15);
  EXPECT_THROW(ProjectivePoint(cvec({0, 0})), DomainError);
}

TEST(Projective, XiExamples) {
  Rng rng(3);
  const CMat iI = kI * CMat::Identity(2, 2);
  for (int t = 0; t < 5; ++t) {
    const ProjectivePoint z(rng.unit_complex_vector(2));
    EXPECT_NEAR(xi_A(iI, z), -0.5, 1e-15);
    EXPECT_EQ(xi_A(CMat::Zero(2, 2), z), 0.0);
  }
  EXPECT_THROW(xi_A(CMat::Identity(2, 2), ProjectivePoint(cvec({1, 0}))), DomainError);
}

TEST(Projective, XiIsLieMorphism) {
  // For skew-Hermitian A, B: ξ^{[A,B]}(z) = Im⟨Az, Bz⟩, which the FD bracket must reproduce.
  Rng rng(17);
  for (int t = 0; t < 20; ++t) {
    const int n = 2 + t % 4;
    const CMat A = kI * rng.hermitian(n), B = kI * rng.hermitian(n);
    const ProjectivePoint z(rng.unit_complex_vector(n));
    const CVec& v = z.homog();
    const double oracle = hermitian(A * v, B * v).imag();
    EXPECT_NEAR(xi_A(A * B - B * A, z), oracle, 1e-12);
    const double fd = fs_poisson_bracket([&](const ProjectivePoint& w) { return xi_A(A, w); },
                                         [&](const ProjectivePoint& w) { return xi_A(B, w); }, z);
    EXPECT_NEAR(fd, oracle, 1e-6);
  }
}

TEST(Projective, SpectralDecomposeExamples) {
  CMat D = CMat::Zero(3, 3);
  D.diagonal() << 1.0, 2.0, 4.0;
  const auto d = spectral_decompose(D);
  EXPECT_LT((d.X - vec({1, 2, 4})).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LT((d.U.cwiseAbs() - CMat::Identity(3, 3).cwiseAbs()).cwiseAbs().maxCoeff(), 1e-14);

  CMat S(2, 2);
  S << 0, 1, 1, 0;
  const auto s = spectral_decompose(S);
  EXPECT_NEAR(s.X(0), -1.0, 1e-15);
  EXPECT_NEAR(s.X(1), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(s.U(0, 0)), 1 / std::sqrt(2.0), 1e-15);

  Rng rng(8);
  for (int t = 0; t < 50; ++t) {
    const int n = 2 + t % 5;
    const CMat A = rng.hermitian(n);
    const auto obs = spectral_decompose(A);
    const CVec v = rng.unit_complex_vector(n);
    EXPECT_NEAR(obs(ProjectivePoint(v)), hermitian(v, A * v).real(), 1e-10);
    EXPECT_LT((obs.hermitian_matrix() - A).cwiseAbs().maxCoeff(), 1e-12);
  }
  EXPECT_THROW(spectral_decompose(kI * CMat::Identity(2, 2)), DomainError);
}

TEST(Projective, SpectrumExamples) {
  const KahlerObservableCP bern{vec({0, 1}), CMat::Identity(2, 2)};
  auto r = spectrum_and_probabilities(bern, ProjectivePoint(cvec({1, 0})));
  EXPECT_EQ(r.probabilities, (std::vector<double>{1.0, 0.0}));
  r = spectrum_and_probabilities(bern, ProjectivePoint(cvec({1, 1})));
  EXPECT_NEAR(r.probabilities[0], 0.5, 1e-15);
  EXPECT_NEAR(r.probabilities[1], 0.5, 1e-15);

  const KahlerObservableCP flat{vec({5, 5}), CMat::Identity(2, 2)};
  r = spectrum_and_probabilities(flat, ProjectivePoint(cvec({0.3, kI})));
  ASSERT_EQ(r.eigenvalues.size(), 1u);
  EXPECT_EQ(r.eigenvalues[0], 5.0);
  EXPECT_EQ(r.multiplicities[0], 2);
  EXPECT_NEAR(r.probabilities[0], 1.0, 1e-15);
}

TEST(Projective, CramerRaoExamples) {
  const KahlerObservableCP bern{vec({0, 1}), CMat::Identity(2, 2)};
  const ProjectivePoint z(cvec({1, 1}));
  EXPECT_NEAR(variance_at(bern, z), 0.25, 1e-15);
  EXPECT_NEAR(0.25 * fs_gradient_norm_sq([&](const ProjectivePoint& w) { return bern(w); }, z), 0.25, 1e-6);
  EXPECT_LT(cramer_rao_residual(bern, z), 1e-6);
  // ×4 normalization carries the factor the other way.
  EXPECT_NEAR(fs_gradient_norm_sq([&](const ProjectivePoint& w) { return bern(w); }, z,
                                  FubiniStudyScale::Kahlerification),
              0.25, 1e-6);

  Rng rng(21);
  const auto obs = random_observable(rng, 4);
  for (int k = 0; k < 4; ++k) {
    const ProjectivePoint e(obs.eigenvector(k));
    EXPECT_NEAR(variance_at(obs, e), 0.0, 1e-12);
    EXPECT_LT(cramer_rao_residual(obs, e), 1e-8);
  }
}

TEST(Projective, EigenmanifoldExamples) {
  const KahlerObservableCP bern{vec({0, 1}), CMat::Identity(2, 2)};
  const auto pr = eigenmanifold_projection(bern, 1.0, ProjectivePoint(cvec({1, 1})));
  EXPECT_TRUE(pr.point.same_point(ProjectivePoint(cvec({0, 1}))));
  EXPECT_NEAR(pr.distance, kPi / 4, 1e-15);
  EXPECT_NEAR(std::pow(std::cos(pr.distance), 2), 0.5, 1e-15);

  const auto on = eigenmanifold_projection(bern, 0.0, ProjectivePoint(cvec({1, 0})));
  EXPECT_NEAR(on.distance, 0.0, 1e-7);
  EXPECT_THROW(eigenmanifold_projection(bern, 0.0, ProjectivePoint(cvec({0, 1}))), DomainError);
  EXPECT_THROW(eigenmanifold_projection(bern, 0.5, ProjectivePoint(cvec({1, 1}))), DomainError);
}

TEST(Projective, TrinomialPullbackByHand) {
  // n = 2 chart: p = (e^θ, 1)/(1+e^θ), u = (p₂θ̇, −p₁θ̇); τ differentiated here independently.
  auto z_of = [](double th, double thd) {
    const double p1 = 1 / (1 + std::exp(-th)), p2 = 1 - p1;
    CVec z(2);
    z << std::sqrt(p1) * std::exp(0.5 * kI * (p2 * thd)), std::sqrt(p2) * std::exp(0.5 * kI * (-p1 * thd));
    return z;
  };
  for (auto [th, thd] : {std::pair{0.0, 0.0}, std::pair{0.7, -1.2}, std::pair{-1.4, 2.5}}) {
    const double s = 1e-6;
    const CVec z = z_of(th, thd);
    auto horiz = [&](CVec d) { return CVec(d - hermitian(z, d) * z); };
    const CVec dth = horiz((z_of(th + s, thd) - z_of(th - s, thd)) / (2 * s));
    const CVec dthd = horiz((z_of(th, thd + s) - z_of(th, thd - s)) / (2 * s));
    const double p1 = 1 / (1 + std::exp(-th));
    const double h = p1 * (1 - p1);
    EXPECT_NEAR(hermitian(dth, dth).real(), 0.25 * h, 1e-9);
    EXPECT_NEAR(hermitian(dthd, dthd).real(), 0.25 * h, 1e-9);
    EXPECT_NEAR(hermitian(dth, dthd).real(), 0.0, 1e-9);
    EXPECT_NEAR(hermitian(dth, dthd).imag(), 0.25 * h, 1e-9);
    if (th == 0.0) EXPECT_NEAR(0.25 * h, 1.0 / 16, 1e-15);

    const Vec p = vec({p1, 1 - p1}), u = vec({(1 - p1) * thd, -p1 * thd});
    const TangentBundlePoint at = categorical_chart_point(p, u);
    EXPECT_NEAR(at.base.coords(0), th, 1e-12);
    EXPECT_NEAR(at.fiber(0), thd, 1e-12);
    const SplitTangentVector a{at, vec({1}), vec({0})}, b{at, vec({0}), vec({1})};
    const auto r = pullback_scaling_check(p, u, {{a, a}, {a, b}, {b, b}, {b, a}});
    EXPECT_LT(r.metric, 1e-5);
    EXPECT_LT(r.symplectic, 1e-5);
    const SplitTangentVector zero{at, vec({0}), vec({0})};
    const auto rz = pullback_scaling_check(p, u, {{zero, zero}, {zero, a}});
    EXPECT_EQ(rz.metric, 0.0);
    EXPECT_EQ(rz.symplectic, 0.0);
  }
}

TEST(ProjectiveProperty, PiTauIdentityAndDeckInvariance) {
  Rng rng(99);
  for (int t = 0; t < 50; ++t) {
    const int n = 2 + t % 5;
    const Vec p = rng.simplex_point(n);
    const Vec u = centered_fiber(rng, p);
    EXPECT_LT((pi_projection(tau(p, u)) - p).cwiseAbs().maxCoeff(), 1e-14);
    Eigen::VectorXi m(n);
    for (int i = 0; i < n; ++i) m(i) = rng.integer(-3, 3);
    EXPECT_TRUE(tau(p, deck_shift(p, u, m)).same_point(tau(p, u)));
  }
}

TEST(ProjectiveProperty, RandomPullbacks) {
  Rng rng(4);
  for (int n : {3, 4})
    for (int t = 0; t < 20; ++t) {
      const Vec p = rng.simplex_point(n, 0.05);
      const Vec u = centered_fiber(rng, p);
      const TangentBundlePoint at = categorical_chart_point(p, u);
      std::vector<std::pair<SplitTangentVector, SplitTangentVector>> pairs;
      for (int k = 0; k < 4; ++k)
        pairs.push_back({{at, rng.normal_vector(n - 1), rng.normal_vector(n - 1)},
                         {at, rng.normal_vector(n - 1), rng.normal_vector(n - 1)}});
      const auto r = pullback_scaling_check(p, u, pairs);
      EXPECT_LT(r.metric, 1e-5);
      EXPECT_LT(r.symplectic, 1e-5);
    }
}

TEST(ProjectiveProperty, CramerRaoAndCosSquared) {
  Rng rng(12);
  for (int t = 0; t < 100; ++t) {
    const int n = 2 + t % 5;
    const auto obs = random_observable(rng, n);
    const ProjectivePoint z(rng.unit_complex_vector(n));
    EXPECT_LT(cramer_rao_residual(obs, z), 1e-5);
    const auto rep = spectrum_and_probabilities(obs, z);
    double total = 0.0;
    for (std::size_t k = 0; k < rep.eigenvalues.size(); ++k) {
      EXPECT_GE(rep.probabilities[k], 0.0);
      EXPECT_LE(rep.probabilities[k], 1.0 + 1e-15);
      total += rep.probabilities[k];
      const auto pr = eigenmanifold_projection(obs, rep.eigenvalues[k], z);
      EXPECT_NEAR(std::pow(std::cos(pr.distance), 2), rep.probabilities[k], 1e-10);
    }
    EXPECT_NEAR(total, 1.0, 1e-10);
  }
}

TEST(ProjectiveProperty, ProbabilitiesIgnorePhaseAndScale) {
  Rng rng(31);
  const auto obs = random_observable(rng, 4);
  const CVec v = rng.complex_normal_vector(4);
  const auto a = spectrum_and_probabilities(obs, ProjectivePoint(v));
  const auto b = spectrum_and_probabilities(obs, ProjectivePoint(v * std::polar(3.7, 1.1)));
  for (std::size_t k = 0; k < a.probabilities.size(); ++k) EXPECT_NEAR(a.probabilities[k], b.probabilities[k], 1e-14);
}

TEST(ProjectiveProperty, SpectrumIndependentOfBasis) {
  Rng rng(77);
  for (int t = 0; t < 10; ++t) {
    const int n = 3 + t % 3;
    const CMat A = rng.hermitian(n);
    // Conjugate by a permutation and compare sorted spectra.
    Eigen::PermutationMatrix<Eigen::Dynamic> P(n);
    P.setIdentity();
    std::reverse(P.indices().data(), P.indices().data() + n);
    const CMat B = P * A * P.transpose();
    Vec a = spectral_decompose(A).X, b = spectral_decompose(B).X;
    std::sort(a.data(), a.data() + n);
    std::sort(b.data(), b.data() + n);
    EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(ProjectiveProperty, EigenpointsAreCritical) {
  Rng rng(55);
  const auto obs = random_observable(rng, 5);
  const ProjectiveFunction f = [&](const ProjectivePoint& w) { return obs(w); };
  for (int k = 0; k < 5; ++k) EXPECT_LT(fs_gradient(f, ProjectivePoint(obs.eigenvector(k))).norm(), 1e-6);
}
