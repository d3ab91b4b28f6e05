#include "igk/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <future>
#include <limits>
#include <numbers>

#include "igk/dombrowski.hpp"
#include "igk/errors.hpp"
#include "igk/families.hpp"
#include "igk/geometry.hpp"
#include "igk/oscillator.hpp"
#include "igk/projective.hpp"
#include "igk/rng.hpp"
#include "igk/spin.hpp"

namespace igk {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct CheckSpec {
  std::string id;
  std::string description;
  double tolerance;
  bool finite_difference;  // loosened tenfold under the fd profile
  std::function<double(Rng&)> run;
};

using Checks = std::vector<CheckSpec>;

double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

Vec sample_theta(const ExponentialFamily& fam, Rng& rng) {
  Vec t(fam.dim());
  for (int i = 0; i < fam.dim(); ++i) {
    const double lo = std::isfinite(fam.domain().lower(i)) ? fam.domain().lower(i) + 0.2 : -2.0;
    const double hi = std::isfinite(fam.domain().upper(i)) ? fam.domain().upper(i) - 0.2 : 2.0;
    t(i) = rng.uniform(lo, hi);
  }
  return t;
}

// max over `count` random θ of metric(θ)
double over_grid(const ExponentialFamily& fam, Rng& rng, int count, const std::function<double(const NaturalPoint&)>& metric) {
  double worst = 0.0;
  for (int i = 0; i < count; ++i) worst = std::max(worst, metric({sample_theta(fam, rng)}));
  return worst;
}

Checks families_checks() {
  Checks out;
  for (const std::string& name : builtin_family_names()) {
    const ExponentialFamily fam = builtin_family(name);
    const bool finite = fam.space().is_finite();
    out.push_back({"families.normalization." + name, "density sums/integrates to 1 on 20 random θ",
                   finite ? 1e-9 : 1e-7, false, [fam](Rng& rng) {
                     return over_grid(fam, rng, 20, [&](const NaturalPoint& t) { return std::abs(total_mass(fam, t) - 1.0); });
                   }});
    out.push_back({"families.round_trip." + name, "θ → η → θ on 20 random θ", 1e-8, false, [fam](Rng& rng) {
                     return over_grid(fam, rng, 20, [&](const NaturalPoint& t) {
                       const NaturalPoint back = expectation_to_natural(fam, natural_to_expectation(fam, t));
                       return (back.coords - t.coords).lpNorm<Eigen::Infinity>();
                     });
                   }});
    out.push_back({"families.eta_two_ways." + name, "∂ψ equals E[F] by summation/quadrature", 1e-7, false,
                   [fam](Rng& rng) {
                     return over_grid(fam, rng, 20, [&](const NaturalPoint& t) {
                       return (natural_to_expectation(fam, t).coords - natural_to_expectation_by_moments(fam, t).coords)
                           .lpNorm<Eigen::Infinity>();
                     });
                   }});
    out.push_back({"families.rank." + name, "{1, F} linearly independent (0 = independent)", 0.0, false,
                   [fam](Rng&) { return statistics_independent(fam) ? 0.0 : 1.0; }});
  }
  return out;
}

Checks geometry_checks() {
  Checks out;
  for (const std::string& name : builtin_family_names()) {
    const ExponentialFamily fam = builtin_family(name);
    out.push_back({"geometry.metric_two_routes." + name, "E[s sᵀ] equals Hess ψ", 1e-7, false, [fam](Rng& rng) {
                     return over_grid(fam, rng, 20, [&](const NaturalPoint& t) {
                       return max_abs(fisher_metric(fam, t).entries - fisher_metric_hessian(fam, t).entries);
                     });
                   }});
    out.push_back({"geometry.metric_spd." + name, "Fisher metric symmetric positive definite", 1e-12, false,
                   [fam](Rng& rng) {
                     return over_grid(fam, rng, 20, [&](const NaturalPoint& t) {
                       const Mat h = fisher_metric(fam, t).entries;
                       Eigen::LLT<Mat> llt(h);
                       return llt.info() == Eigen::Success ? max_abs(h - h.transpose()) : 1.0;
                     });
                   }});
    out.push_back({"geometry.e_connection_natural." + name, "Γ^(1) vanishes in the θ-chart", 1e-9, false,
                   [fam](Rng& rng) {
                     return over_grid(fam, rng, 20, [&](const NaturalPoint& t) { return christoffel_alpha(fam, t, 1.0).max_abs(); });
                   }});
    out.push_back({"geometry.m_connection_expectation." + name, "Γ^(-1) vanishes in the η-chart", 1e-5, true,
                   [fam](Rng& rng) {
                     return over_grid(fam, rng, 20, [&](const NaturalPoint& t) {
                       return christoffel_alpha_expectation_chart(fam, t, -1.0).max_abs();
                     });
                   }});
    for (double alpha : {1.0, -1.0}) {
      const std::string tag = alpha > 0 ? "e" : "m";
      out.push_back({"geometry.curvature_" + tag + "." + name, "‖R^(" + std::string(alpha > 0 ? "+1" : "-1") + ")‖∞ on 20 random θ",
                     1e-5, true, [fam, alpha](Rng& rng) {
                       return over_grid(fam, rng, 20, [&](const NaturalPoint& t) { return curvature_tensor(fam, t, alpha).max_abs(); });
                     }});
    }
    out.push_back({"geometry.duality." + name, "∂h = Γ^(α) + Γ^(-α) for α ∈ {-1, 0, 0.5, 1}", 1e-5, true,
                   [fam](Rng& rng) {
                     return over_grid(fam, rng, 10, [&](const NaturalPoint& t) {
                       double w = 0.0;
                       for (double a : {-1.0, 0.0, 0.5, 1.0}) w = std::max(w, duality_residual(fam, t, a));
                       return w;
                     });
                   }});
    out.push_back({"geometry.cross_duality." + name, "h · (∂η/∂θ)^-1 = I", 1e-7, true, [fam](Rng& rng) {
                     return over_grid(fam, rng, 20, [&](const NaturalPoint& t) { return cross_duality_residual(fam, t); });
                   }});
    out.push_back({"geometry.curvature_skew_duality." + name, "h(R(X,Y)Z,W) = -h(R*(X,Y)W,Z) at α = 0.5", 2e-4, true,
                   [fam](Rng& rng) {
                     return over_grid(fam, rng, 5, [&](const NaturalPoint& t) { return curvature_skew_duality_residual(fam, t, 0.5); });
                   }});
  }
  return out;
}

TangentBundlePoint sample_tangent(const ExponentialFamily& fam, Rng& rng) {
  return {{sample_theta(fam, rng)}, 2.0 * rng.normal_vector(fam.dim())};
}

AffineObservable sample_affine(const ExponentialFamily& fam, Rng& rng) { return {rng.normal_vector(fam.dim() + 1)}; }

double over_tangent(const ExponentialFamily& fam, Rng& rng, int count,
                    const std::function<double(const TangentBundlePoint&)>& metric) {
  double worst = 0.0;
  for (int i = 0; i < count; ++i) worst = std::max(worst, metric(sample_tangent(fam, rng)));
  return worst;
}

Checks dombrowski_checks() {
  Checks out;
  for (const std::string& name : builtin_family_names()) {
    const ExponentialFamily fam = builtin_family(name);
    out.push_back({"dombrowski.structure." + name, "J² = -I, ω = g(J·,·), J orthogonal at 100 points", 1e-12, false,
                   [fam](Rng& rng) {
                     return over_tangent(fam, rng, 100, [&](const TangentBundlePoint& p) {
                       return structure_compatibility_residual(kahler_structure_at(fam, p));
                     });
                   }});
    out.push_back({"dombrowski.submersion." + name, "base block of G equals h", 0.0, false, [fam](Rng& rng) {
                     return over_tangent(fam, rng, 20, [&](const TangentBundlePoint& p) {
                       const Mat G = kahler_structure_at(fam, p).G;
                       return max_abs(G.topLeftCorner(fam.dim(), fam.dim()) - fisher_metric_hessian(fam, p.base).entries);
                     });
                   }});
    out.push_back({"dombrowski.closedness." + name, "dω = 0 at 100 points", 1e-6, true, [fam](Rng& rng) {
                     return over_tangent(fam, rng, 100, [&](const TangentBundlePoint& p) { return omega_closedness_residual(fam, p); });
                   }});
    out.push_back({"dombrowski.flow_isometry." + name, "flow of an affine observable preserves g at 100 points", 1e-8, true,
                   [fam](Rng& rng) {
                     return over_tangent(fam, rng, 100, [&](const TangentBundlePoint& p) {
                       const AffineObservable f = sample_affine(fam, rng);
                       return flow_isometry_residual(fam, f.as_variable(fam), p, rng.uniform(-2.0, 2.0));
                     });
                   }});
    out.push_back({"dombrowski.gradient." + name, "h⁻¹Cov(F, X) equals the affine coefficients", 1e-8, false,
                   [fam](Rng& rng) {
                     return over_tangent(fam, rng, 20, [&](const TangentBundlePoint& p) {
                       const AffineObservable f = sample_affine(fam, rng);
                       return (riemannian_gradient(fam, f.as_variable(fam), p.base) - kahler_gradient_field(fam, f, p.base))
                           .lpNorm<Eigen::Infinity>();
                     });
                   }});
    out.push_back({"dombrowski.bracket_commutative." + name, "ω(X_f, X_g) = 0 for affine observables", 1e-12, false,
                   [fam](Rng& rng) {
                     return over_tangent(fam, rng, 20, [&](const TangentBundlePoint& p) {
                       const AffineObservable f = sample_affine(fam, rng), g = sample_affine(fam, rng);
                       return std::abs(poisson_bracket(fam, f.as_variable(fam), g.as_variable(fam), p));
                     });
                   }});
  }
  return out;
}

std::pair<Vec, Vec> sample_exponential_rep(int n, Rng& rng) {
  const Vec p = rng.simplex_point(n);
  Vec u = rng.normal_vector(n);
  u.array() -= p.dot(u);
  return {p, u};
}

std::vector<std::pair<SplitTangentVector, SplitTangentVector>> coordinate_pairs(const TangentBundlePoint& at) {
  const auto m = at.base.coords.size();
  std::vector<SplitTangentVector> basis;
  for (Eigen::Index k = 0; k < 2 * m; ++k) {
    Vec e = Vec::Zero(2 * m);
    e(k) = 1.0;
    basis.push_back({at, e.head(m), e.tail(m)});
  }
  std::vector<std::pair<SplitTangentVector, SplitTangentVector>> pairs;
  for (const auto& a : basis)
    for (const auto& b : basis) pairs.emplace_back(a, b);
  return pairs;
}

KahlerObservableCP sample_observable(int n, Rng& rng) { return spectral_decompose(rng.hermitian(n)); }

Checks projective_checks() {
  Checks out;
  out.push_back({"projective.pi_tau", "π∘τ = id on 50 random (p, u)", 1e-14, false, [](Rng& rng) {
                   double w = 0.0;
                   for (int i = 0; i < 50; ++i) {
                     const auto [p, u] = sample_exponential_rep(rng.integer(2, 6), rng);
                     w = std::max(w, (pi_projection(tau(p, u)) - p).lpNorm<Eigen::Infinity>());
                   }
                   return w;
                 }});
  out.push_back({"projective.deck_invariance", "τ(p, u) = τ(p, u + 4π(m − E_p m)) for 20 shifts", kProjectiveTolerance,
                 false, [](Rng& rng) {
                   double w = 0.0;
                   for (int i = 0; i < 20; ++i) {
                     const int n = rng.integer(2, 5);
                     const auto [p, u] = sample_exponential_rep(n, rng);
                     Eigen::VectorXi m(n);
                     for (int k = 0; k < n; ++k) m(k) = rng.integer(-3, 3);
                     const ProjectivePoint a = tau(p, u), b = tau(p, deck_shift(p, u, m));
                     w = std::max(w, 1.0 - std::abs(hermitian(a.homog(), b.homog())));
                   }
                   return w;
                 }});
  for (int n : {3, 4}) {
    out.push_back({"projective.pullback_metric.P" + std::to_string(n), "τ*g_FS = g/4 at 20 random points", 1e-5, true,
                   [n](Rng& rng) {
                     double w = 0.0;
                     for (int i = 0; i < 20; ++i) {
                       const auto [p, u] = sample_exponential_rep(n, rng);
                       w = std::max(w, pullback_scaling_check(p, u, coordinate_pairs(categorical_chart_point(p, u))).metric);
                     }
                     return w;
                   }});
    out.push_back({"projective.pullback_symplectic.P" + std::to_string(n), "τ*ω_FS = ω/4 at 20 random points", 1e-5,
                   true, [n](Rng& rng) {
                     double w = 0.0;
                     for (int i = 0; i < 20; ++i) {
                       const auto [p, u] = sample_exponential_rep(n, rng);
                       w = std::max(w, pullback_scaling_check(p, u, coordinate_pairs(categorical_chart_point(p, u))).symplectic);
                     }
                     return w;
                   }});
  }
  out.push_back({"projective.cramer_rao", "V(X) = ¼‖grad f‖² on 100 random (A, z), n ≤ 6", 1e-5, true, [](Rng& rng) {
                   double w = 0.0;
                   for (int i = 0; i < 100; ++i) {
                     const int n = rng.integer(2, 6);
                     const KahlerObservableCP obs = sample_observable(n, rng);
                     w = std::max(w, cramer_rao_residual(obs, ProjectivePoint(rng.unit_complex_vector(n))));
                   }
                   return w;
                 }});
  out.push_back({"projective.cos2_law", "P(λ) = cos² d([z], M_λ) on 100 random instances", 1e-10, false, [](Rng& rng) {
                   double w = 0.0;
                   for (int i = 0; i < 100; ++i) {
                     const int n = rng.integer(2, 6);
                     CMat A = rng.hermitian(n);
                     // Force a repeated eigenvalue now and then.
                     if (i % 3 == 0) {
                       const KahlerObservableCP o = spectral_decompose(A);
                       Vec X = o.X;
                       X(1) = X(0);
                       A = KahlerObservableCP{X, o.U}.hermitian_matrix();
                     }
                     const KahlerObservableCP obs = spectral_decompose(A);
                     const ProjectivePoint z(rng.unit_complex_vector(n));
                     const SpectralReport r = spectrum_and_probabilities(obs, z);
                     const std::size_t pick = static_cast<std::size_t>(rng.integer(0, static_cast<int>(r.eigenvalues.size()) - 1));
                     const EigenProjection proj = eigenmanifold_projection(obs, r.eigenvalues[pick], z);
                     w = std::max(w, std::abs(std::pow(std::cos(proj.distance), 2) - r.probabilities[pick]));
                   }
                   return w;
                 }});
  out.push_back({"projective.xi_lie_morphism", "ξ^[A,B] = {ξ^A, ξ^B} at 20 random points", 1e-6, true, [](Rng& rng) {
                   double w = 0.0;
                   for (int i = 0; i < 20; ++i) {
                     const int n = rng.integer(2, 4);
                     const CMat A = kI * rng.hermitian(n), B = kI * rng.hermitian(n);
                     const ProjectivePoint z(rng.unit_complex_vector(n));
                     const double lhs = xi_A(A * B - B * A, z);
                     const double rhs = fs_poisson_bracket([&](const ProjectivePoint& q) { return xi_A(A, q); },
                                                           [&](const ProjectivePoint& q) { return xi_A(B, q); }, z);
                     w = std::max(w, std::abs(lhs - rhs));
                   }
                   return w;
                 }});
  out.push_back({"projective.spectral_reconstruction", "Σ X_k |(Uz)_k|² = ⟨z, Az⟩ on 50 random z", 1e-10, false,
                 [](Rng& rng) {
                   double w = 0.0;
                   for (int i = 0; i < 50; ++i) {
                     const int n = rng.integer(2, 6);
                     const CMat A = rng.hermitian(n);
                     const KahlerObservableCP obs = spectral_decompose(A);
                     const ProjectivePoint z(rng.unit_complex_vector(n));
                     w = std::max(w, std::abs(obs(z) - hermitian(z.homog(), A * z.homog()).real()));
                   }
                   return w;
                 }});
  out.push_back({"projective.probabilities", "spectral probabilities sum to 1, phase invariant", 1e-10, false, [](Rng& rng) {
                   double w = 0.0;
                   for (int i = 0; i < 50; ++i) {
                     const int n = rng.integer(2, 6);
                     const KahlerObservableCP obs = sample_observable(n, rng);
                     const CVec v = rng.unit_complex_vector(n);
                     const SpectralReport a = spectrum_and_probabilities(obs, ProjectivePoint(v));
                     const SpectralReport b =
                         spectrum_and_probabilities(obs, ProjectivePoint(std::exp(kI * rng.uniform(0, 6.0)) * 3.7 * v));
                     double total = 0.0;
                     for (std::size_t k = 0; k < a.probabilities.size(); ++k) {
                       total += a.probabilities[k];
                       w = std::max(w, std::abs(a.probabilities[k] - b.probabilities[k]));
                       if (a.probabilities[k] < -1e-15) w = 1.0;
                     }
                     w = std::max(w, std::abs(total - 1.0));
                   }
                   return w;
                 }});
  out.push_back({"projective.spectrum_invariance", "spec(f) independent of basis order", 1e-9, false, [](Rng& rng) {
                   double w = 0.0;
                   for (int i = 0; i < 20; ++i) {
                     const int n = rng.integer(2, 6);
                     const CMat A = rng.hermitian(n);
                     Eigen::PermutationMatrix<Eigen::Dynamic> P(n);
                     P.setIdentity();
                     for (int k = n - 1; k > 0; --k) std::swap(P.indices()(k), P.indices()(rng.integer(0, k)));
                     const CMat shuffled = P * A * P.transpose();
                     Vec a = spectral_decompose(A).X, b = spectral_decompose(shuffled).X;
                     std::sort(a.data(), a.data() + n);
                     std::sort(b.data(), b.data() + n);
                     w = std::max(w, (a - b).lpNorm<Eigen::Infinity>());
                   }
                   return w;
                 }});
  out.push_back({"projective.critical_values", "FS gradient vanishes at eigenpoints", 1e-6, true, [](Rng& rng) {
                   double w = 0.0;
                   for (int i = 0; i < 20; ++i) {
                     const int n = rng.integer(2, 6);
                     const KahlerObservableCP obs = sample_observable(n, rng);
                     const ProjectivePoint z(obs.eigenvector(rng.integer(0, n - 1)));
                     w = std::max(w, std::sqrt(fs_gradient_norm_sq([&](const ProjectivePoint& q) { return obs(q); }, z)));
                   }
                   return w;
                 }});
  return out;
}

SphereKahlerFunction sample_sphere_function(Rng& rng) {
  return {rng.normal(), rng.normal(), rng.normal(), rng.normal()};
}

Checks spin_checks(double q_perturbation) {
  Checks out;
  out.push_back({"spin.law", "spin probabilities match C(n,k)cos^2k(θ/2)sin^2(n-k)(θ/2)", 1e-12, false, [](Rng&) {
                   double w = 0.0;
                   const double pi = std::numbers::pi;
                   for (int n : {1, 2, 3, 10})
                     for (double th : {0.0, pi / 6, pi / 3, pi / 2, pi}) {
                       const SphereKahlerFunction f{0, 1, 0, 0};
                       const Vec p = spin_probabilities(n, f, SpherePoint::from_angles(th, 0.3));
                       const double c2 = std::pow(std::cos(th / 2), 2), s2 = std::pow(std::sin(th / 2), 2);
                       double binom = 1.0;
                       for (int k = 0; k <= n; ++k) {
                         if (k > 0) binom = binom * (n - k + 1) / k;
                         w = std::max(w, std::abs(p(k) - binom * std::pow(c2, k) * std::pow(s2, n - k)));
                       }
                       w = std::max(w, std::abs(p.sum() - 1.0));
                     }
                   return w;
                 }});
  out.push_back({"spin.commutator", "Q({f,g}) = -(i/2)[Q(f),Q(g)] on 100 random pairs, n ≤ 5", 1e-8, true,
                 [q_perturbation](Rng& rng) {
                   double w = 0.0;
                   for (int i = 0; i < 100; ++i) {
                     const int n = rng.integer(1, 5);
                     const SphereKahlerFunction f = sample_sphere_function(rng), g = sample_sphere_function(rng);
                     w = std::max(w, commutator_residual_perturbed(n, f, g, q_perturbation));
                   }
                   return w;
                 }});
  out.push_back({"spin.expectation_identity", "f = ⟨Ψ, Q(f)Ψ⟩ at 100 random sphere points", 1e-10, false,
                 [q_perturbation](Rng& rng) {
                   double w = 0.0;
                   for (int i = 0; i < 100; ++i) {
                     const int n = rng.integer(1, 5);
                     const SphereKahlerFunction f = sample_sphere_function(rng);
                     const double a = rng.uniform(0, std::numbers::pi), b = rng.uniform(0, 2 * std::numbers::pi);
                     const CVec psi = psi_embedding(n, a, b);
                     CMat Q = q_matrix(n, f).Q;
                     Q(0, 0) += q_perturbation;
                     w = std::max(w, std::abs(f(SpherePoint::from_angles(a, b)) - hermitian(psi, Q * psi).real()));
                   }
                   return w;
                 }});
  out.push_back({"spin.casimir", "Σ Q(x_a)² is scalar, n = 1..8", 1e-8, false, [](Rng&) {
                   double w = 0.0;
                   for (int n = 1; n <= 8; ++n) w = std::max(w, casimir_residual(n));
                   return w;
                 }});
  out.push_back({"spin.su2_closure", "commutators of (i/2)Q(x_a) close on their span, n = 1..8", 1e-8, false, [](Rng&) {
                   double w = 0.0;
                   for (int n = 1; n <= 8; ++n) w = std::max(w, su2_closure_residual(n));
                   return w;
                 }});
  out.push_back({"spin.hat_bracket", "{f,g} = ¼{f̂,ĝ}_FS at 20 random points", 1e-6, true, [](Rng& rng) {
                   double w = 0.0;
                   for (int i = 0; i < 20; ++i) {
                     const int n = rng.integer(1, 5);
                     w = std::max(w, hat_bracket_residual(n, sample_sphere_function(rng), sample_sphere_function(rng),
                                                          rng.uniform(0.3, 2.8), rng.uniform(0, 6.2)));
                   }
                   return w;
                 }});
  out.push_back({"spin.binomial_consistency", "π_sphere∘sphere_from_tangent = binomial pmf, poles exact", 1e-12, false,
                 [](Rng& rng) {
                   double w = 0.0;
                   for (int n = 1; n <= 10; ++n) {
                     for (int i = 0; i < 50; ++i) {
                       const double th = rng.uniform(-8, 8);
                       const Vec a = pi_sphere(n, sphere_from_tangent(th, rng.uniform(0, 12.6)));
                       w = std::max(w, (a - binomial_pmf_natural(n, th)).lpNorm<Eigen::Infinity>());
                     }
                     Vec top = Vec::Zero(n + 1), bottom = Vec::Zero(n + 1);
                     top(n) = 1.0;
                     bottom(0) = 1.0;
                     if (pi_sphere(n, {1, 0, 0}) != top || pi_sphere(n, {-1, 0, 0}) != bottom) w = 1.0;
                   }
                   return w;
                 }});
  out.push_back({"spin.rotation_invariance", "probabilities invariant under joint rotation", 1e-10, false, [](Rng& rng) {
                   double w = 0.0;
                   for (int i = 0; i < 10; ++i) {
                     const int n = rng.integer(1, 6);
                     const Mat R = rng.rotation3();
                     const SphereKahlerFunction f = sample_sphere_function(rng);
                     const Eigen::Vector3d s = rng.normal_vector(3).normalized();
                     const Eigen::Vector3d a(f.u, f.v, f.w);
                     const Eigen::Vector3d Ra = R * a, Rs = R * s;
                     const Vec p = spin_probabilities(n, f, {s(0), s(1), s(2)});
                     const Vec q = spin_probabilities(n, {f.u0, Ra(0), Ra(1), Ra(2)}, {Rs(0), Rs(1), Rs(2)});
                     w = std::max(w, (p - q).lpNorm<Eigen::Infinity>());
                   }
                   return w;
                 }});
  out.push_back({"spin.psi_diagram", "|Ψ_k|² = π_sphere at the same point", 1e-12, false, [](Rng& rng) {
                   double w = 0.0;
                   for (int i = 0; i < 50; ++i) {
                     const int n = rng.integer(1, 10);
                     const double a = rng.uniform(0, std::numbers::pi), b = rng.uniform(0, 2 * std::numbers::pi);
                     const CVec psi = psi_embedding(n, a, b);
                     w = std::max(w, std::abs(psi.norm() - 1.0));
                     w = std::max(w, (Vec(psi.cwiseAbs2()) - pi_sphere(n, SpherePoint::from_angles(a, b))).lpNorm<Eigen::Infinity>());
                   }
                   return w;
                 }});
  out.push_back({"spin.stern_gerlach", "max-spin transition reproduces spin probabilities", 1e-10, false, [](Rng& rng) {
                   double w = 0.0;
                   for (int i = 0; i < 20; ++i) {
                     const int n = rng.integer(1, 6);
                     const SphereKahlerFunction f1 = sample_sphere_function(rng), f2 = sample_sphere_function(rng);
                     const double r = f1.axis_norm();
                     const Vec p = stern_gerlach_transition(n, f1, n, f2);
                     const Vec q = spin_probabilities(n, f2, {f1.u / r, f1.v / r, f1.w / r});
                     w = std::max(w, (p - q).lpNorm<Eigen::Infinity>());
                     w = std::max(w, std::abs(stern_gerlach_transition(n, f1, rng.integer(0, n), f2).sum() - 1.0));
                   }
                   return w;
                 }});
  out.push_back({"spin.spectrum_sign_symmetry", "(β, axis) and (-β, -axis) give the same spectrum", 1e-12, false,
                 [](Rng& rng) {
                   double w = 0.0;
                   for (int i = 0; i < 20; ++i) {
                     const int n = rng.integer(1, 8);
                     const SphereKahlerFunction f = sample_sphere_function(rng);
                     const SphereDecomposition d = decompose_sphere_function(n, f);
                     const double alt_alpha = f.u0 + f.axis_norm(), alt_beta = -d.beta;
                     std::vector<double> a, b;
                     for (int k = 0; k <= n; ++k) {
                       a.push_back(d.alpha + d.beta * k);
                       b.push_back(alt_alpha + alt_beta * k);
                     }
                     std::sort(b.begin(), b.end());
                     const std::vector<double> spec = spin_spectrum(n, f);
                     for (int k = 0; k <= n; ++k) {
                       w = std::max({w, std::abs(a[k] - b[k]), std::abs(a[k] - spec[k])});
                     }
                   }
                   return w;
                 }});
  return out;
}

PlaneKahlerFunction sample_plane_function(Rng& rng) { return {rng.normal(), rng.normal(), rng.normal(), rng.normal()}; }

Checks oscillator_checks() {
  Checks out;
  out.push_back({"oscillator.expectation", "f(z) = ⟨Ψ(z), Q(f)Ψ(z)⟩ on the 5×5×3 (x, y, ℏ) grid", 1e-7, false, [](Rng& rng) {
                   double w = 0.0;
                   const PlaneKahlerFunction basis[] = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
                   for (double x : {-2.0, -1.0, 0.0, 1.0, 2.0})
                     for (double y : {-2.0, -1.0, 0.0, 1.0, 2.0})
                       for (double hbar : {0.5, 1.0, 2.0}) {
                         for (const auto& f : basis) w = std::max(w, oscillator_expectation_residual(hbar, f, {x, y}));
                         w = std::max(w, oscillator_expectation_residual(hbar, sample_plane_function(rng), {x, y}));
                       }
                   return w;
                 }});
  out.push_back({"oscillator.bracket", "closed-form plane bracket equals FD bracket on 50 pairs", 1e-6, true, [](Rng& rng) {
                   double w = 0.0;
                   for (int i = 0; i < 50; ++i) {
                     const PlaneKahlerFunction f = sample_plane_function(rng), g = sample_plane_function(rng);
                     const PlanePoint z{rng.uniform(-3, 3), rng.uniform(-3, 3)};
                     w = std::max(w, std::abs(plane_bracket(f, g)(z) - plane_bracket_fd(f, g, z)));
                   }
                   return w;
                 }});
  out.push_back({"oscillator.flat_metric", "Fisher metric of N(μ,1) is 1", 1e-12, false, [](Rng& rng) {
                   const ExponentialFamily fam = normal_fixed_sigma_family();
                   return over_grid(fam, rng, 20, [&](const NaturalPoint& t) {
                     return std::max(std::abs(fisher_metric(fam, t).entries(0, 0) - 1.0),
                                     std::abs(fisher_metric_hessian(fam, t).entries(0, 0) - 1.0));
                   });
                 }});
  out.push_back({"oscillator.coherent_normalization", "∫|Ψ|² = 1 for 20 random z", 1e-8, false, [](Rng& rng) {
                   double w = 0.0;
                   for (int i = 0; i < 20; ++i) {
                     const PlanePoint z{rng.uniform(-3, 3), rng.uniform(-3, 3)};
                     const double hbar = rng.uniform(0.3, 3.0);
                     w = std::max(w, oscillator_expectation_residual(hbar, {1, 0, 0, 0}, z));
                   }
                   return w;
                 }});
  out.push_back({"oscillator.spectrum_variance", "spectral variance equals ‖grad f‖² on T N(μ,1)", 1e-12, false, [](Rng& rng) {
                   const ExponentialFamily fam = normal_fixed_sigma_family();
                   double w = 0.0;
                   for (int i = 0; i < 20; ++i) {
                     PlaneKahlerFunction f = sample_plane_function(rng);
                     f.cr = 0.0;
                     const PlanePoint z{rng.uniform(-3, 3), rng.uniform(-3, 3)};
                     const TangentBundlePoint at{{Vec::Constant(1, z.x)}, Vec::Constant(1, z.y)};
                     const Mat G = kahler_structure_at(fam, at).G;
                     const Eigen::Vector2d df(f.cx, f.cy);
                     const double grad_sq = df.dot(G.inverse() * df);
                     const GaussianSpectrum s = gaussian_spectrum_probability(f, z);
                     w = std::max({w, std::abs(s.variance - grad_sq), std::abs(s.mean - f(z))});
                   }
                   return w;
                 }});
  return out;
}

Checks checks_for(std::string_view suite, const VerifyOptions& options) {
  if (suite == "families") return families_checks();
  if (suite == "geometry") return geometry_checks();
  if (suite == "dombrowski") return dombrowski_checks();
  if (suite == "projective") return projective_checks();
  if (suite == "spin") return spin_checks(options.q_perturbation);
  if (suite == "oscillator") return oscillator_checks();
  if (suite == "all") {
    Checks all;
    for (const std::string& name : suite_names()) {
      if (name == "all") continue;
      Checks part = checks_for(name, options);
      std::move(part.begin(), part.end(), std::back_inserter(all));
    }
    return all;
  }
  throw UsageError("unknown suite '" + std::string(suite) + "'");
}

CheckResult execute(const CheckSpec& spec, const VerifyOptions& options) {
  CheckResult r;
  r.id = spec.id;
  r.description = spec.description;
  r.tolerance = spec.tolerance;
  if (spec.finite_difference && options.profile == ToleranceProfile::FiniteDifference) r.tolerance *= 10.0;
  if (auto it = options.tolerance_overrides.find(spec.id); it != options.tolerance_overrides.end()) {
    r.tolerance = it->second;
  }
  Rng rng(derive_seed(options.seed, spec.id));
  try {
    r.residual = spec.run(rng);
  } catch (const std::exception& e) {
    r.residual = kNaN;
    r.description += " [error: " + std::string(e.what()) + "]";
  }
  r.pass = std::isfinite(r.residual) && r.residual <= r.tolerance;
  return r;
}

}  // namespace

ToleranceProfile tolerance_profile_from_env() {
  const char* v = std::getenv("IGK_TOL_PROFILE");
  if (v == nullptr || std::string_view(v).empty() || std::string_view(v) == "strict") return ToleranceProfile::Strict;
  if (std::string_view(v) == "fd") return ToleranceProfile::FiniteDifference;
  throw UsageError("IGK_TOL_PROFILE must be 'strict' or 'fd'");
}

bool SuiteReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

std::vector<std::string> suite_names() {
  return {"families", "geometry", "dombrowski", "projective", "spin", "oscillator", "all"};
}

SuiteReport run_suite(std::string_view suite, const VerifyOptions& options) {
  const Checks checks = checks_for(suite, options);
  for (const auto& [id, tol] : options.tolerance_overrides) {
    const bool known = std::any_of(checks.begin(), checks.end(), [&](const CheckSpec& c) { return c.id == id; });
    if (!known) throw UsageError("tolerance override for unknown check '" + id + "'");
  }
  std::vector<std::future<CheckResult>> pending;
  pending.reserve(checks.size());
  for (const CheckSpec& c : checks) {
    pending.push_back(std::async(std::launch::async, [&c, &options] { return execute(c, options); }));
  }
  SuiteReport report;
  report.suite = std::string(suite);
  report.seed = options.seed;
  report.prng = std::string(Rng::kAlgorithm);
  report.profile = options.profile == ToleranceProfile::Strict ? "strict" : "fd";
  for (auto& f : pending) report.checks.push_back(f.get());
  std::sort(report.checks.begin(), report.checks.end(),
            [](const CheckResult& a, const CheckResult& b) { return a.id < b.id; });
  return report;
}

}  // namespace igk
