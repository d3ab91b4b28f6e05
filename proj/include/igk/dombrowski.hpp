#pragma once

#include "igk/families.hpp"
#include "igk/geometry.hpp"

namespace igk {

struct TangentBundlePoint {
  NaturalPoint base;
  Vec fiber;
};

struct SplitTangentVector {
  TangentBundlePoint at;
  Vec horizontal;
  Vec vertical;

  Vec stacked() const;
};

// Block basis (base, fiber).
struct TangentKahlerStructure {
  Mat G;
  Mat Omega;
  Mat J;

  double metric(const SplitTangentVector& a, const SplitTangentVector& b) const;
  double symplectic(const SplitTangentVector& a, const SplitTangentVector& b) const;
};

TangentKahlerStructure kahler_structure_at(const ExponentialFamily& fam, const TangentBundlePoint& point);

// max of |J² + I|, |Omega − Jᵀ G|, |Jᵀ G J − G|, and the asymmetry of G and Omega.
double structure_compatibility_residual(const TangentKahlerStructure& s);

double omega_closedness_residual(const ExponentialFamily& fam, const TangentBundlePoint& point);

// X = a_0 + Σ a_i F_i.
struct AffineObservable {
  Vec coefficients;  // length n+1

  double operator()(const ExponentialFamily& fam, double x) const;
  RandomVariable as_variable(const ExponentialFamily& fam) const;
};

// Least-squares membership test in span{1, F_1..F_n}; finite spaces only.
AffineObservable fit_affine_observable(const ExponentialFamily& fam, const RandomVariable& X,
                                       double tolerance = 1e-9);

Vec kahler_gradient_field(const ExponentialFamily& fam, const AffineObservable& f, const NaturalPoint& theta);

// grad^{h}(θ ↦ E_θ X) = h⁻¹ Cov(F, X), for any X.
Vec riemannian_gradient(const ExponentialFamily& fam, const RandomVariable& X, const NaturalPoint& theta);

TangentBundlePoint hamiltonian_flow_step(const ExponentialFamily& fam, const AffineObservable& f,
                                         const TangentBundlePoint& point, double t);

// |DᵀGD − G| for the flow differential D of the fiber translation by −t·grad.
double flow_isometry_residual(const ExponentialFamily& fam, const RandomVariable& X,
                              const TangentBundlePoint& point, double t);

// ω(X_f, X_g) for f = E(X∘), g = E(Y∘), lifted to TM.
double poisson_bracket(const ExponentialFamily& fam, const RandomVariable& X, const RandomVariable& Y,
                       const TangentBundlePoint& point);

}  // namespace igk
