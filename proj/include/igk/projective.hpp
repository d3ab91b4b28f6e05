#pragma once

#include <functional>
#include <vector>

#include "igk/dombrowski.hpp"
#include "igk/linalg.hpp"

namespace igk {

inline constexpr double kProjectiveTolerance = 1e-12;

class ProjectivePoint {
 public:
  // Normalizes; throws DomainError for a zero or non-finite vector.
  explicit ProjectivePoint(CVec homog);

  const CVec& homog() const { return z_; }
  int size() const { return static_cast<int>(z_.size()); }
  bool same_point(const ProjectivePoint& other, double tol = kProjectiveTolerance) const;

 private:
  CVec z_;
};

// Hermitian product, conjugate-linear in the first argument.
Complex hermitian(const CVec& a, const CVec& b);

ProjectivePoint tau(const Vec& p, const Vec& u);
// u + 4π(m − E_p m)
Vec deck_shift(const Vec& p, const Vec& u, const Eigen::VectorXi& m);
Vec pi_projection(const ProjectivePoint& z);
double fubini_study_distance(const ProjectivePoint& z, const ProjectivePoint& w);

// (i/2)⟨z, A z⟩ for skew-Hermitian A.
double xi_A(const CMat& A, const ProjectivePoint& z);

// f([z]) = Σ_k X_k |(U z)_k|²  ( = ⟨z, A z⟩ ).
struct KahlerObservableCP {
  Vec X;
  CMat U;

  double operator()(const ProjectivePoint& z) const;
  CMat hermitian_matrix() const;  // U* diag(X) U
  // U* e_k as a projective point.
  CVec eigenvector(int k) const;
};

KahlerObservableCP spectral_decompose(const CMat& A);

inline constexpr double kEigenvalueGrouping = 1e-9;

struct SpectralReport {
  std::vector<double> eigenvalues;  // ascending, distinct
  std::vector<int> multiplicities;
  std::vector<double> probabilities;
};

SpectralReport spectrum_and_probabilities(const KahlerObservableCP& obs, const ProjectivePoint& z);
double variance_at(const KahlerObservableCP& obs, const ProjectivePoint& z);

// 1: Re/Im of the Hermitian product on [z]^⊥. 4: four times that.
enum class FubiniStudyScale { Standard = 1, Kahlerification = 4 };

using ProjectiveFunction = std::function<double(const ProjectivePoint&)>;

// Orthonormal real frame {b_k, i b_k} of [z]^⊥ and the chart [z + ξ].
struct ProjectiveChart {
  CVec center;
  std::vector<CVec> frame;

  explicit ProjectiveChart(const ProjectivePoint& z);
  ProjectivePoint point(const Vec& coords) const;
  CVec tangent(const Vec& coords) const;
};

inline constexpr double kProjectiveFdStep = 1e-5;

// FS gradient as a vector in [z]^⊥ (metric Re⟨·,·⟩), scaled by the chosen convention.
CVec fs_gradient(const ProjectiveFunction& f, const ProjectivePoint& z,
                 FubiniStudyScale scale = FubiniStudyScale::Standard, double step = kProjectiveFdStep);
double fs_gradient_norm_sq(const ProjectiveFunction& f, const ProjectivePoint& z,
                           FubiniStudyScale scale = FubiniStudyScale::Standard,
                           double step = kProjectiveFdStep);
// {f,g} = ω(X_f, X_g) with ω = Im⟨·,·⟩ (times the scale).
double fs_poisson_bracket(const ProjectiveFunction& f, const ProjectiveFunction& g, const ProjectivePoint& z,
                          FubiniStudyScale scale = FubiniStudyScale::Standard,
                          double step = kProjectiveFdStep);

double cramer_rao_residual(const KahlerObservableCP& obs, const ProjectivePoint& z);

struct EigenProjection {
  ProjectivePoint point;
  double distance;
};
EigenProjection eigenmanifold_projection(const KahlerObservableCP& obs, double lambda, const ProjectivePoint& z);

struct PullbackResidual {
  double metric;
  double symplectic;
};

inline constexpr double kPullbackStep = 1e-6;

// Tangent vectors (v, w) of TP_n^× in the chart θ_i = ln(p_i/p_n), θ̇_i = u_i − u_n, i < n.
PullbackResidual pullback_scaling_check(const Vec& p, const Vec& u,
                                        const std::vector<std::pair<SplitTangentVector, SplitTangentVector>>& pairs);
// Base point of TP_n^× in that chart.
TangentBundlePoint categorical_chart_point(const Vec& p, const Vec& u);

}  // namespace igk
