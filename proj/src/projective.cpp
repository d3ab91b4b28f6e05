#include "igk/projective.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "igk/errors.hpp"
#include "igk/families.hpp"

namespace igk {

namespace {

constexpr double kConstraintTolerance = 1e-10;

void require_hermitian(const CMat& A, const char* what) {
  if (A.rows() != A.cols()) throw DomainError(std::string(what) + ": matrix must be square");
  if ((A - A.adjoint()).cwiseAbs().maxCoeff() > 1e-10) throw DomainError(std::string(what) + ": matrix is not Hermitian");
}

}  // namespace

ProjectivePoint::ProjectivePoint(CVec homog) : z_(std::move(homog)) {
  const double norm = z_.norm();
  if (z_.size() == 0 || !std::isfinite(norm) || norm == 0.0) throw DomainError("projective point needs a nonzero vector");
  z_ /= norm;
}

bool ProjectivePoint::same_point(const ProjectivePoint& other, double tol) const {
  return z_.size() == other.z_.size() && std::abs(hermitian(z_, other.z_)) >= 1.0 - tol;
}

Complex hermitian(const CVec& a, const CVec& b) { return a.dot(b); }

ProjectivePoint tau(const Vec& p, const Vec& u) {
  if (p.size() != u.size() || p.size() < 2) throw DomainError("tau: p and u must have the same length >= 2");
  if ((p.array() <= 0).any()) throw DomainError("tau: probabilities must be strictly positive");
  if (std::abs(p.sum() - 1.0) > kConstraintTolerance) throw DomainError("tau: probabilities must sum to 1");
  if (std::abs(p.dot(u)) > kConstraintTolerance) throw DomainError("tau: fiber must satisfy Σ p_i u_i = 0");
  CVec z(p.size());
  for (Eigen::Index k = 0; k < p.size(); ++k) z(k) = std::sqrt(p(k)) * std::exp(0.5 * kI * u(k));
  return ProjectivePoint(z);
}

Vec deck_shift(const Vec& p, const Vec& u, const Eigen::VectorXi& m) {
  const Vec md = m.cast<double>();
  return u + 4 * std::numbers::pi * (md.array() - p.dot(md)).matrix();
}

Vec pi_projection(const ProjectivePoint& z) { return z.homog().cwiseAbs2(); }

double fubini_study_distance(const ProjectivePoint& z, const ProjectivePoint& w) {
  return std::acos(std::clamp(std::abs(hermitian(z.homog(), w.homog())), 0.0, 1.0));
}

double xi_A(const CMat& A, const ProjectivePoint& z) {
  if (A.rows() != z.size() || A.cols() != z.size()) throw DomainError("xi_A: dimension mismatch");
  if ((A + A.adjoint()).cwiseAbs().maxCoeff() > 1e-10) throw DomainError("xi_A: matrix is not skew-Hermitian");
  return (0.5 * kI * hermitian(z.homog(), A * z.homog())).real();
}

double KahlerObservableCP::operator()(const ProjectivePoint& z) const {
  return X.dot((U * z.homog()).cwiseAbs2());
}

CMat KahlerObservableCP::hermitian_matrix() const {
  return U.adjoint() * X.cast<Complex>().asDiagonal() * U;
}

CVec KahlerObservableCP::eigenvector(int k) const { return U.adjoint().col(k); }

KahlerObservableCP spectral_decompose(const CMat& A) {
  require_hermitian(A, "spectral_decompose");
  const CMat H = 0.5 * (A + A.adjoint());
  Eigen::SelfAdjointEigenSolver<CMat> solver(H);
  if (solver.info() != Eigen::Success) throw NumericalError("Hermitian eigensolver failed", 0.0);
  return {solver.eigenvalues(), solver.eigenvectors().adjoint()};
}

SpectralReport spectrum_and_probabilities(const KahlerObservableCP& obs, const ProjectivePoint& z) {
  const Vec w = (obs.U * z.homog()).cwiseAbs2();
  std::vector<int> order(static_cast<std::size_t>(obs.X.size()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return obs.X(a) < obs.X(b); });
  SpectralReport r;
  for (int k : order) {
    if (!r.eigenvalues.empty() && std::abs(obs.X(k) - r.eigenvalues.back()) <= kEigenvalueGrouping) {
      r.multiplicities.back() += 1;
      r.probabilities.back() += w(k);
    } else {
      r.eigenvalues.push_back(obs.X(k));
      r.multiplicities.push_back(1);
      r.probabilities.push_back(w(k));
    }
  }
  return r;
}

double variance_at(const KahlerObservableCP& obs, const ProjectivePoint& z) {
  const Vec w = (obs.U * z.homog()).cwiseAbs2();
  const double mean = obs.X.dot(w);
  return (obs.X.array() - mean).square().matrix().dot(w);
}

ProjectiveChart::ProjectiveChart(const ProjectivePoint& z) : center(z.homog()) {
  const Eigen::Index n = center.size();
  CMat M(n, n + 1);
  M.col(0) = center;
  M.rightCols(n) = CMat::Identity(n, n);
  Eigen::HouseholderQR<CMat> qr(M);
  const CMat Q = qr.householderQ();
  for (Eigen::Index k = 1; k < n; ++k) {
    CVec b = Q.col(k);
    b -= hermitian(center, b) * center;
    b.normalize();
    frame.push_back(b);
    frame.push_back(kI * b);
  }
}

CVec ProjectiveChart::tangent(const Vec& coords) const {
  CVec t = CVec::Zero(center.size());
  for (std::size_t a = 0; a < frame.size(); ++a) t += coords(static_cast<Eigen::Index>(a)) * frame[a];
  return t;
}

ProjectivePoint ProjectiveChart::point(const Vec& coords) const { return ProjectivePoint(center + tangent(coords)); }

namespace {

Vec chart_differential(const ProjectiveFunction& f, const ProjectiveChart& chart, double step) {
  const auto m = static_cast<Eigen::Index>(chart.frame.size());
  Vec df(m);
  for (Eigen::Index a = 0; a < m; ++a) {
    Vec e = Vec::Zero(m);
    e(a) = step;
    df(a) = (f(chart.point(e)) - f(chart.point(-e))) / (2 * step);
  }
  return df;
}

// ω on the chart frame: W_ab = Im⟨e_a, e_b⟩.
Mat chart_symplectic(const ProjectiveChart& chart) {
  const auto m = static_cast<Eigen::Index>(chart.frame.size());
  Mat W(m, m);
  for (Eigen::Index a = 0; a < m; ++a)
    for (Eigen::Index b = 0; b < m; ++b) W(a, b) = hermitian(chart.frame[a], chart.frame[b]).imag();
  return W;
}

double scale_factor(FubiniStudyScale s) { return static_cast<double>(static_cast<int>(s)); }

}  // namespace

CVec fs_gradient(const ProjectiveFunction& f, const ProjectivePoint& z, FubiniStudyScale scale, double step) {
  // The frame is orthonormal for Re⟨·,·⟩, so the gradient coordinates are the partials.
  const ProjectiveChart chart(z);
  return chart.tangent(chart_differential(f, chart, step)) / scale_factor(scale);
}

double fs_gradient_norm_sq(const ProjectiveFunction& f, const ProjectivePoint& z, FubiniStudyScale scale, double step) {
  const ProjectiveChart chart(z);
  return chart_differential(f, chart, step).squaredNorm() / scale_factor(scale);
}

double fs_poisson_bracket(const ProjectiveFunction& f, const ProjectiveFunction& g, const ProjectivePoint& z,
                          FubiniStudyScale scale, double step) {
  const ProjectiveChart chart(z);
  const Mat W = scale_factor(scale) * chart_symplectic(chart);
  const auto lu = W.transpose().partialPivLu();
  const Vec xf = lu.solve(chart_differential(f, chart, step));
  const Vec xg = lu.solve(chart_differential(g, chart, step));
  return xf.dot(W * xg);
}

double cramer_rao_residual(const KahlerObservableCP& obs, const ProjectivePoint& z) {
  const double grad_sq = fs_gradient_norm_sq([&](const ProjectivePoint& w) { return obs(w); }, z);
  return std::abs(variance_at(obs, z) - 0.25 * grad_sq);
}

EigenProjection eigenmanifold_projection(const KahlerObservableCP& obs, double lambda, const ProjectivePoint& z) {
  CVec proj = CVec::Zero(z.size());
  bool found = false;
  for (Eigen::Index k = 0; k < obs.X.size(); ++k) {
    if (std::abs(obs.X(k) - lambda) <= kEigenvalueGrouping) {
      const CVec e = obs.eigenvector(static_cast<int>(k));
      proj += hermitian(e, z.homog()) * e;
      found = true;
    }
  }
  if (!found) throw DomainError("eigenmanifold_projection: value is not in the spectrum");
  if (proj.norm() < 1e-12) throw DomainError("eigenmanifold_projection: state is orthogonal to the eigenspace");
  ProjectivePoint p(proj);
  const double d = fubini_study_distance(z, p);
  return {std::move(p), d};
}

TangentBundlePoint categorical_chart_point(const Vec& p, const Vec& u) {
  const Eigen::Index n = p.size();
  if (u.size() != n || n < 2) throw DomainError("categorical chart: p and u must have the same length >= 2");
  if ((p.array() <= 0).any()) throw DomainError("categorical chart: probabilities must be positive");
  TangentBundlePoint tp;
  tp.base.coords = (p.head(n - 1).array() / p(n - 1)).log().matrix();
  tp.fiber = u.head(n - 1).array() - u(n - 1);
  return tp;
}

namespace {

// (θ, θ̇) ↦ τ(p(θ), u(θ, θ̇)), with u_k = θ̇_k − Σ_i θ̇_i η_i and θ̇_n = 0.
CVec tau_in_chart(const Vec& theta, const Vec& theta_dot) {
  const Eigen::Index m = theta.size();
  Vec logits(m + 1);
  logits << theta, 0.0;
  const double top = logits.maxCoeff();
  Vec p = (logits.array() - top).exp();
  p /= p.sum();
  Vec td(m + 1);
  td << theta_dot, 0.0;
  const Vec u = td.array() - p.dot(td);
  CVec z(m + 1);
  for (Eigen::Index k = 0; k <= m; ++k) z(k) = std::sqrt(p(k)) * std::exp(0.5 * kI * u(k));
  return z;
}

CVec tau_differential(const TangentBundlePoint& at, const Vec& dir, const CVec& z0) {
  const Eigen::Index m = at.base.coords.size();
  const double s = kPullbackStep;
  const CVec zp = tau_in_chart(at.base.coords + s * dir.head(m), at.fiber + s * dir.tail(m));
  const CVec zm = tau_in_chart(at.base.coords - s * dir.head(m), at.fiber - s * dir.tail(m));
  const CVec dz = (zp - zm) / (2 * s);
  // Differential of the affine chart w ↦ w/⟨z0, w⟩ − z0 at z0.
  return dz - hermitian(z0, dz) * z0;
}

}  // namespace

PullbackResidual pullback_scaling_check(const Vec& p, const Vec& u,
                                        const std::vector<std::pair<SplitTangentVector, SplitTangentVector>>& pairs) {
  (void)tau(p, u);  // validates the constraints
  const TangentBundlePoint at = categorical_chart_point(p, u);
  const ExponentialFamily fam = categorical_family(static_cast<int>(p.size()));
  const TangentKahlerStructure s = kahler_structure_at(fam, at);
  const CVec z0 = tau_in_chart(at.base.coords, at.fiber);
  PullbackResidual r{0.0, 0.0};
  for (const auto& [a, b] : pairs) {
    const CVec da = tau_differential(at, a.stacked(), z0);
    const CVec db = tau_differential(at, b.stacked(), z0);
    const Complex h = hermitian(da, db);
    r.metric = std::max(r.metric, std::abs(h.real() - 0.25 * s.metric(a, b)));
    r.symplectic = std::max(r.symplectic, std::abs(h.imag() - 0.25 * s.symplectic(a, b)));
  }
  return r;
}

}  // namespace igk
