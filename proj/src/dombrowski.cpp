#include "igk/dombrowski.hpp"

#include <algorithm>
#include <cmath>

#include "igk/errors.hpp"

namespace igk {

namespace {

double max_abs(const Mat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

// d/dθ E_θ[X] = Cov(F, X)
Vec covariance_with_statistics(const ExponentialFamily& fam, const RandomVariable& X, const NaturalPoint& theta) {
  const int n = fam.dim();
  const Vec eta = fam.log_partition_gradient(theta.coords);
  const double mean = expectation(fam, theta, [&](double x) { return Vec::Constant(1, X(x)); }, 1)(0);
  return expectation(fam, theta, [&](double x) { return Vec((fam.statistics(x) - eta) * (X(x) - mean)); }, n);
}

}  // namespace

Vec SplitTangentVector::stacked() const {
  Vec s(horizontal.size() + vertical.size());
  s << horizontal, vertical;
  return s;
}

double TangentKahlerStructure::metric(const SplitTangentVector& a, const SplitTangentVector& b) const {
  return a.stacked().dot(G * b.stacked());
}

double TangentKahlerStructure::symplectic(const SplitTangentVector& a, const SplitTangentVector& b) const {
  return a.stacked().dot(Omega * b.stacked());
}

TangentKahlerStructure kahler_structure_at(const ExponentialFamily& fam, const TangentBundlePoint& point) {
  const int n = fam.dim();
  if (point.fiber.size() != n) throw DomainError("fiber dimension does not match the family");
  const Mat h = fisher_metric_hessian(fam, point.base).entries;
  const Mat I = Mat::Identity(n, n);
  TangentKahlerStructure s;
  s.G = Mat::Zero(2 * n, 2 * n);
  s.G.topLeftCorner(n, n) = h;
  s.G.bottomRightCorner(n, n) = h;
  s.Omega = Mat::Zero(2 * n, 2 * n);
  s.Omega.topRightCorner(n, n) = h;
  s.Omega.bottomLeftCorner(n, n) = -h;
  // J(v, w) = (−w, v)
  s.J = Mat::Zero(2 * n, 2 * n);
  s.J.topRightCorner(n, n) = -I;
  s.J.bottomLeftCorner(n, n) = I;
  return s;
}

double structure_compatibility_residual(const TangentKahlerStructure& s) {
  const Eigen::Index m = s.G.rows();
  const Mat I = Mat::Identity(m, m);
  return std::max({max_abs(s.J * s.J + I), max_abs(s.Omega - s.J.transpose() * s.G),
                   max_abs(s.J.transpose() * s.G * s.J - s.G), max_abs(s.G - s.G.transpose()),
                   max_abs(s.Omega + s.Omega.transpose())});
}

double omega_closedness_residual(const ExponentialFamily& fam, const TangentBundlePoint& point) {
  const int n = fam.dim();
  if (n == 1) return 0.0;
  const std::vector<Mat> dh = metric_derivatives(fam, point.base);
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) worst = std::max(worst, std::abs(dh[i](j, k) - dh[j](i, k)));
  return worst;
}

double AffineObservable::operator()(const ExponentialFamily& fam, double x) const {
  return coefficients(0) + coefficients.tail(fam.dim()).dot(fam.statistics(x));
}

RandomVariable AffineObservable::as_variable(const ExponentialFamily& fam) const {
  return [fam, c = coefficients](double x) { return c(0) + c.tail(fam.dim()).dot(fam.statistics(x)); };
}

AffineObservable fit_affine_observable(const ExponentialFamily& fam, const RandomVariable& X, double tolerance) {
  if (!fam.space().is_finite()) {
    throw DomainError("membership in span{1, F} is only testable on finite spaces; supply coefficients");
  }
  const auto& pts = fam.space().points;
  const auto m = static_cast<Eigen::Index>(pts.size());
  Mat E(m, fam.dim() + 1);
  Vec y(m);
  for (Eigen::Index r = 0; r < m; ++r) {
    E(r, 0) = 1.0;
    E.row(r).tail(fam.dim()) = fam.statistics(pts[static_cast<std::size_t>(r)]).transpose();
    y(r) = X(pts[static_cast<std::size_t>(r)]);
  }
  const Vec a = E.colPivHouseholderQr().solve(y);
  const double residual = (E * a - y).lpNorm<Eigen::Infinity>();
  if (residual > tolerance) {
    throw NotKahlerError("variable is not in span{1, F_1..F_n} (residual " + std::to_string(residual) + ")");
  }
  return {a};
}

Vec kahler_gradient_field(const ExponentialFamily& fam, const AffineObservable& f, const NaturalPoint& theta) {
  fam.require_in_domain(theta.coords);
  if (f.coefficients.size() != fam.dim() + 1) throw DomainError("affine observable needs n+1 coefficients");
  return f.coefficients.tail(fam.dim());
}

Vec riemannian_gradient(const ExponentialFamily& fam, const RandomVariable& X, const NaturalPoint& theta) {
  const Mat h = fisher_metric_hessian(fam, theta).entries;
  return h.ldlt().solve(covariance_with_statistics(fam, X, theta));
}

TangentBundlePoint hamiltonian_flow_step(const ExponentialFamily& fam, const AffineObservable& f,
                                         const TangentBundlePoint& point, double t) {
  return {point.base, point.fiber - t * kahler_gradient_field(fam, f, point.base)};
}

double flow_isometry_residual(const ExponentialFamily& fam, const RandomVariable& X, const TangentBundlePoint& point,
                              double t) {
  const int n = fam.dim();
  const Vec& theta = point.base.coords;
  Mat dgrad(n, n);
  for (int j = 0; j < n; ++j) {
    const double s = 1e-5 * std::max(1.0, std::abs(theta(j)));
    Vec tp = theta, tm = theta;
    tp(j) += s;
    tm(j) -= s;
    dgrad.col(j) = (riemannian_gradient(fam, X, {tp}) - riemannian_gradient(fam, X, {tm})) / (2 * s);
  }
  Mat D = Mat::Identity(2 * n, 2 * n);
  D.bottomLeftCorner(n, n) = -t * dgrad;
  // The flow leaves the base point fixed, so G is the same at both ends.
  const Mat G = kahler_structure_at(fam, point).G;
  return max_abs(D.transpose() * G * D - G);
}

double poisson_bracket(const ExponentialFamily& fam, const RandomVariable& X, const RandomVariable& Y,
                       const TangentBundlePoint& point) {
  const int n = fam.dim();
  const Mat Omega = kahler_structure_at(fam, point).Omega;
  auto hamiltonian = [&](const RandomVariable& Z) {
    Vec df = Vec::Zero(2 * n);
    df.head(n) = covariance_with_statistics(fam, Z, point.base);
    // ω(X_f, ·) = df
    return Vec(Omega.transpose().partialPivLu().solve(df));
  };
  return hamiltonian(X).dot(Omega * hamiltonian(Y));
}

}  // namespace igk
