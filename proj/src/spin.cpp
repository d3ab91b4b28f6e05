#include "igk/spin.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "igk/errors.hpp"
#include "igk/projective.hpp"

namespace igk {

namespace {

// ω = kOrientation · n · sin α dα∧dβ on the sphere.
constexpr double kOrientation = -1.0;

double binomial_coefficient(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

// C(n,k) a^k b^{n-k} 2^{-shift} with 0⁰ = 1; logs for large n.
double weighted_term(int n, int k, double a, double b, int shift) {
  if (n < 50) return std::ldexp(binomial_coefficient(n, k) * std::pow(a, k) * std::pow(b, n - k), -shift);
  if ((k > 0 && a == 0.0) || (n - k > 0 && b == 0.0)) return 0.0;
  double log_term = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) - shift * std::numbers::ln2;
  if (k > 0) log_term += k * std::log(a);
  if (n - k > 0) log_term += (n - k) * std::log(b);
  return std::exp(log_term);
}

// p(k) = C(n,k)(1+c)^k(1−c)^{n−k}/2ⁿ
Vec binomial_on_sphere(int n, double c) {
  if (n < 1) throw DomainError("spin family size n must be >= 1");
  c = std::clamp(c, -1.0, 1.0);
  Vec p(n + 1);
  for (int k = 0; k <= n; ++k) p(k) = weighted_term(n, k, 1.0 + c, 1.0 - c, n);
  return p;
}

double axis_dot(const SphereKahlerFunction& f, const SpherePoint& s) { return f.u * s.x + f.v * s.y + f.w * s.z; }

SphereKahlerFunction coordinate(int a) {
  SphereKahlerFunction f;
  (a == 0 ? f.u : a == 1 ? f.v : f.w) = 1.0;
  return f;
}

CMat eigenvectors_ascending(const CMat& Q) {
  Eigen::SelfAdjointEigenSolver<CMat> solver(Q);
  if (solver.info() != Eigen::Success) throw NumericalError("Hermitian eigensolver failed", 0.0);
  return solver.eigenvectors();
}

}  // namespace

SpherePoint SpherePoint::from_angles(double alpha, double beta) {
  return {std::cos(alpha), std::sin(alpha) * std::cos(beta), std::sin(alpha) * std::sin(beta)};
}

double SphereKahlerFunction::axis_norm() const { return std::sqrt(u * u + v * v + w * w); }

SpherePoint sphere_from_tangent(double theta, double theta_dot) {
  const double ch = std::cosh(theta / 2);
  return {std::tanh(theta / 2), std::cos(theta_dot / 2) / ch, std::sin(theta_dot / 2) / ch};
}

Vec pi_sphere(int n, const SpherePoint& s) { return binomial_on_sphere(n, s.x); }

Vec binomial_pmf_natural(int n, double theta) {
  if (n < 1) throw DomainError("binomial size n must be >= 1");
  const double q = theta >= 0 ? 1.0 / (1.0 + std::exp(-theta)) : std::exp(theta) / (1.0 + std::exp(theta));
  Vec p(n + 1);
  for (int k = 0; k <= n; ++k) p(k) = weighted_term(n, k, q, 1.0 - q, 0);
  return p;
}

SphereDecomposition decompose_sphere_function(int n, const SphereKahlerFunction& f) {
  if (n < 1) throw DomainError("spin family size n must be >= 1");
  const double r = f.axis_norm();
  if (r == 0.0) return {f.u0, 0.0, {0.0, 0.0, 1.0}};
  return {f.u0 - r, 2.0 * r / n, {f.u / r, f.v / r, f.w / r}};
}

std::vector<double> spin_spectrum(int n, const SphereKahlerFunction& f) {
  if (n < 1) throw DomainError("spin family size n must be >= 1");
  const double r = f.axis_norm();
  if (r == 0.0) return {f.u0};
  std::vector<double> out;
  for (int k = 0; k <= n; ++k) out.push_back(f.u0 + (2.0 / n) * r * (k - 0.5 * n));
  return out;
}

Vec spin_probabilities(int n, const SphereKahlerFunction& f, const SpherePoint& s) {
  if (n < 1) throw DomainError("spin family size n must be >= 1");
  const double r = f.axis_norm();
  if (r == 0.0) return Vec::Ones(1);
  return binomial_on_sphere(n, axis_dot(f, s) / r);
}

CVec psi_embedding(int n, double alpha, double beta) {
  if (n < 1) throw DomainError("spin family size n must be >= 1");
  const double c = std::cos(alpha / 2), s = std::sin(alpha / 2);
  CVec psi(n + 1);
  for (int k = 0; k <= n; ++k) {
    psi(k) = std::sqrt(binomial_coefficient(n, k)) * std::pow(c, k) * std::pow(s, n - k) * std::exp(kI * (beta * k));
  }
  return psi;
}

RepMatrix q_matrix(int n, const SphereKahlerFunction& f) {
  if (n < 1) throw DomainError("spin family size n must be >= 1");
  CMat Q = CMat::Zero(n + 1, n + 1);
  for (int k = 0; k <= n; ++k) Q(k, k) = f.u0 - f.u * (2.0 / n) * (0.5 * n - k);
  const Complex off(f.v, -f.w);
  for (int l = 0; l < n; ++l) {
    Q(l, l + 1) = (std::sqrt(static_cast<double>((n - l) * (l + 1))) / n) * off;
    Q(l + 1, l) = std::conj(Q(l, l + 1));
  }
  return {n, Q};
}

SphereKahlerFunction sphere_bracket(int n, const SphereKahlerFunction& f, const SphereKahlerFunction& g) {
  const Eigen::Vector3d a(f.u, f.v, f.w), b(g.u, g.v, g.w);
  const Eigen::Vector3d c = (kOrientation / n) * a.cross(b);
  return {0.0, c(0), c(1), c(2)};
}

double sphere_bracket_fd(int n, const SphereKahlerFunction& f, const SphereKahlerFunction& g, double alpha, double beta,
                         double step) {
  auto d = [&](const SphereKahlerFunction& h, double da, double db) {
    return (h(SpherePoint::from_angles(alpha + da, beta + db)) - h(SpherePoint::from_angles(alpha - da, beta - db))) /
           (2 * step);
  };
  const double fa = d(f, step, 0), fb = d(f, 0, step);
  const double ga = d(g, step, 0), gb = d(g, 0, step);
  return (fa * gb - fb * ga) / (kOrientation * n * std::sin(alpha));
}

SphereKahlerFunction sphere_bracket_fitted(int n, const SphereKahlerFunction& f, const SphereKahlerFunction& g) {
  constexpr int kAlpha = 5, kBeta = 6;
  Mat E(kAlpha * kBeta, 4);
  Vec y(kAlpha * kBeta);
  int row = 0;
  for (int i = 0; i < kAlpha; ++i) {
    const double alpha = 0.45 + i * (std::numbers::pi - 0.9) / (kAlpha - 1);
    for (int j = 0; j < kBeta; ++j) {
      const double beta = 0.2 + j * 2 * std::numbers::pi / kBeta;
      const SpherePoint s = SpherePoint::from_angles(alpha, beta);
      E.row(row) << 1.0, s.x, s.y, s.z;
      y(row) = sphere_bracket_fd(n, f, g, alpha, beta);
      ++row;
    }
  }
  const Vec c = E.colPivHouseholderQr().solve(y);
  return {c(0), c(1), c(2), c(3)};
}

double commutator_residual_perturbed(int n, const SphereKahlerFunction& f, const SphereKahlerFunction& g,
                                     double perturbation) {
  CMat Qf = q_matrix(n, f).Q;
  Qf(0, 0) += perturbation;
  const CMat Qg = q_matrix(n, g).Q;
  const CMat Qb = q_matrix(n, sphere_bracket_fitted(n, f, g)).Q;
  return (Qb + 0.5 * kI * (Qf * Qg - Qg * Qf)).cwiseAbs().maxCoeff();
}

double commutator_residual(int n, const SphereKahlerFunction& f, const SphereKahlerFunction& g) {
  return commutator_residual_perturbed(n, f, g, 0.0);
}

double hat_bracket_residual(int n, const SphereKahlerFunction& f, const SphereKahlerFunction& g, double alpha,
                            double beta) {
  const CMat Af = -2.0 * kI * q_matrix(n, f).Q;
  const CMat Ag = -2.0 * kI * q_matrix(n, g).Q;
  const ProjectivePoint z(psi_embedding(n, alpha, beta));
  const double fs = fs_poisson_bracket([&](const ProjectivePoint& w) { return xi_A(Af, w); },
                                       [&](const ProjectivePoint& w) { return xi_A(Ag, w); }, z);
  return std::abs(sphere_bracket_fd(n, f, g, alpha, beta) - 0.25 * fs);
}

double casimir_residual(int n) {
  CMat S = CMat::Zero(n + 1, n + 1);
  for (int a = 0; a < 3; ++a) {
    const CMat Q = q_matrix(n, coordinate(a)).Q;
    S += Q * Q;
  }
  const Complex c = S.trace() / static_cast<double>(n + 1);
  return (S - c * CMat::Identity(n + 1, n + 1)).cwiseAbs().maxCoeff();
}

double su2_closure_residual(int n) {
  const int d = n + 1;
  std::vector<CMat> rho;
  for (int a = 0; a < 3; ++a) rho.push_back(0.5 * kI * q_matrix(n, coordinate(a)).Q);
  // Real least squares on stacked (Re, Im) entries.
  Mat B(2 * d * d, 3);
  for (int a = 0; a < 3; ++a) {
    B.col(a) << Eigen::Map<const Mat>(Mat(rho[a].real()).data(), d * d, 1),
        Eigen::Map<const Mat>(Mat(rho[a].imag()).data(), d * d, 1);
  }
  const auto qr = B.colPivHouseholderQr();
  double worst = 0.0;
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b) {
      const CMat C = rho[a] * rho[b] - rho[b] * rho[a];
      Vec y(2 * d * d);
      y << Eigen::Map<const Mat>(Mat(C.real()).data(), d * d, 1), Eigen::Map<const Mat>(Mat(C.imag()).data(), d * d, 1);
      const Vec coef = qr.solve(y);
      worst = std::max(worst, (B * coef - y).lpNorm<Eigen::Infinity>());
    }
  return worst;
}

Vec stern_gerlach_transition(int n, const SphereKahlerFunction& f1, int m1, const SphereKahlerFunction& f2) {
  if (f1.axis_norm() == 0.0 || f2.axis_norm() == 0.0) throw DomainError("Stern-Gerlach axes must be nonzero");
  if (m1 < 0 || m1 > n) throw DomainError("incoming eigenvalue index out of range");
  const CMat V1 = eigenvectors_ascending(q_matrix(n, f1).Q);
  const CMat V2 = eigenvectors_ascending(q_matrix(n, f2).Q);
  Vec p(n + 1);
  for (int m2 = 0; m2 <= n; ++m2) p(m2) = std::norm(hermitian(V2.col(m2), V1.col(m1)));
  return p;
}

}  // namespace igk
