#include "igk/oscillator.hpp"

#include <cmath>
#include <numbers>

#include "igk/dombrowski.hpp"
#include "igk/errors.hpp"
#include "igk/families.hpp"
#include "igk/quadrature.hpp"

namespace igk {

double PlaneKahlerFunction::operator()(const PlanePoint& z) const {
  return c1 + cx * z.x + cy * z.y + cr * 0.5 * (z.x * z.x + z.y * z.y);
}

PlaneKahlerFunction plane_bracket(const PlaneKahlerFunction& f, const PlaneKahlerFunction& g) {
  // {x,y} = 1, {x,r} = y, {y,r} = −x, brackets with 1 vanish; r = (x²+y²)/2.
  PlaneKahlerFunction b;
  b.c1 = f.cx * g.cy - f.cy * g.cx;
  b.cy = f.cx * g.cr - f.cr * g.cx;
  b.cx = -(f.cy * g.cr - f.cr * g.cy);
  return b;
}

double plane_bracket_fd(const PlaneKahlerFunction& f, const PlaneKahlerFunction& g, const PlanePoint& z, double step) {
  // T N(μ,1) with θ = x and fiber θ̇ = y.
  static const ExponentialFamily family = normal_fixed_sigma_family();
  const TangentBundlePoint at{{Vec::Constant(1, z.x)}, Vec::Constant(1, z.y)};
  const Mat Omega = kahler_structure_at(family, at).Omega;
  auto differential = [&](const PlaneKahlerFunction& h) {
    Vec d(2);
    d(0) = (h({z.x + step, z.y}) - h({z.x - step, z.y})) / (2 * step);
    d(1) = (h({z.x, z.y + step}) - h({z.x, z.y - step})) / (2 * step);
    return d;
  };
  const auto lu = Omega.transpose().partialPivLu();
  const Vec xf = lu.solve(differential(f));
  const Vec xg = lu.solve(differential(g));
  return xf.dot(Omega * xg);
}

double GaussianSpectrum::density(double xi) const {
  if (!continuous) throw DomainError("spectral measure is a point mass; it has no density");
  return std::exp(-0.5 * (xi - mean) * (xi - mean) / variance) / std::sqrt(2 * std::numbers::pi * variance);
}

GaussianSpectrum gaussian_spectrum_probability(const PlaneKahlerFunction& f, const PlanePoint& z) {
  if (f.cr != 0.0) throw DomainError("only functions u0 + ux + vy have a spectral decomposition");
  const double var = f.cx * f.cx + f.cy * f.cy;
  if (var == 0.0) return {false, f.c1, 0.0};
  return {true, f(z), var};
}

Complex coherent_state(double hbar, const PlanePoint& z, double xi) {
  if (!(hbar > 0)) throw DomainError("hbar must be positive");
  const double d = xi - z.x;
  return std::pow(2 * std::numbers::pi, -0.25) * std::exp(-0.25 * d * d) * std::exp(-kI * (z.y * xi / hbar));
}

Complex apply_q(double hbar, const PlaneKahlerFunction& f, const PlanePoint& z, double xi) {
  const Complex psi = coherent_state(hbar, z, xi);
  const Complex log_deriv = -0.5 * (xi - z.x) - kI * (z.y / hbar);
  const Complex d1 = log_deriv * psi;
  const Complex d2 = (log_deriv * log_deriv - 0.5) * psi;
  Complex out = f.c1 * psi + f.cx * xi * psi + f.cy * (kI * hbar) * d1;
  out += f.cr * (-0.5 * hbar * hbar * d2 + 0.5 * xi * xi * psi - (hbar * hbar / 8 + 0.5) * psi);
  return out;
}

Complex oscillator_expectation(double hbar, const PlaneKahlerFunction& f, const PlanePoint& z) {
  auto integrand = [&](double xi) { return std::conj(coherent_state(hbar, z, xi)) * apply_q(hbar, f, z, xi); };
  const Complex coarse = integrate_real_line(gauss_hermite(kOscillatorOrder), integrand, z.x, 1.0);
  const Complex fine = integrate_real_line(gauss_hermite(2 * kOscillatorOrder), integrand, z.x, 1.0);
  const double gap = std::abs(fine - coarse);
  if (gap > kOscillatorGate * std::max(1.0, std::abs(fine))) {
    throw NumericalError("oscillator quadrature did not converge", gap);
  }
  return fine;
}

double oscillator_expectation_residual(double hbar, const PlaneKahlerFunction& f, const PlanePoint& z) {
  return std::abs(f(z) - oscillator_expectation(hbar, f, z));
}

namespace {

// φ_k(ξ) = 2^{-1/4} ψ_k(ξ/√2), orthonormal in L²(dξ), φ_0 ∝ e^{-ξ²/4}.
Vec hermite_basis(int N, double xi) {
  const double t = xi / std::sqrt(2.0);
  Vec phi(N);
  double prev = 0.0;
  double cur = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * t * t);
  for (int k = 0; k < N; ++k) {
    phi(k) = std::pow(2.0, -0.25) * cur;
    const double next = std::sqrt(2.0 / (k + 1)) * t * cur - std::sqrt(static_cast<double>(k) / (k + 1)) * prev;
    prev = cur;
    cur = next;
  }
  return phi;
}

}  // namespace

OscillatorOperator oscillator_operator(double hbar, const PlaneKahlerFunction& f, int N) {
  if (!(hbar > 0)) throw DomainError("hbar must be positive");
  if (N < 2) throw DomainError("basis size must be >= 2");
  // Pad by two so products of the tridiagonal factors are exact in the kept block.
  const int M = N + 2;
  Mat a = Mat::Zero(M, M);
  for (int k = 1; k < M; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  const Mat X = a + a.transpose();          // ξ
  const Mat D = 0.5 * (a - a.transpose());  // d/dξ
  CMat Q = CMat::Zero(M, M);
  Q += f.c1 * CMat::Identity(M, M);
  Q += f.cx * X.cast<Complex>();
  Q += f.cy * (kI * hbar) * D.cast<Complex>();
  const Mat H = -0.5 * hbar * hbar * D * D + 0.5 * X * X - (hbar * hbar / 8 + 0.5) * Mat::Identity(M, M);
  Q += f.cr * H.cast<Complex>();
  return {hbar, Q.topLeftCorner(N, N)};
}

CVec coherent_state_coefficients(double hbar, const PlanePoint& z, int N) {
  const GaussHermiteRule rule = gauss_hermite(std::max(2 * N + 40, 120));
  return integrate_real_line(
      rule, [&](double xi) { return CVec(hermite_basis(N, xi).cast<Complex>() * coherent_state(hbar, z, xi)); },
      0.5 * z.x, 1.0);
}

}  // namespace igk
