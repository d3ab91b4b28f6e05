#pragma once

#include "igk/linalg.hpp"

namespace igk {

struct PlanePoint {
  double x = 0.0;
  double y = 0.0;
};

// f = c1 + cx·x + cy·y + cr·(x² + y²)/2
struct PlaneKahlerFunction {
  double c1 = 0.0;
  double cx = 0.0;
  double cy = 0.0;
  double cr = 0.0;

  double operator()(const PlanePoint& z) const;
};

PlaneKahlerFunction plane_bracket(const PlaneKahlerFunction& f, const PlaneKahlerFunction& g);
double plane_bracket_fd(const PlaneKahlerFunction& f, const PlaneKahlerFunction& g, const PlanePoint& z,
                        double step = 1e-5);

struct GaussianSpectrum {
  bool continuous;
  double mean;      // atom location when !continuous
  double variance;  // 0 when !continuous
  double density(double xi) const;
};

GaussianSpectrum gaussian_spectrum_probability(const PlaneKahlerFunction& f, const PlanePoint& z);

Complex coherent_state(double hbar, const PlanePoint& z, double xi);
// (Q(f)Ψ(z))(ξ), with Ψ derivatives taken in closed form.
Complex apply_q(double hbar, const PlaneKahlerFunction& f, const PlanePoint& z, double xi);

inline constexpr int kOscillatorOrder = 96;
inline constexpr double kOscillatorGate = 1e-9;

// ⟨Ψ(z), Q(f)Ψ(z)⟩
Complex oscillator_expectation(double hbar, const PlaneKahlerFunction& f, const PlanePoint& z);
double oscillator_expectation_residual(double hbar, const PlaneKahlerFunction& f, const PlanePoint& z);

// Matrix of Q(f) in the orthonormal Hermite functions φ_0..φ_{N-1} of N(0,1) width.
// Complex Hermitian: the y ↦ iℏ∂ term is imaginary in this basis.
struct OscillatorOperator {
  double hbar;
  CMat matrix;
};

OscillatorOperator oscillator_operator(double hbar, const PlaneKahlerFunction& f, int N = 64);
// Coefficients of Ψ(z) in the same basis.
CVec coherent_state_coefficients(double hbar, const PlanePoint& z, int N = 64);

}  // namespace igk
