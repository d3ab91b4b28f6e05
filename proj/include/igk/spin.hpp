#pragma once

#include <array>
#include <vector>

#include "igk/linalg.hpp"

namespace igk {

struct SpherePoint {
  double x = 0.0;
  double y = 0.0;
  double z = 1.0;

  // Colatitude α from the x-axis, azimuth β in the (y, z) plane.
  static SpherePoint from_angles(double alpha, double beta);
  std::array<double, 3> as_array() const { return {x, y, z}; }
};

// f = u0 + u·x + v·y + w·z
struct SphereKahlerFunction {
  double u0 = 0.0;
  double u = 0.0;
  double v = 0.0;
  double w = 0.0;

  double operator()(const SpherePoint& s) const { return u0 + u * s.x + v * s.y + w * s.z; }
  double axis_norm() const;
};

struct SphereDecomposition {
  double alpha;
  double beta;
  std::array<double, 3> axis;
};

struct RepMatrix {
  int n;
  CMat Q;
};

SpherePoint sphere_from_tangent(double theta, double theta_dot);
Vec pi_sphere(int n, const SpherePoint& s);
// Binomial B(n, q) pmf at natural parameter θ, q = e^θ/(1+e^θ).
Vec binomial_pmf_natural(int n, double theta);

SphereDecomposition decompose_sphere_function(int n, const SphereKahlerFunction& f);
std::vector<double> spin_spectrum(int n, const SphereKahlerFunction& f);
// One probability per λ_k, k = 0..n; a zero axis gives the single entry {1}.
Vec spin_probabilities(int n, const SphereKahlerFunction& f, const SpherePoint& s);

CVec psi_embedding(int n, double alpha, double beta);
RepMatrix q_matrix(int n, const SphereKahlerFunction& f);

// {f, g} on (S², n·ω) in closed form: −(1/n) (a_f × a_g)·(x, y, z).
SphereKahlerFunction sphere_bracket(int n, const SphereKahlerFunction& f, const SphereKahlerFunction& g);
// Pointwise bracket by finite differences in the (α, β) chart.
double sphere_bracket_fd(int n, const SphereKahlerFunction& f, const SphereKahlerFunction& g, double alpha,
                         double beta, double step = 1e-5);
// Least-squares fit of the FD bracket onto span{1, x, y, z}.
SphereKahlerFunction sphere_bracket_fitted(int n, const SphereKahlerFunction& f, const SphereKahlerFunction& g);

// ∥Q({f,g}) + (i/2)[Q(f), Q(g)]∥∞ with the bracket from the FD oracle.
double commutator_residual(int n, const SphereKahlerFunction& f, const SphereKahlerFunction& g);
// Same, with a perturbation added to Q(f)(0,0); verification harness hook.
double commutator_residual_perturbed(int n, const SphereKahlerFunction& f, const SphereKahlerFunction& g,
                                     double perturbation);
// |{f,g}(α, β) − ¼{f̂, ĝ}_FS(Ψ(α, β))| with f̂ = ξ^{−2iQ(f)} and the standard FS scale.
double hat_bracket_residual(int n, const SphereKahlerFunction& f, const SphereKahlerFunction& g, double alpha,
                            double beta);
// ∥Σ_a Q(x_a)² − c·I∥∞
double casimir_residual(int n);
// Projection residual of [ρ(x_a), ρ(x_b)] onto span ρ(x, y, z), ρ = (i/2)Q.
double su2_closure_residual(int n);

Vec stern_gerlach_transition(int n, const SphereKahlerFunction& f1, int m1, const SphereKahlerFunction& f2);

}  // namespace igk
