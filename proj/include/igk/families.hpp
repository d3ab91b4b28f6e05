#pragma once

#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "igk/linalg.hpp"

namespace igk {

enum class SpaceKind { Finite, RealLine };

struct MeasuredSpace {
  SpaceKind kind = SpaceKind::Finite;
  std::vector<double> points;       // Finite only
  std::vector<std::string> labels;  // Finite only, same length as points
  int quadrature_order = 64;        // RealLine only

  static MeasuredSpace finite(std::vector<double> points, std::vector<std::string> labels = {});
  static MeasuredSpace real_line(int quadrature_order = 64);

  bool is_finite() const { return kind == SpaceKind::Finite; }
  std::size_t size() const { return points.size(); }
};

// Open box; infinite bounds allowed.
struct ParameterBox {
  Vec lower;
  Vec upper;

  static ParameterBox unbounded(int dim);
  bool contains(const Vec& theta) const;
  // Smallest distance to a finite face, +inf if none.
  double distance_to_boundary(const Vec& theta) const;
};

struct NaturalPoint {
  Vec coords;
};

struct ExpectationPoint {
  Vec coords;
};

using RandomVariable = std::function<double(double)>;

// Real-valued statistic tabulated on a finite space.
RandomVariable tabulated(const MeasuredSpace& space, std::vector<double> values);

struct FamilyDefinition {
  std::string name;
  MeasuredSpace space;
  int dim = 1;
  std::function<double(double)> carrier;                  // C
  std::vector<std::function<double(double)>> statistics;  // F_1..F_n
  std::function<double(const Vec&)> log_partition;        // ψ
  ParameterBox domain;
  // Optional closed forms; finite differences are used when absent.
  std::function<Vec(const Vec&)> gradient;
  std::function<Mat(const Vec&)> hessian;
  // Location/scale of p_θ on the real line, used to place quadrature nodes.
  std::function<std::pair<double, double>(const Vec&)> location_scale;
};

class ExponentialFamily {
 public:
  explicit ExponentialFamily(FamilyDefinition def);

  const std::string& name() const { return def_->name; }
  int dim() const { return def_->dim; }
  const MeasuredSpace& space() const { return def_->space; }
  const ParameterBox& domain() const { return def_->domain; }
  bool has_closed_form_gradient() const { return static_cast<bool>(def_->gradient); }

  double carrier(double x) const { return def_->carrier(x); }
  Vec statistics(double x) const;
  double log_partition(const Vec& theta) const;
  Vec log_partition_gradient(const Vec& theta) const;
  Mat log_partition_hessian(const Vec& theta) const;
  std::pair<double, double> location_scale(const Vec& theta) const;

  void require_in_domain(const Vec& theta) const;

 private:
  std::shared_ptr<const FamilyDefinition> def_;
};

// "categorical:n", "binomial:n", "normal", "normal_fixed_sigma".
ExponentialFamily builtin_family(std::string_view name);
ExponentialFamily categorical_family(int n);
ExponentialFamily binomial_family(int n);
ExponentialFamily normal_family();
ExponentialFamily normal_fixed_sigma_family();
std::vector<std::string> builtin_family_names();

double density(const ExponentialFamily& fam, const NaturalPoint& theta, double x);
// Finite spaces only: p_θ at every point, in order.
Vec density_table(const ExponentialFamily& fam, const NaturalPoint& theta);

// E_{p_θ}[g] for a vector-valued g with `out_dim` components.
Vec expectation(const ExponentialFamily& fam, const NaturalPoint& theta,
                const std::function<Vec(double)>& g, int out_dim);
// ∫ p_θ, i.e. Σ or quadrature of the density; 1 up to numerics.
double total_mass(const ExponentialFamily& fam, const NaturalPoint& theta);

ExpectationPoint natural_to_expectation(const ExponentialFamily& fam, const NaturalPoint& theta);
ExpectationPoint natural_to_expectation_by_moments(const ExponentialFamily& fam,
                                                   const NaturalPoint& theta);
NaturalPoint expectation_to_natural(const ExponentialFamily& fam, const ExpectationPoint& eta);

struct Moments {
  double mean;
  double variance;
};
Moments mean_and_variance(const ExponentialFamily& fam, const NaturalPoint& theta,
                          const RandomVariable& X);

// Rank of the [1, F_1..F_n] evaluation matrix equals n+1.
bool statistics_independent(const ExponentialFamily& fam);

// A point comfortably inside the domain, used as Newton start and sampling center.
Vec interior_reference_point(const ExponentialFamily& fam);

}  // namespace igk
