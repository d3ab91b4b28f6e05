#pragma once

#include <vector>

#include "igk/families.hpp"

namespace igk {

enum class Chart { Natural, Expectation };

struct MetricMatrix {
  Mat entries;
  Chart chart = Chart::Natural;
};

// Γ_{ij,k}, lowered last index.
class ChristoffelTensor {
 public:
  ChristoffelTensor(int dim, double alpha, Chart chart);
  int dim() const { return dim_; }
  double alpha() const { return alpha_; }
  Chart chart() const { return chart_; }
  double& operator()(int i, int j, int k) { return data_[(i * dim_ + j) * dim_ + k]; }
  double operator()(int i, int j, int k) const { return data_[(i * dim_ + j) * dim_ + k]; }
  double max_abs() const;

 private:
  int dim_;
  double alpha_;
  Chart chart_;
  std::vector<double> data_;
};

// R(i,j,k,l): component l of R(∂_i,∂_j)∂_k.
class CurvatureTensor {
 public:
  CurvatureTensor(int dim, double alpha);
  int dim() const { return dim_; }
  double alpha() const { return alpha_; }
  double& operator()(int i, int j, int k, int l) { return data_[((i * dim_ + j) * dim_ + k) * dim_ + l]; }
  double operator()(int i, int j, int k, int l) const {
    return data_[((i * dim_ + j) * dim_ + k) * dim_ + l];
  }
  double max_abs() const;

 private:
  int dim_;
  double alpha_;
  std::vector<double> data_;
};

inline constexpr double kCurvatureStep = 1e-4;

MetricMatrix fisher_metric(const ExponentialFamily& fam, const NaturalPoint& theta);
MetricMatrix fisher_metric_hessian(const ExponentialFamily& fam, const NaturalPoint& theta);
MetricMatrix fisher_metric_expectation_chart(const ExponentialFamily& fam, const NaturalPoint& theta);

ChristoffelTensor christoffel_alpha(const ExponentialFamily& fam, const NaturalPoint& theta, double alpha);
// Same connection expressed in the η-chart at the point η(θ).
ChristoffelTensor christoffel_alpha_expectation_chart(const ExponentialFamily& fam,
                                                      const NaturalPoint& theta, double alpha);

CurvatureTensor curvature_tensor(const ExponentialFamily& fam, const NaturalPoint& theta, double alpha);

// ∂_i h by central differences; returned as d[i](j,k).
std::vector<Mat> metric_derivatives(const ExponentialFamily& fam, const NaturalPoint& theta,
                                    double step = kCurvatureStep);

double duality_residual(const ExponentialFamily& fam, const NaturalPoint& theta, double alpha);
// max |h·(∂η/∂θ)^{-1} − I| with the Jacobian taken by finite differences of η.
double cross_duality_residual(const ExponentialFamily& fam, const NaturalPoint& theta);
// max |h(R(∂i,∂j)∂k,∂l) + h(R*(∂i,∂j)∂l,∂k)| with R* the curvature of the −α connection.
double curvature_skew_duality_residual(const ExponentialFamily& fam, const NaturalPoint& theta,
                                       double alpha);

}  // namespace igk
