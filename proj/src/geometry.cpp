#include "igk/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "igk/errors.hpp"

namespace igk {

namespace {

void require_fd_room(const ExponentialFamily& fam, const Vec& theta, double step) {
  fam.require_in_domain(theta);
  for (int i = 0; i < fam.dim(); ++i) {
    for (double s : {-2 * step, 2 * step}) {
      Vec t = theta;
      t(i) += s;
      if (!fam.domain().contains(t)) throw DomainError(fam.name() + ": θ too close to the domain boundary");
    }
  }
}

Vec shifted(const Vec& theta, int i, double s) {
  Vec t = theta;
  t(i) += s;
  return t;
}

// Fourth-order central difference: (8(f(+h) − f(−h)) − (f(+2h) − f(−2h))) / 12h.
template <class Fn>
auto central_difference(Fn&& f, const Vec& theta, int i, double h) {
  return ((8.0 * (f(shifted(theta, i, h)) - f(shifted(theta, i, -h))) -
           (f(shifted(theta, i, 2 * h)) - f(shifted(theta, i, -2 * h)))) /
          (12.0 * h))
      .eval();
}

// Γ^l_{jk} stored as [(j*n + k)*n + l].
std::vector<double> raised_christoffel(const ExponentialFamily& fam, const Vec& theta, double alpha) {
  const int n = fam.dim();
  const ChristoffelTensor low = christoffel_alpha(fam, {theta}, alpha);
  const Mat hinv = fisher_metric_hessian(fam, {theta}).entries.inverse();
  std::vector<double> up(static_cast<std::size_t>(n * n * n), 0.0);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) {
        double s = 0.0;
        for (int m = 0; m < n; ++m) s += hinv(l, m) * low(j, k, m);
        up[(j * n + k) * n + l] = s;
      }
  return up;
}

}  // namespace

ChristoffelTensor::ChristoffelTensor(int dim, double alpha, Chart chart)
    : dim_(dim), alpha_(alpha), chart_(chart), data_(static_cast<std::size_t>(dim * dim * dim), 0.0) {}

double ChristoffelTensor::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

CurvatureTensor::CurvatureTensor(int dim, double alpha)
    : dim_(dim), alpha_(alpha), data_(static_cast<std::size_t>(dim * dim * dim * dim), 0.0) {}

double CurvatureTensor::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

MetricMatrix fisher_metric(const ExponentialFamily& fam, const NaturalPoint& theta) {
  const int n = fam.dim();
  const Vec eta = fam.log_partition_gradient(theta.coords);
  const Vec flat = expectation(
      fam, theta,
      [&](double x) {
        const Vec s = fam.statistics(x) - eta;
        Mat ss = s * s.transpose();
        return Vec(Eigen::Map<const Vec>(ss.data(), n * n));
      },
      n * n);
  Mat h = Eigen::Map<const Mat>(flat.data(), n, n);
  return {0.5 * (h + h.transpose()), Chart::Natural};
}

MetricMatrix fisher_metric_hessian(const ExponentialFamily& fam, const NaturalPoint& theta) {
  return {fam.log_partition_hessian(theta.coords), Chart::Natural};
}

MetricMatrix fisher_metric_expectation_chart(const ExponentialFamily& fam, const NaturalPoint& theta) {
  // ∂θ/∂η = h⁻¹, so the metric pulls back to h⁻¹ h h⁻¹ = h⁻¹.
  return {fisher_metric_hessian(fam, theta).entries.inverse(), Chart::Expectation};
}

ChristoffelTensor christoffel_alpha(const ExponentialFamily& fam, const NaturalPoint& theta, double alpha) {
  const int n = fam.dim();
  const Vec eta = fam.log_partition_gradient(theta.coords);
  const Mat H = fam.log_partition_hessian(theta.coords);
  const double c = 0.5 * (1.0 - alpha);
  // ∂_i∂_j ln p = −ψ_ij for every x.
  const Vec flat = expectation(
      fam, theta,
      [&](double x) {
        const Vec s = fam.statistics(x) - eta;
        Vec out(n * n * n);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) {
            const double a = -H(i, j) + c * s(i) * s(j);
            for (int k = 0; k < n; ++k) out((i * n + j) * n + k) = a * s(k);
          }
        return out;
      },
      n * n * n);
  ChristoffelTensor G(n, alpha, Chart::Natural);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        // Symmetrize away quadrature rounding; the integrand is symmetric in (i, j).
        G(i, j, k) = 0.5 * (flat((i * n + j) * n + k) + flat((j * n + i) * n + k));
      }
  return G;
}

std::vector<Mat> metric_derivatives(const ExponentialFamily& fam, const NaturalPoint& theta, double step) {
  require_fd_room(fam, theta.coords, step);
  std::vector<Mat> d;
  for (int i = 0; i < fam.dim(); ++i) {
    d.push_back(central_difference([&](const Vec& t) { return fam.log_partition_hessian(t); }, theta.coords, i, step));
  }
  return d;
}

ChristoffelTensor christoffel_alpha_expectation_chart(const ExponentialFamily& fam, const NaturalPoint& theta,
                                                      double alpha) {
  const int n = fam.dim();
  const ChristoffelTensor G = christoffel_alpha(fam, theta, alpha);
  const Mat A = fisher_metric_hessian(fam, theta).entries.inverse();  // ∂θ/∂η
  const std::vector<Mat> dh = metric_derivatives(fam, theta);
  // ∂_{η_a} h⁻¹ = Σ_i A_{ia} (−h⁻¹ ∂_i h h⁻¹)
  std::vector<Mat> dA(n, Mat::Zero(n, n));
  for (int a = 0; a < n; ++a)
    for (int i = 0; i < n; ++i) dA[a] -= A(i, a) * (A * dh[i] * A);

  ChristoffelTensor out(n, alpha, Chart::Expectation);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        double s = dA[a](c, b);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) s += A(i, a) * A(j, b) * A(k, c) * G(i, j, k);
        out(a, b, c) = s;
      }
  return out;
}

CurvatureTensor curvature_tensor(const ExponentialFamily& fam, const NaturalPoint& theta, double alpha) {
  const int n = fam.dim();
  const double h = kCurvatureStep;
  require_fd_room(fam, theta.coords, h);
  const std::vector<double> G0 = raised_christoffel(fam, theta.coords, alpha);
  // dG[i][(j*n+k)*n+l] = ∂_i Γ^l_{jk}
  std::vector<Vec> dG(n);
  for (int i = 0; i < n; ++i) {
    dG[i] = central_difference(
        [&](const Vec& t) {
          const std::vector<double> g = raised_christoffel(fam, t, alpha);
          return Vec(Eigen::Map<const Vec>(g.data(), static_cast<Eigen::Index>(g.size())));
        },
        theta.coords, i, h);
  }
  auto g0 = [&](int j, int k, int l) { return G0[(j * n + k) * n + l]; };
  CurvatureTensor R(n, alpha);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double r = dG[i]((j * n + k) * n + l) - dG[j]((i * n + k) * n + l);
          for (int m = 0; m < n; ++m) r += g0(j, k, m) * g0(i, m, l) - g0(i, k, m) * g0(j, m, l);
          R(i, j, k, l) = r;
        }
  return R;
}

double duality_residual(const ExponentialFamily& fam, const NaturalPoint& theta, double alpha) {
  const int n = fam.dim();
  const std::vector<Mat> dh = metric_derivatives(fam, theta);
  const ChristoffelTensor Ga = christoffel_alpha(fam, theta, alpha);
  const ChristoffelTensor Gb = christoffel_alpha(fam, theta, -alpha);
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) worst = std::max(worst, std::abs(dh[i](j, k) - Ga(i, j, k) - Gb(i, k, j)));
  return worst;
}

double cross_duality_residual(const ExponentialFamily& fam, const NaturalPoint& theta) {
  const int n = fam.dim();
  Mat J(n, n);
  for (int j = 0; j < n; ++j) {
    const double s = 1e-5 * std::max(1.0, std::abs(theta.coords(j)));
    require_fd_room(fam, theta.coords, s);
    J.col(j) = central_difference([&](const Vec& t) { return fam.log_partition_gradient(t); }, theta.coords, j, s);
  }
  const Mat h = fisher_metric_hessian(fam, theta).entries;
  return (h * J.inverse() - Mat::Identity(n, n)).lpNorm<Eigen::Infinity>();
}

double curvature_skew_duality_residual(const ExponentialFamily& fam, const NaturalPoint& theta, double alpha) {
  const int n = fam.dim();
  const CurvatureTensor R = curvature_tensor(fam, theta, alpha);
  const CurvatureTensor Rs = curvature_tensor(fam, theta, -alpha);
  const Mat h = fisher_metric_hessian(fam, theta).entries;
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double a = 0.0, b = 0.0;
          for (int m = 0; m < n; ++m) {
            a += R(i, j, k, m) * h(m, l);
            b += Rs(i, j, l, m) * h(m, k);
          }
          worst = std::max(worst, std::abs(a + b));
        }
  return worst;
}

}  // namespace igk
