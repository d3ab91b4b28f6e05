#include "igk/families.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>

#include "igk/errors.hpp"
#include "igk/quadrature.hpp"

namespace igk {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kQuadratureGate = 1e-9;

double softplus(double t) { return t > 0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t)); }
double logistic(double t) { return t >= 0 ? 1.0 / (1.0 + std::exp(-t)) : std::exp(t) / (1.0 + std::exp(t)); }

int parse_size_suffix(std::string_view name, std::string_view prefix) {
  std::string_view digits = name.substr(prefix.size());
  int n = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
  if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.empty()) {
    throw UsageError("malformed family name '" + std::string(name) + "'");
  }
  return n;
}

Vec fd_gradient(const std::function<double(const Vec&)>& psi, const Vec& theta) {
  Vec g(theta.size());
  for (Eigen::Index i = 0; i < theta.size(); ++i) {
    const double h = 1e-5 * std::max(1.0, std::abs(theta(i)));
    Vec tp = theta, tm = theta;
    tp(i) += h;
    tm(i) -= h;
    g(i) = (psi(tp) - psi(tm)) / (2 * h);
  }
  return g;
}

}  // namespace

MeasuredSpace MeasuredSpace::finite(std::vector<double> points, std::vector<std::string> labels) {
  MeasuredSpace s;
  s.kind = SpaceKind::Finite;
  if (labels.empty()) {
    for (std::size_t i = 0; i < points.size(); ++i) labels.push_back("x" + std::to_string(i + 1));
  }
  if (labels.size() != points.size()) throw DomainError("labels and points differ in length");
  std::vector<double> sorted = points;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw DomainError("finite space has repeated points");
  }
  if (points.size() < 2) throw DomainError("finite space needs at least two points");
  s.points = std::move(points);
  s.labels = std::move(labels);
  return s;
}

MeasuredSpace MeasuredSpace::real_line(int quadrature_order) {
  if (quadrature_order < 1) throw DomainError("quadrature order must be >= 1");
  MeasuredSpace s;
  s.kind = SpaceKind::RealLine;
  s.quadrature_order = quadrature_order;
  return s;
}

ParameterBox ParameterBox::unbounded(int dim) {
  return {Vec::Constant(dim, -kInf), Vec::Constant(dim, kInf)};
}

bool ParameterBox::contains(const Vec& theta) const {
  if (theta.size() != lower.size()) return false;
  for (Eigen::Index i = 0; i < theta.size(); ++i) {
    if (!std::isfinite(theta(i)) || !(theta(i) > lower(i)) || !(theta(i) < upper(i))) return false;
  }
  return true;
}

double ParameterBox::distance_to_boundary(const Vec& theta) const {
  double d = kInf;
  for (Eigen::Index i = 0; i < theta.size(); ++i) {
    d = std::min({d, theta(i) - lower(i), upper(i) - theta(i)});
  }
  return d;
}

RandomVariable tabulated(const MeasuredSpace& space, std::vector<double> values) {
  if (!space.is_finite() || values.size() != space.size()) {
    throw DomainError("tabulated variable needs one value per point of a finite space");
  }
  return [points = space.points, values = std::move(values)](double x) {
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (points[i] == x) return values[i];
    }
    throw DomainError("point is not in the sample space");
  };
}

ExponentialFamily::ExponentialFamily(FamilyDefinition def) {
  if (def.dim < 1) throw DomainError("family dimension must be >= 1");
  if (static_cast<int>(def.statistics.size()) != def.dim) throw DomainError("need exactly n statistics");
  if (def.domain.lower.size() != def.dim || def.domain.upper.size() != def.dim) {
    throw DomainError("domain bounds must have length n");
  }
  if (!def.carrier) def.carrier = [](double) { return 0.0; };
  if (!def.log_partition) throw DomainError("log-partition function missing");
  def_ = std::make_shared<const FamilyDefinition>(std::move(def));
}

Vec ExponentialFamily::statistics(double x) const {
  Vec f(dim());
  for (int i = 0; i < dim(); ++i) f(i) = def_->statistics[i](x);
  return f;
}

void ExponentialFamily::require_in_domain(const Vec& theta) const {
  if (theta.size() != dim()) {
    throw DomainError(name() + ": expected " + std::to_string(dim()) + " natural coordinates");
  }
  if (!def_->domain.contains(theta)) throw DomainError(name() + ": θ outside the parameter domain");
}

double ExponentialFamily::log_partition(const Vec& theta) const {
  require_in_domain(theta);
  return def_->log_partition(theta);
}

Vec ExponentialFamily::log_partition_gradient(const Vec& theta) const {
  require_in_domain(theta);
  if (def_->gradient) return def_->gradient(theta);
  for (int i = 0; i < dim(); ++i) {
    if (def_->domain.distance_to_boundary(theta) <= 1e-5 * std::max(1.0, std::abs(theta(i)))) {
      throw DomainError(name() + ": θ too close to the boundary for finite differences");
    }
  }
  return fd_gradient(def_->log_partition, theta);
}

Mat ExponentialFamily::log_partition_hessian(const Vec& theta) const {
  require_in_domain(theta);
  if (def_->hessian) return def_->hessian(theta);
  const int n = dim();
  Mat H(n, n);
  if (def_->gradient) {
    for (int i = 0; i < n; ++i) {
      const double h = 1e-5 * std::max(1.0, std::abs(theta(i)));
      Vec tp = theta, tm = theta;
      tp(i) += h;
      tm(i) -= h;
      require_in_domain(tp);
      require_in_domain(tm);
      H.col(i) = (def_->gradient(tp) - def_->gradient(tm)) / (2 * h);
    }
  } else {
    // Second differences of ψ; a larger step balances rounding against truncation.
    const auto& psi = def_->log_partition;
    Vec step(n);
    for (int i = 0; i < n; ++i) step(i) = 1e-4 * std::max(1.0, std::abs(theta(i)));
    auto at = [&](int i, double si, int j, double sj) {
      Vec t = theta;
      t(i) += si * step(i);
      t(j) += sj * step(j);
      require_in_domain(t);
      return psi(t);
    };
    const double p0 = psi(theta);
    for (int i = 0; i < n; ++i) {
      H(i, i) = (at(i, 1, i, 0) - 2 * p0 + at(i, -1, i, 0)) / (step(i) * step(i));
      for (int j = 0; j < i; ++j) {
        H(i, j) = H(j, i) = (at(i, 1, j, 1) - at(i, 1, j, -1) - at(i, -1, j, 1) + at(i, -1, j, -1)) /
                            (4 * step(i) * step(j));
      }
    }
  }
  return 0.5 * (H + H.transpose());
}

std::pair<double, double> ExponentialFamily::location_scale(const Vec& theta) const {
  if (def_->location_scale) return def_->location_scale(theta);
  // Refine a standard-normal guess by moment matching.
  const double psi = log_partition(theta);
  double c = 0.0, s = 1.0;
  const GaussHermiteRule rule = gauss_hermite(std::max(space().quadrature_order, 32));
  for (int it = 0; it < 6; ++it) {
    Vec m = integrate_real_line(
        rule,
        [&](double x) {
          const double p = std::exp(carrier(x) + theta.dot(statistics(x)) - psi);
          Vec r(3);
          r << p, p * x, p * x * x;
          return r;
        },
        c, s);
    if (!(m(0) > 0) || !std::isfinite(m(1)) || !std::isfinite(m(2))) break;
    const double mean = m(1) / m(0);
    const double var = m(2) / m(0) - mean * mean;
    if (!(var > 0)) break;
    c = mean;
    s = std::sqrt(var);
  }
  return {c, s};
}

ExponentialFamily categorical_family(int n) {
  if (n < 2) throw UsageError("categorical family needs n >= 2");
  FamilyDefinition d;
  d.name = "categorical:" + std::to_string(n);
  std::vector<double> pts(n);
  for (int i = 0; i < n; ++i) pts[i] = i;
  d.space = MeasuredSpace::finite(pts);
  d.dim = n - 1;
  for (int i = 0; i < n - 1; ++i) {
    d.statistics.push_back([i](double x) { return std::lround(x) == i ? 1.0 : 0.0; });
  }
  // ψ = ln(1 + Σ e^{θ_i}) via log-sum-exp with the implicit zero coordinate.
  d.log_partition = [](const Vec& t) {
    const double m = std::max(0.0, t.maxCoeff());
    return m + std::log(std::exp(-m) + (t.array() - m).exp().sum());
  };
  d.gradient = [](const Vec& t) {
    const double m = std::max(0.0, t.maxCoeff());
    Vec e = (t.array() - m).exp();
    return Vec(e / (std::exp(-m) + e.sum()));
  };
  d.hessian = [g = d.gradient](const Vec& t) {
    Vec eta = g(t);
    return Mat(Mat(eta.asDiagonal()) - eta * eta.transpose());
  };
  d.domain = ParameterBox::unbounded(n - 1);
  return ExponentialFamily(std::move(d));
}

ExponentialFamily binomial_family(int n) {
  if (n < 1) throw UsageError("binomial family needs n >= 1");
  FamilyDefinition d;
  d.name = "binomial:" + std::to_string(n);
  std::vector<double> pts(n + 1);
  for (int k = 0; k <= n; ++k) pts[k] = k;
  d.space = MeasuredSpace::finite(pts, {});
  for (int k = 0; k <= n; ++k) d.space.labels[k] = std::to_string(k);
  d.dim = 1;
  d.carrier = [n](double k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
  };
  d.statistics.push_back([](double k) { return k; });
  d.log_partition = [n](const Vec& t) { return n * softplus(t(0)); };
  d.gradient = [n](const Vec& t) { return Vec::Constant(1, n * logistic(t(0))); };
  d.hessian = [n](const Vec& t) {
    const double q = logistic(t(0));
    return Mat::Constant(1, 1, n * q * (1 - q));
  };
  d.domain = ParameterBox::unbounded(1);
  return ExponentialFamily(std::move(d));
}

ExponentialFamily normal_family() {
  FamilyDefinition d;
  d.name = "normal";
  d.space = MeasuredSpace::real_line();
  d.dim = 2;
  d.statistics = {[](double x) { return x; }, [](double x) { return x * x; }};
  d.log_partition = [](const Vec& t) {
    return -t(0) * t(0) / (4 * t(1)) + 0.5 * std::log(-std::numbers::pi / t(1));
  };
  d.gradient = [](const Vec& t) {
    const double mu = -t(0) / (2 * t(1));
    const double var = -1.0 / (2 * t(1));
    Vec g(2);
    g << mu, mu * mu + var;
    return g;
  };
  d.hessian = [](const Vec& t) {
    const double a = t(0), b = t(1);
    Mat H(2, 2);
    H(0, 0) = -1.0 / (2 * b);
    H(0, 1) = H(1, 0) = a / (2 * b * b);
    H(1, 1) = -a * a / (2 * b * b * b) + 1.0 / (2 * b * b);
    return H;
  };
  d.domain = ParameterBox{Vec::Constant(2, -kInf), (Vec(2) << kInf, 0.0).finished()};
  d.location_scale = [](const Vec& t) {
    return std::pair{-t(0) / (2 * t(1)), std::sqrt(-1.0 / (2 * t(1)))};
  };
  return ExponentialFamily(std::move(d));
}

ExponentialFamily normal_fixed_sigma_family() {
  FamilyDefinition d;
  d.name = "normal_fixed_sigma";
  d.space = MeasuredSpace::real_line();
  d.dim = 1;
  d.carrier = [](double x) { return -0.5 * x * x; };
  d.statistics.push_back([](double x) { return x; });
  d.log_partition = [](const Vec& t) { return 0.5 * t(0) * t(0) + 0.5 * std::log(2 * std::numbers::pi); };
  d.gradient = [](const Vec& t) { return Vec::Constant(1, t(0)); };
  d.hessian = [](const Vec&) { return Mat::Constant(1, 1, 1.0); };
  d.domain = ParameterBox::unbounded(1);
  d.location_scale = [](const Vec& t) { return std::pair{t(0), 1.0}; };
  return ExponentialFamily(std::move(d));
}

ExponentialFamily builtin_family(std::string_view name) {
  if (name == "normal") return normal_family();
  if (name == "normal_fixed_sigma") return normal_fixed_sigma_family();
  if (name.starts_with("categorical:")) return categorical_family(parse_size_suffix(name, "categorical:"));
  if (name.starts_with("binomial:")) return binomial_family(parse_size_suffix(name, "binomial:"));
  throw UsageError("unknown family '" + std::string(name) + "'");
}

std::vector<std::string> builtin_family_names() {
  return {"categorical:2", "categorical:3", "categorical:4", "binomial:1", "binomial:2",
          "binomial:3",    "binomial:10",   "normal",        "normal_fixed_sigma"};
}

double density(const ExponentialFamily& fam, const NaturalPoint& theta, double x) {
  const double psi = fam.log_partition(theta.coords);
  if (fam.space().is_finite() &&
      std::find(fam.space().points.begin(), fam.space().points.end(), x) == fam.space().points.end()) {
    throw DomainError("point is not in the sample space");
  }
  return std::exp(fam.carrier(x) + theta.coords.dot(fam.statistics(x)) - psi);
}

Vec density_table(const ExponentialFamily& fam, const NaturalPoint& theta) {
  if (!fam.space().is_finite()) throw DomainError("density table needs a finite sample space");
  const double psi = fam.log_partition(theta.coords);
  const auto& pts = fam.space().points;
  Vec p(static_cast<Eigen::Index>(pts.size()));
  for (std::size_t j = 0; j < pts.size(); ++j) {
    p(static_cast<Eigen::Index>(j)) = std::exp(fam.carrier(pts[j]) + theta.coords.dot(fam.statistics(pts[j])) - psi);
  }
  return p;
}

Vec expectation(const ExponentialFamily& fam, const NaturalPoint& theta, const std::function<Vec(double)>& g,
                int out_dim) {
  if (fam.space().is_finite()) {
    const Vec p = density_table(fam, theta);
    Vec acc = Vec::Zero(out_dim);
    for (std::size_t j = 0; j < fam.space().size(); ++j) acc += p(static_cast<Eigen::Index>(j)) * g(fam.space().points[j]);
    return acc;
  }
  const double psi = fam.log_partition(theta.coords);
  const auto [c, s] = fam.location_scale(theta.coords);
  auto integrand = [&](double x) -> Vec {
    const double p = std::exp(fam.carrier(x) + theta.coords.dot(fam.statistics(x)) - psi);
    if (p == 0.0) return Vec::Zero(out_dim);
    return p * g(x);
  };
  const int order = fam.space().quadrature_order;
  const Vec coarse = integrate_real_line(gauss_hermite(order), integrand, c, s);
  const Vec fine = integrate_real_line(gauss_hermite(2 * order), integrand, c, s);
  const double gap = (fine - coarse).lpNorm<Eigen::Infinity>();
  if (!(gap <= kQuadratureGate * std::max(1.0, fine.lpNorm<Eigen::Infinity>()))) {
    throw NumericalError(fam.name() + ": quadrature did not converge", gap);
  }
  return fine;
}

double total_mass(const ExponentialFamily& fam, const NaturalPoint& theta) {
  return expectation(fam, theta, [](double) { return Vec::Ones(1); }, 1)(0);
}

ExpectationPoint natural_to_expectation(const ExponentialFamily& fam, const NaturalPoint& theta) {
  return {fam.log_partition_gradient(theta.coords)};
}

ExpectationPoint natural_to_expectation_by_moments(const ExponentialFamily& fam, const NaturalPoint& theta) {
  return {expectation(fam, theta, [&](double x) { return fam.statistics(x); }, fam.dim())};
}

Vec interior_reference_point(const ExponentialFamily& fam) {
  const auto& box = fam.domain();
  Vec t(fam.dim());
  for (int i = 0; i < fam.dim(); ++i) {
    const double lo = box.lower(i), hi = box.upper(i);
    if (std::isfinite(lo) && std::isfinite(hi)) {
      t(i) = 0.5 * (lo + hi);
    } else if (std::isfinite(hi)) {
      t(i) = std::min(0.0, hi - 1.0);
    } else if (std::isfinite(lo)) {
      t(i) = std::max(0.0, lo + 1.0);
    } else {
      t(i) = 0.0;
    }
  }
  return t;
}

NaturalPoint expectation_to_natural(const ExponentialFamily& fam, const ExpectationPoint& eta) {
  if (eta.coords.size() != fam.dim()) throw DomainError(fam.name() + ": wrong number of expectation coordinates");
  // FD gradients carry ~1e-11 noise, so the closed-form tolerance is unreachable there.
  const double tol = fam.has_closed_form_gradient() ? 1e-12 : 1e-9;
  Vec theta = interior_reference_point(fam);
  Vec r = fam.log_partition_gradient(theta) - eta.coords;
  double rn = r.norm();
  for (int it = 0; it < 100 && rn > tol; ++it) {
    const Mat H = fam.log_partition_hessian(theta);
    Eigen::LDLT<Mat> ldlt(H);
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive()) {
      throw NumericalError(fam.name() + ": singular Fisher matrix during inversion", rn);
    }
    const Vec step = ldlt.solve(r);
    double lambda = 1.0;
    bool accepted = false;
    for (int halving = 0; halving < 60; ++halving, lambda *= 0.5) {
      const Vec trial = theta - lambda * step;
      if (!fam.domain().contains(trial)) continue;
      const Vec rt = fam.log_partition_gradient(trial) - eta.coords;
      if (rt.allFinite() && rt.norm() < rn) {
        theta = trial;
        r = rt;
        rn = rt.norm();
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  if (!(rn <= tol)) {
    throw NumericalError(fam.name() + ": Newton inversion failed; η may lie outside the image of ∂ψ", rn);
  }
  return {theta};
}

Moments mean_and_variance(const ExponentialFamily& fam, const NaturalPoint& theta, const RandomVariable& X) {
  const double mean = expectation(fam, theta, [&](double x) { return Vec::Constant(1, X(x)); }, 1)(0);
  const double var = expectation(
      fam, theta,
      [&](double x) {
        const double d = X(x) - mean;
        return Vec::Constant(1, d * d);
      },
      1)(0);
  return {mean, var};
}

bool statistics_independent(const ExponentialFamily& fam) {
  std::vector<double> xs;
  if (fam.space().is_finite()) {
    xs = fam.space().points;
  } else {
    const auto [c, s] = fam.location_scale(interior_reference_point(fam));
    for (double t : gauss_hermite(std::max(16, 2 * fam.dim() + 2)).nodes) xs.push_back(c + std::sqrt(2.0) * s * t);
  }
  Mat E(static_cast<Eigen::Index>(xs.size()), fam.dim() + 1);
  for (std::size_t r = 0; r < xs.size(); ++r) {
    E(static_cast<Eigen::Index>(r), 0) = 1.0;
    E.row(static_cast<Eigen::Index>(r)).tail(fam.dim()) = fam.statistics(xs[r]).transpose();
  }
  Eigen::ColPivHouseholderQR<Mat> qr(E);
  qr.setThreshold(1e-10);
  return qr.rank() == fam.dim() + 1;
}

}  // namespace igk
