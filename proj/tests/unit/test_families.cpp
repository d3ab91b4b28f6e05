#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "igk/errors.hpp"
#include "igk/families.hpp"

using namespace igk;

namespace {

NaturalPoint nat(std::initializer_list<double> v) {
  Vec c(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) c(i++) = x;
  return {c};
}

double choose(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// pmf of B(n, q) with q = e^θ/(1+e^θ), summed from scratch.
std::vector<double> binomial_oracle(int n, double theta) {
  const double q = 1.0 / (1.0 + std::exp(-theta));
  std::vector<double> p(n + 1);
  for (int k = 0; k <= n; ++k) p[k] = choose(n, k) * std::pow(q, k) * std::pow(1 - q, n - k);
  return p;
}

std::vector<double> theta_grid(const ExponentialFamily& fam) {
  (void)fam;
  return {-2.0, -1.3, -0.7, -0.25, 0.0, 0.4, 0.9, 1.5, 2.1, 2.8};
}

// 20+ points inside the domain of each builtin family.
std::vector<NaturalPoint> grid_for(const ExponentialFamily& fam) {
  std::vector<NaturalPoint> out;
  const auto g = theta_grid(fam);
  if (fam.name() == "normal") {
    for (double a : {-1.5, -0.3, 0.0, 0.8, 2.0})
      for (double b : {-2.0, -1.0, -0.5, -0.2}) out.push_back(nat({a, b}));
    return out;
  }
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      Vec c(fam.dim());
      for (int d = 0; d < fam.dim(); ++d) c(d) = g[(i + 3 * d + j * 5) % g.size()] * (j ? 0.6 : 1.0);
      out.push_back({c});
    }
  return out;
}

}  // namespace

TEST(Families, SpecExampleDensities) {
  EXPECT_NEAR(density(categorical_family(3), nat({0, 0}), 0), 1.0 / 3, 1e-15);
  EXPECT_NEAR(density(binomial_family(2), nat({0}), 1), 0.5, 1e-15);
  EXPECT_NEAR(density(normal_fixed_sigma_family(), nat({0}), 0), 1 / std::sqrt(2 * std::numbers::pi), 1e-15);
}

TEST(Families, BinomialMatchesBruteForcePmf) {
  for (int n : {1, 2, 3, 10})
    for (double th : {-1.7, 0.0, 0.3, 2.2}) {
      const Vec p = density_table(binomial_family(n), nat({th}));
      const auto o = binomial_oracle(n, th);
      for (int k = 0; k <= n; ++k) EXPECT_NEAR(p(k), o[k], 1e-14);
    }
}

TEST(Families, NaturalToExpectationExamples) {
  for (int n : {1, 3, 10})
    for (double th : {-1.0, 0.0, 0.7}) {
      const double eta = natural_to_expectation(binomial_family(n), nat({th})).coords(0);
      EXPECT_NEAR(eta, n * std::exp(th) / (1 + std::exp(th)), 1e-13);
      const auto o = binomial_oracle(n, th);
      double mean = 0.0;
      for (int k = 0; k <= n; ++k) mean += k * o[k];
      EXPECT_NEAR(eta, mean, 1e-12);
    }
  for (double mu : {-2.0, 0.0, 1.3})
    EXPECT_NEAR(natural_to_expectation(normal_fixed_sigma_family(), nat({mu})).coords(0), mu, 1e-13);
  const Vec eta = natural_to_expectation(categorical_family(4), nat({0, 0, 0})).coords;
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(eta(i), 0.25, 1e-15);
}

TEST(Families, CategoricalEtaIsSoftmax) {
  const Vec th = nat({0.3, -1.1, 0.8}).coords;
  const double z = 1 + std::exp(0.3) + std::exp(-1.1) + std::exp(0.8);
  const Vec eta = natural_to_expectation(categorical_family(4), {th}).coords;
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(eta(i), std::exp(th(i)) / z, 1e-15);
}

TEST(Families, ExpectationToNaturalExamples) {
  Vec one(1);
  one << 1.0;
  EXPECT_NEAR(expectation_to_natural(binomial_family(2), {one}).coords(0), 0.0, 1e-12);
  Vec three(1);
  three << 3.0;
  EXPECT_NEAR(expectation_to_natural(normal_fixed_sigma_family(), {three}).coords(0), 3.0, 1e-12);
  Vec half(1);
  half << 0.5;
  EXPECT_NEAR(expectation_to_natural(categorical_family(2), {half}).coords(0), 0.0, 1e-12);
}

TEST(Families, ExpectationOutsideImageFails) {
  Vec bad(1);
  bad << 2.5;  // B(2, ·) has η ∈ (0, 2)
  EXPECT_THROW(expectation_to_natural(binomial_family(2), {bad}), NumericalError);
}

TEST(Families, MeanAndVarianceExamples) {
  auto m = mean_and_variance(binomial_family(2), nat({0}), [](double k) { return k; });
  EXPECT_NEAR(m.mean, 1.0, 1e-15);
  EXPECT_NEAR(m.variance, 0.5, 1e-15);
  m = mean_and_variance(normal_fixed_sigma_family(), nat({0}), [](double x) { return x; });
  EXPECT_NEAR(m.mean, 0.0, 1e-12);
  EXPECT_NEAR(m.variance, 1.0, 1e-10);
  for (const auto& name : builtin_family_names()) {
    const auto fam = builtin_family(name);
    const auto c = mean_and_variance(fam, {interior_reference_point(fam)}, [](double) { return 4.25; });
    EXPECT_NEAR(c.mean, 4.25, 1e-9) << name;
    EXPECT_NEAR(c.variance, 0.0, 1e-9) << name;
  }
}

TEST(Families, NormalMomentsByQuadrature) {
  // N(μ, σ²) with θ = (μ/σ², −1/(2σ²)).
  const double mu = 0.7, s2 = 2.5;
  const auto m = mean_and_variance(normal_family(), nat({mu / s2, -0.5 / s2}), [](double x) { return x; });
  EXPECT_NEAR(m.mean, mu, 1e-10);
  EXPECT_NEAR(m.variance, s2, 1e-9);
}

TEST(Families, DomainErrors) {
  EXPECT_THROW(density(normal_family(), nat({0.0, 0.5}), 0.0), DomainError);
  EXPECT_THROW(density(binomial_family(2), nat({0.0, 1.0}), 0.0), DomainError);
  EXPECT_THROW(builtin_family("categorical:1"), UsageError);
  EXPECT_THROW(builtin_family("poisson"), UsageError);
  EXPECT_THROW(builtin_family("binomial:x"), UsageError);
}

TEST(FamiliesProperty, NormalizationOnGrid) {
  for (const auto& name : builtin_family_names()) {
    const auto fam = builtin_family(name);
    const auto grid = grid_for(fam);
    ASSERT_GE(grid.size(), 20u);
    const double tol = fam.space().is_finite() ? 1e-9 : 1e-7;
    for (const auto& th : grid) EXPECT_NEAR(total_mass(fam, th), 1.0, tol) << name;
  }
}

TEST(FamiliesProperty, RoundTripOnGrid) {
  for (const auto& name : builtin_family_names()) {
    const auto fam = builtin_family(name);
    for (const auto& th : grid_for(fam)) {
      const auto back = expectation_to_natural(fam, natural_to_expectation(fam, th));
      EXPECT_LT((back.coords - th.coords).cwiseAbs().maxCoeff(), 1e-8) << name;
    }
  }
}

TEST(FamiliesProperty, EtaTwoWays) {
  for (const auto& name : builtin_family_names()) {
    const auto fam = builtin_family(name);
    for (const auto& th : grid_for(fam)) {
      const Vec a = natural_to_expectation(fam, th).coords;
      const Vec b = natural_to_expectation_by_moments(fam, th).coords;
      EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-7) << name;
    }
  }
}

TEST(FamiliesProperty, RankCheck) {
  for (const auto& name : builtin_family_names()) EXPECT_TRUE(statistics_independent(builtin_family(name))) << name;
  FamilyDefinition def;
  def.name = "dependent";
  def.space = MeasuredSpace::finite({0, 1, 2});
  def.dim = 2;
  def.carrier = [](double) { return 0.0; };
  def.statistics = {[](double x) { return x; }, [](double x) { return 2 * x + 1; }};
  def.log_partition = [](const Vec&) { return 0.0; };
  def.domain = ParameterBox::unbounded(2);
  EXPECT_FALSE(statistics_independent(ExponentialFamily(def)));
}
