#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "igk/errors.hpp"
#include "igk/report.hpp"
#include "igk/rng.hpp"
#include "igk/verify.hpp"

using namespace igk;

namespace {

const CheckResult* find(const SuiteReport& r, const std::string& id) {
  for (const auto& c : r.checks)
    if (c.id == id) return &c;
  return nullptr;
}

}  // namespace

TEST(Rng, DeterministicAndVersioned) {
  Rng a(42), b(42), c(43);
  for (int i = 0; i < 100; ++i) {
    const double x = a.uniform();
    EXPECT_EQ(x, b.uniform());
    EXPECT_GE(x, 0.0);
    EXPECT_LT(x, 1.0);
  }
  EXPECT_NE(Rng(42).uniform(), c.uniform());
  EXPECT_EQ(Rng::kAlgorithm, "mt19937_64/u53/box-muller/v1");
  EXPECT_NE(derive_seed(1, "spin.law"), derive_seed(1, "spin.casimir"));
  EXPECT_EQ(derive_seed(1, "spin.law"), derive_seed(1, "spin.law"));
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ull);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cull);
}

TEST(Rng, HelpersRespectConstraints) {
  Rng rng(7);
  for (int t = 0; t < 20; ++t) {
    const Vec p = rng.simplex_point(5, 0.03);
    EXPECT_NEAR(p.sum(), 1.0, 1e-14);
    EXPECT_GE(p.minCoeff(), 0.03);
    EXPECT_NEAR(rng.unit_complex_vector(4).norm(), 1.0, 1e-14);
    const CMat H = rng.hermitian(4);
    EXPECT_LT((H - H.adjoint()).cwiseAbs().maxCoeff(), 1e-15);
    const Mat R = rng.rotation3();
    EXPECT_LT((R * R.transpose() - Mat::Identity(3, 3)).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_NEAR(R.determinant(), 1.0, 1e-14);
    const int k = rng.integer(-2, 2);
    EXPECT_GE(k, -2);
    EXPECT_LE(k, 2);
  }
}

TEST(Report, NumberFormatting) {
  EXPECT_EQ(format_number(0.25), "0.25");
  EXPECT_EQ(format_number(1.0 / 3), "0.33333333333333331");
  EXPECT_EQ(format_number(-2.0), "-2");
  EXPECT_EQ(format_number(-0.0), "0");
  EXPECT_EQ(format_number(1e-20), "9.9999999999999995e-21");
  EXPECT_EQ(format_number(0.1), "0.10000000000000001");
}

TEST(Verify, SuiteNames) {
  const auto names = suite_names();
  for (const char* s : {"families", "geometry", "dombrowski", "projective", "spin", "oscillator", "all"})
    EXPECT_NE(std::find(names.begin(), names.end(), s), names.end()) << s;
  EXPECT_THROW(run_suite("nope", {}), UsageError);
  VerifyOptions o;
  o.tolerance_overrides["spin.not_a_check"] = 1.0;
  EXPECT_THROW(run_suite("spin", o), UsageError);
}

TEST(Verify, SpinSuitePassesAndIsDeterministic) {
  VerifyOptions o;
  o.seed = 7;
  const auto a = run_suite("spin", o);
  const auto b = run_suite("spin", o);
  EXPECT_TRUE(a.all_pass());
  EXPECT_EQ(a.prng, std::string(Rng::kAlgorithm));
  EXPECT_EQ(a.profile, "strict");
  EXPECT_EQ(render_report_json(a), render_report_json(b));
  EXPECT_EQ(render_report_csv(a), render_report_csv(b));
  ASSERT_FALSE(a.checks.empty());
  EXPECT_TRUE(std::is_sorted(a.checks.begin(), a.checks.end(),
                             [](const CheckResult& x, const CheckResult& y) { return x.id < y.id; }));
  const auto* comm = find(a, "spin.commutator");
  ASSERT_NE(comm, nullptr);
  EXPECT_LT(comm->residual, 1e-8);
}

TEST(Verify, PerturbedRepresentationFailsNamedCheck) {
  VerifyOptions o;
  o.q_perturbation = 1e-3;
  const auto r = run_suite("spin", o);
  EXPECT_FALSE(r.all_pass());
  const auto* comm = find(r, "spin.commutator");
  ASSERT_NE(comm, nullptr);
  EXPECT_FALSE(comm->pass);
}

TEST(Verify, ToleranceOverrideAndProfile) {
  VerifyOptions o;
  o.tolerance_overrides["oscillator.flat_metric"] = -1.0;
  const auto r = run_suite("oscillator", o);
  EXPECT_FALSE(find(r, "oscillator.flat_metric")->pass);
  EXPECT_EQ(find(r, "oscillator.flat_metric")->tolerance, -1.0);

  VerifyOptions strict, fd;
  fd.profile = ToleranceProfile::FiniteDifference;
  const auto s = run_suite("oscillator", strict), f = run_suite("oscillator", fd);
  EXPECT_EQ(f.profile, "fd");
  EXPECT_DOUBLE_EQ(find(f, "oscillator.bracket")->tolerance, 10 * find(s, "oscillator.bracket")->tolerance);
  EXPECT_EQ(find(f, "oscillator.flat_metric")->tolerance, find(s, "oscillator.flat_metric")->tolerance);
}

TEST(Verify, ReportJsonShape) {
  const auto r = run_suite("oscillator", {});
  const auto j = nlohmann::json::parse(render_report_json(r));
  EXPECT_EQ(j.at("suite"), "oscillator");
  EXPECT_EQ(j.at("seed"), 1);
  EXPECT_EQ(j.at("pass"), true);
  std::set<std::string> ids;
  for (const auto& c : j.at("checks")) {
    ids.insert(c.at("id").get<std::string>());
    EXPECT_EQ(c.at("status"), "PASS");
    EXPECT_TRUE(c.at("residual").is_number());
  }
  EXPECT_EQ(ids.size(), r.checks.size());

  SuiteReport bad;
  bad.suite = "x";
  bad.checks.push_back({"x.nan", "d", std::numeric_limits<double>::quiet_NaN(), 1.0, false});
  const auto k = nlohmann::json::parse(render_report_json(bad));
  EXPECT_TRUE(k.at("checks")[0].at("residual").is_string());
  EXPECT_EQ(k.at("pass"), false);
}

TEST(Report, CsvTable) {
  Table t{"probabilities", {"k", "p"}, {{"0", "0.25"}, {"1", "0.5"}}};
  EXPECT_EQ(render_csv(t), "# probabilities\nk,p\n0,0.25\n1,0.5\n");
  const auto j = nlohmann::json::parse(render_json({t}, {{"command", "test"}}));
  EXPECT_EQ(j.at("meta").at("command"), "test");
  EXPECT_EQ(j.at("tables")[0].at("rows")[1][1], 0.5);
}
