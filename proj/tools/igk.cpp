// Command-line front end: family inspection, geometry dumps, spin tables,
// representation matrices and the verification suites.
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "igk/dombrowski.hpp"
#include "igk/errors.hpp"
#include "igk/family_spec_file.hpp"
#include "igk/families.hpp"
#include "igk/geometry.hpp"
#include "igk/report.hpp"
#include "igk/spin.hpp"
#include "igk/verify.hpp"

namespace {

using namespace igk;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct Common {
  std::string family;
  std::string spec;
  std::string theta;
  std::string format = "json";
  std::string out;
};

std::vector<double> parse_list(const std::string& text, const char* flag) {
  std::vector<double> values;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find(',', start), text.size());
    const std::string item = text.substr(start, end - start);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size()) {
      throw UsageError(std::string(flag) + ": cannot parse '" + item + "' as a number");
    }
    values.push_back(v);
    start = end + 1;
  }
  return values;
}

Vec to_vec(const std::vector<double>& v) { return Eigen::Map<const Vec>(v.data(), static_cast<Eigen::Index>(v.size())); }

void emit(const Common& c, const std::vector<Table>& tables, const std::vector<std::pair<std::string, std::string>>& meta) {
  std::string text;
  if (c.format == "json") {
    text = render_json(tables, meta);
  } else {
    for (const auto& [k, v] : meta) text += "# " + k + "=" + v + "\n";
    for (const Table& t : tables) text += render_csv(t);
  }
  if (c.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(c.out, std::ios::binary);
    if (!f) throw UsageError("cannot write '" + c.out + "'");
    f << text;
  }
}

std::string bound(double v) { return std::isfinite(v) ? format_number(v) : (v > 0 ? "inf" : "-inf"); }

Vec theta_or_default(const Common& c, const ExponentialFamily& fam) {
  if (c.theta.empty()) return interior_reference_point(fam);
  return to_vec(parse_list(c.theta, "--theta"));
}

Table domain_table(const ExponentialFamily& fam) {
  Table t{"domain", {"coordinate", "lower", "upper"}, {}};
  for (int i = 0; i < fam.dim(); ++i) {
    t.rows.push_back({"theta" + std::to_string(i + 1), bound(fam.domain().lower(i)), bound(fam.domain().upper(i))});
  }
  return t;
}

int cmd_family_show(const Common& c) {
  const ExponentialFamily fam = resolve_family(c.family, c.spec);
  const NaturalPoint theta{theta_or_default(c, fam)};
  fam.require_in_domain(theta.coords);
  std::vector<Table> tables{domain_table(fam)};
  if (fam.space().is_finite()) {
    const Vec p = density_table(fam, theta);
    Table t{"density", {"label", "x", "probability"}, {}};
    for (std::size_t j = 0; j < fam.space().size(); ++j) {
      t.rows.push_back({fam.space().labels[j], format_number(fam.space().points[j]),
                        format_number(p(static_cast<Eigen::Index>(j)))});
    }
    tables.push_back(t);
  } else {
    const Moments m = mean_and_variance(fam, theta, [](double x) { return x; });
    tables.push_back({"density_summary",
                      {"total_mass", "mean", "variance"},
                      {{format_number(total_mass(fam, theta)), format_number(m.mean), format_number(m.variance)}}});
  }
  const Vec eta = natural_to_expectation(fam, theta).coords;
  Table e{"expectation_coordinates", {"index", "theta", "eta"}, {}};
  for (int i = 0; i < fam.dim(); ++i) {
    e.rows.push_back({std::to_string(i + 1), format_number(theta.coords(i)), format_number(eta(i))});
  }
  tables.push_back(e);
  emit(c, tables,
       {{"command", "family show"},
        {"family", fam.name()},
        {"n", std::to_string(fam.dim())},
        {"space", fam.space().is_finite() ? "finite" : "real_line"}});
  return kExitOk;
}

int cmd_geometry_show(const Common& c, double alpha) {
  const ExponentialFamily fam = resolve_family(c.family, c.spec);
  const NaturalPoint theta{theta_or_default(c, fam)};
  const int n = fam.dim();
  const Mat h = fisher_metric(fam, theta).entries;
  Table metric{"fisher_metric", {"i", "j", "value"}, {}};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) metric.rows.push_back({std::to_string(i + 1), std::to_string(j + 1), format_number(h(i, j))});
  const ChristoffelTensor G = christoffel_alpha(fam, theta, alpha);
  Table chr{"christoffel", {"i", "j", "k", "value"}, {}};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        chr.rows.push_back({std::to_string(i + 1), std::to_string(j + 1), std::to_string(k + 1), format_number(G(i, j, k))});
      }
  Table summary{"summary",
                {"alpha", "curvature_max_abs", "duality_residual", "cross_duality_residual"},
                {{format_number(alpha), format_number(curvature_tensor(fam, theta, alpha).max_abs()),
                  format_number(duality_residual(fam, theta, alpha)), format_number(cross_duality_residual(fam, theta))}}};
  emit(c, {metric, chr, summary}, {{"command", "geometry show"}, {"family", fam.name()}, {"n", std::to_string(n)}});
  return kExitOk;
}

SphereKahlerFunction axis_function(const std::string& text, const char* flag, double u0 = 0.0) {
  const std::vector<double> a = parse_list(text, flag);
  if (a.size() != 3) throw UsageError(std::string(flag) + " needs three components u,v,w");
  SphereKahlerFunction f{u0, a[0], a[1], a[2]};
  if (f.axis_norm() == 0.0) throw UsageError(std::string(flag) + " must be a nonzero axis");
  return f;
}

int cmd_spin_table(const Common& c, int n, const std::string& axis, const std::string& point, const std::string& axis2,
                   int m1) {
  if (n < 1) throw UsageError("--n must be >= 1");
  if (axis.empty()) throw UsageError("--axis is required");
  const SphereKahlerFunction f = axis_function(axis, "--axis");
  Vec probs;
  std::vector<std::pair<std::string, std::string>> meta{{"command", "spin table"}, {"n", std::to_string(n)}};
  if (!axis2.empty()) {
    if (!point.empty()) throw UsageError("give either --point or --axis2, not both");
    const SphereKahlerFunction f1 = axis_function(axis2, "--axis2");
    const int incoming = m1 < 0 ? n : m1;
    if (incoming > n) throw UsageError("--m1 must lie in 0..n");
    probs = stern_gerlach_transition(n, f1, incoming, f);
    meta.emplace_back("mode", "two-device");
    meta.emplace_back("m1", std::to_string(incoming));
  } else {
    if (point.empty()) throw UsageError("give a state with --point x,y,z or --axis2 with --m1");
    const std::vector<double> s = parse_list(point, "--point");
    if (s.size() != 3) throw UsageError("--point needs three coordinates");
    const double r = std::sqrt(s[0] * s[0] + s[1] * s[1] + s[2] * s[2]);
    if (std::abs(r - 1.0) > 1e-9) throw UsageError("--point must lie on the unit sphere");
    probs = spin_probabilities(n, f, {s[0] / r, s[1] / r, s[2] / r});
    meta.emplace_back("mode", "state");
  }
  const std::vector<double> spectrum = spin_spectrum(n, f);
  Table t{"spin", {"k", "eigenvalue", "probability"}, {}};
  for (int k = 0; k <= n; ++k) t.rows.push_back({std::to_string(k), format_number(spectrum[k]), format_number(probs(k))});
  emit(c, {t}, meta);
  return kExitOk;
}

int cmd_spin_matrix(const Common& c, int n, const std::string& axis, double u0) {
  if (n < 1) throw UsageError("--n must be >= 1");
  if (axis.empty()) throw UsageError("--axis is required");
  const std::vector<double> a = parse_list(axis, "--axis");
  if (a.size() != 3) throw UsageError("--axis needs three components u,v,w");
  const CMat Q = q_matrix(n, {u0, a[0], a[1], a[2]}).Q;
  Table t{"q_matrix", {"row", "col", "re", "im"}, {}};
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      t.rows.push_back({std::to_string(i), std::to_string(j), format_number(Q(i, j).real()), format_number(Q(i, j).imag())});
    }
  emit(c, {t}, {{"command", "spin matrix"}, {"n", std::to_string(n)}});
  return kExitOk;
}

int cmd_verify(const Common& c, const std::string& suite, std::uint64_t seed, const std::vector<std::string>& tol,
               double perturb) {
  VerifyOptions opt;
  opt.seed = seed;
  opt.profile = tolerance_profile_from_env();
  opt.q_perturbation = perturb;
  for (const std::string& item : tol) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("--tol expects id=value");
    const std::vector<double> v = parse_list(item.substr(eq + 1), "--tol");
    if (v.size() != 1) throw UsageError("--tol expects a single value");
    opt.tolerance_overrides[item.substr(0, eq)] = v[0];
  }
  const SuiteReport report = run_suite(suite, opt);
  const std::string text = c.format == "json" ? render_report_json(report) : render_report_csv(report);
  if (c.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(c.out, std::ios::binary);
    if (!f) throw UsageError("cannot write '" + c.out + "'");
    f << text;
  }
  for (const CheckResult& r : report.checks) {
    if (!r.pass) std::cerr << "FAIL " << r.id << " residual=" << format_number(r.residual) << "\n";
  }
  return report.all_pass() ? kExitOk : kExitFailure;
}

void add_output_options(CLI::App* cmd, Common& c) {
  cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", c.out, "Write output to this file instead of stdout");
}

void add_family_options(CLI::App* cmd, Common& c) {
  cmd->add_option("--family", c.family, "Builtin family: categorical:n, binomial:n, normal, normal_fixed_sigma");
  cmd->add_option("--spec", c.spec, "Path to a JSON family spec");
  cmd->add_option("--theta", c.theta, "Natural parameters, comma separated");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Information geometry and Kählerification toolkit"};
  app.require_subcommand(1);
  Common common;

  CLI::App* family = app.add_subcommand("family", "Inspect an exponential family");
  family->require_subcommand(1);
  CLI::App* family_show = family->add_subcommand("show", "Densities and expectation coordinates");
  add_family_options(family_show, common);
  add_output_options(family_show, common);

  double alpha = 0.0;
  CLI::App* geometry = app.add_subcommand("geometry", "Dualistic structure of a family");
  geometry->require_subcommand(1);
  CLI::App* geometry_show = geometry->add_subcommand("show", "Fisher metric, α-Christoffels, curvature");
  add_family_options(geometry_show, common);
  add_output_options(geometry_show, common);
  geometry_show->add_option("--alpha", alpha, "Connection parameter");

  int n = 1;
  int m1 = -1;
  double u0 = 0.0;
  std::string axis, axis2, point;
  CLI::App* spin = app.add_subcommand("spin", "Spin spectra, probabilities and matrices");
  spin->require_subcommand(1);
  CLI::App* spin_table = spin->add_subcommand("table", "Rows (k, λ_k, probability)");
  spin_table->add_option("--n", n, "Family size (spin j = n/2)");
  spin_table->add_option("--axis", axis, "Measured axis u,v,w");
  spin_table->add_option("--point", point, "State as a sphere point x,y,z");
  spin_table->add_option("--axis2", axis2, "Axis of the preparing device");
  spin_table->add_option("--m1", m1, "Eigenvalue index selected by the first device (default n)");
  add_output_options(spin_table, common);
  CLI::App* spin_matrix = spin->add_subcommand("matrix", "Representation matrix Q(f)");
  spin_matrix->add_option("--n", n, "Family size");
  spin_matrix->add_option("--axis", axis, "Coefficients u,v,w");
  spin_matrix->add_option("--u0", u0, "Constant term");
  add_output_options(spin_matrix, common);

  std::string suite;
  std::uint64_t seed = 1;
  std::vector<std::string> tol;
  double perturb = 0.0;
  CLI::App* verify = app.add_subcommand("verify", "Run verification suites");
  verify->add_option("--suite", suite, "Suite name")->required()->check(CLI::IsMember(suite_names()));
  verify->add_option("--seed", seed, "Seed for randomized checks");
  verify->add_option("--tol", tol, "Override a tolerance: check_id=value");
  verify->add_option("--perturb-q", perturb)->group("");
  add_output_options(verify, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (family_show->parsed()) return cmd_family_show(common);
    if (geometry_show->parsed()) return cmd_geometry_show(common, alpha);
    if (spin_table->parsed()) return cmd_spin_table(common, n, axis, point, axis2, m1);
    if (spin_matrix->parsed()) return cmd_spin_matrix(common, n, axis, u0);
    if (verify->parsed()) return cmd_verify(common, suite, seed, tol, perturb);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
