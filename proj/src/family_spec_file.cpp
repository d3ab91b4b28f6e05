#include "igk/family_spec_file.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "igk/errors.hpp"
#include "igk/expression.hpp"

namespace igk {

namespace {

using nlohmann::json;

const json& require(const json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("family spec: missing field '") + key + "'", 0);
  return j.at(key);
}

Expression parse_field(const json& j, const std::string& field, std::vector<std::string> vars) {
  if (!j.is_string()) throw ParseError("family spec: field '" + field + "' must be a string", 0);
  try {
    return Expression::parse(j.get<std::string>(), std::move(vars));
  } catch (const ParseError& e) {
    throw ParseError("family spec: field '" + field + "', " + e.what(), e.column());
  }
}

Vec parse_bounds(const json& j, int n, double fallback, const char* which) {
  Vec v = Vec::Constant(n, fallback);
  if (j.is_null()) return v;
  if (!j.is_array() || static_cast<int>(j.size()) != n) {
    throw ParseError(std::string("family spec: domain.") + which + " must be an array of length n", 0);
  }
  for (int i = 0; i < n; ++i) {
    if (j[i].is_number()) v(i) = j[i].get<double>();
    else if (!j[i].is_null()) throw ParseError(std::string("family spec: domain.") + which + " entries must be numbers or null", 0);
  }
  return v;
}

}  // namespace

ExponentialFamily parse_family_spec(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("family spec: invalid JSON: ") + e.what(), e.byte);
  }
  if (!j.is_object()) throw ParseError("family spec: top level must be an object", 1);

  const json& kind = require(j, "kind");
  const json& n_json = require(j, "n");
  if (!n_json.is_number_integer() || n_json.get<int>() < 1) throw ParseError("family spec: n must be a positive integer", 0);
  const int n = n_json.get<int>();

  FamilyDefinition d;
  d.name = j.value("name", std::string("spec"));
  d.dim = n;
  if (kind == "finite") {
    const json& pts = require(j, "points");
    if (!pts.is_array()) throw ParseError("family spec: points must be an array", 0);
    std::vector<double> points;
    for (const auto& p : pts) {
      if (!p.is_number()) throw ParseError("family spec: points must be numbers", 0);
      points.push_back(p.get<double>());
    }
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
    d.space = MeasuredSpace::finite(std::move(points), std::move(labels));
  } else if (kind == "real_line") {
    d.space = MeasuredSpace::real_line(j.value("quadrature_order", 64));
  } else {
    throw ParseError("family spec: kind must be \"finite\" or \"real_line\"", 0);
  }

  const Expression carrier = j.contains("C") ? parse_field(j.at("C"), "C", {"x"}) : Expression::parse("0", {});
  d.carrier = [carrier](double x) { return carrier(x); };

  const json& F = require(j, "F");
  if (!F.is_array() || static_cast<int>(F.size()) != n) throw ParseError("family spec: F must list n expressions", 0);
  for (int i = 0; i < n; ++i) {
    const Expression e = parse_field(F[i], "F[" + std::to_string(i) + "]", {"x"});
    d.statistics.push_back([e](double x) { return e(x); });
  }

  std::vector<std::string> theta_names;
  for (int i = 1; i <= n; ++i) theta_names.push_back("theta" + std::to_string(i));
  if (n == 1) theta_names.push_back("theta");
  const Expression psi = parse_field(require(j, "psi"), "psi", theta_names);
  d.log_partition = [psi, n](const Vec& t) {
    std::vector<double> vals(t.data(), t.data() + n);
    vals.push_back(t(0));  // "theta" alias
    return psi.evaluate(vals);
  };

  constexpr double inf = std::numeric_limits<double>::infinity();
  d.domain = ParameterBox::unbounded(n);
  if (j.contains("domain")) {
    const json& dom = j.at("domain");
    d.domain.lower = parse_bounds(dom.value("lower", json()), n, -inf, "lower");
    d.domain.upper = parse_bounds(dom.value("upper", json()), n, inf, "upper");
  }
  return ExponentialFamily(std::move(d));
}

ExponentialFamily load_family_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open family spec '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_family_spec(buf.str());
}

ExponentialFamily resolve_family(const std::string& family, const std::string& spec_path) {
  if (!family.empty() && !spec_path.empty()) throw UsageError("give either --family or --spec, not both");
  if (!spec_path.empty()) return load_family_spec(spec_path);
  if (family.empty()) throw UsageError("a family is required (--family or --spec)");
  return builtin_family(family);
}

}  // namespace igk
