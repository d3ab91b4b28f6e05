#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace igk {

enum class ToleranceProfile { Strict, FiniteDifference };

ToleranceProfile tolerance_profile_from_env();

struct CheckResult {
  std::string id;
  std::string description;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::string prng;
  std::string profile;
  std::vector<CheckResult> checks;

  bool all_pass() const;
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  ToleranceProfile profile = ToleranceProfile::Strict;
  std::map<std::string, double> tolerance_overrides;
  double q_perturbation = 0.0;
};

std::vector<std::string> suite_names();
// Throws UsageError for unknown suite names; "all" runs every suite.
SuiteReport run_suite(std::string_view suite, const VerifyOptions& options);

}  // namespace igk
