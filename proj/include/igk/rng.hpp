#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "igk/linalg.hpp"

namespace igk {

// mt19937_64 with our own mappings to doubles and normals, so draws do not
// depend on the standard library's distribution implementations.
class Rng {
 public:
  static constexpr std::string_view kAlgorithm = "mt19937_64/u53/box-muller/v1";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform();  // [0, 1)
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();
  int integer(int lo, int hi);  // inclusive

  Vec normal_vector(int n);
  CVec complex_normal_vector(int n);
  // Uniform on the unit sphere of ℂ^n.
  CVec unit_complex_vector(int n);
  CMat hermitian(int n);
  // Point of the open simplex, bounded away from the faces by `floor`.
  Vec simplex_point(int n, double floor = 0.02);
  // Random rotation of ℝ³.
  Mat rotation3();

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t fnv1a64(std::string_view text);
// Independent stream per named check.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view id);

}  // namespace igk
