#include "igk/rng.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/QR>

namespace igk {

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  // One Box-Muller pair per call; the second value is discarded to keep the stream simple.
  double u1 = uniform();
  while (u1 == 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

int Rng::integer(int lo, int hi) {
  const auto span = static_cast<double>(hi - lo + 1);
  const int k = lo + static_cast<int>(std::floor(uniform() * span));
  return k > hi ? hi : k;
}

Vec Rng::normal_vector(int n) {
  Vec v(n);
  for (int i = 0; i < n; ++i) v(i) = normal();
  return v;
}

CVec Rng::complex_normal_vector(int n) {
  CVec v(n);
  for (int i = 0; i < n; ++i) {
    const double re = normal();
    const double im = normal();
    v(i) = Complex(re, im);
  }
  return v;
}

CVec Rng::unit_complex_vector(int n) { return complex_normal_vector(n).normalized(); }

CMat Rng::hermitian(int n) {
  CMat G(n, n);
  for (int j = 0; j < n; ++j) G.col(j) = complex_normal_vector(n);
  return 0.5 * (G + G.adjoint());
}

Vec Rng::simplex_point(int n, double floor) {
  Vec e(n);
  for (int i = 0; i < n; ++i) e(i) = -std::log(1.0 - uniform());
  e /= e.sum();
  Vec p = floor + (1.0 - n * floor) * e.array();
  return p / p.sum();
}

Mat Rng::rotation3() {
  Mat G(3, 3);
  for (int j = 0; j < 3; ++j) G.col(j) = normal_vector(3);
  Eigen::HouseholderQR<Mat> qr(G);
  Mat Q = qr.householderQ();
  const Mat R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < 3; ++j) {
    if (R(j, j) < 0) Q.col(j) *= -1.0;
  }
  if (Q.determinant() < 0) Q.col(0) *= -1.0;
  return Q;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t derive_seed(std::uint64_t seed, std::string_view id) { return splitmix64(seed ^ fnv1a64(id)); }

}  // namespace igk
