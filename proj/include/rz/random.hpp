#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "rz/matrix.hpp"
#include "rz/rational.hpp"

namespace rz {

inline constexpr std::uint64_t kDefaultSeed = 0x5eed2024ULL;

/// SplitMix64 with explicit samplers, so streams are identical on every
/// platform and standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = kDefaultSeed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [lo, hi].
  int uniform_int(int lo, int hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(next() % span);
  }

  /// Standard normal by Box-Muller.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u = 0.0;
    while (u == 0.0) u = uniform();
    const double v = uniform();
    const double r = std::sqrt(-2.0 * std::log(u));
    spare_ = r * std::sin(2.0 * M_PI * v);
    has_spare_ = true;
    return r * std::cos(2.0 * M_PI * v);
  }

  std::vector<double> unit_vector(int n) {
    std::vector<double> v(n);
    double norm = 0.0;
    while (norm < 1e-12) {
      norm = 0.0;
      for (double& x : v) {
        x = normal();
        norm += x * x;
      }
      norm = std::sqrt(norm);
    }
    for (double& x : v) x /= norm;
    return v;
  }

  /// k / den with k uniform in [-range*den, range*den].
  Rational small_rational(int range, int den) {
    Rational r(uniform_int(-range * den, range * den), den);
    r.canonicalize();
    return r;
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Orthogonal matrix with rational entries, a product of Givens rotations
/// whose cosine and sine come from Pythagorean triples.
inline RationalMatrix random_rational_orthogonal(int n, Rng& rng, int rotations = -1) {
  RationalMatrix u = RationalMatrix::identity(n);
  if (n < 2) {
    if (n == 1 && rng.uniform() < 0.5) u(0, 0) = -1;
    return u;
  }
  if (rotations < 0) rotations = n * (n - 1) / 2 + 1;
  for (int r = 0; r < rotations; ++r) {
    const int i = rng.uniform_int(0, n - 1);
    int j = rng.uniform_int(0, n - 2);
    if (j >= i) ++j;
    const int m = rng.uniform_int(1, 6);
    const int k = rng.uniform_int(0, 6);
    const Rational h(m * m + k * k);
    const Rational c = Rational(m * m - k * k) / h;
    const Rational s = Rational(2 * m * k) / h;
    RationalMatrix g = RationalMatrix::identity(n);
    g(i, i) = c;
    g(j, j) = c;
    g(i, j) = -s;
    g(j, i) = s;
    u = u * g;
  }
  return u;
}

}  // namespace rz
