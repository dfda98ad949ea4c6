#pragma once

#include <Eigen/Dense>

#include <complex>
#include <vector>

#include "rz/moments.hpp"
#include "rz/poly.hpp"
#include "rz/random.hpp"

namespace rz::testing {

inline std::vector<Rational> random_rational_vector(Rng& rng, int n, int range = 2, int den = 4) {
  std::vector<Rational> v;
  for (int i = 0; i < n; ++i) v.push_back(rng.small_rational(range, den));
  return v;
}

/// prod (1 + a_i^T x) with small rational a_i.
inline DiracSupport random_dirac(Rng& rng, int n, int factors, int range = 2, int den = 3) {
  DiracSupport s{n, {}};
  for (int k = 0; k < factors; ++k) s.points.push_back(random_rational_vector(rng, n, range, den));
  return s;
}

/// x^T A x + b^T x + 1 with b b^T - 4A = sum of `rank` random outer products
/// (PSD by construction, so the result is a real zero polynomial).
inline Polynomial random_rz_quadratic(Rng& rng, int n, int rank = -1) {
  if (rank < 0) rank = rng.uniform_int(1, n);
  const std::vector<Rational> b = random_rational_vector(rng, n, 2, 2);
  RationalMatrix g(n, n);
  for (int r = 0; r < rank; ++r) {
    const std::vector<Rational> v = random_rational_vector(rng, n, 2, 2);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g(i, j) += v[i] * v[j];
  }
  Polynomial p = Polynomial::constant(n, Rational(1));
  for (int i = 0; i < n; ++i) {
    if (b[i] != 0) p.add_term(unit_exponent(n, i), b[i]);
    for (int j = i; j < n; ++j) {
      const Rational a = (b[i] * b[j] - g(i, j)) / 4;
      const Rational c = i == j ? a : Rational(2 * a);
      if (c != 0) p.add_term(add_exponents(unit_exponent(n, i), unit_exponent(n, j)), c);
    }
  }
  return p;
}

/// Product of linear forms and real zero quadratics, total degree <= max_degree.
inline Polynomial random_rz_polynomial(Rng& rng, int n, int max_degree = 4) {
  Polynomial p = Polynomial::constant(n, Rational(1));
  int degree = 0;
  const int target = rng.uniform_int(1, max_degree);
  while (degree < target) {
    if (target - degree >= 2 && rng.uniform() < 0.5) {
      p = p * random_rz_quadratic(rng, n);
      degree += 2;
    } else {
      p = p * dirac_polynomial(random_dirac(rng, n, 1));
      degree += 1;
    }
  }
  return p;
}

/// Dyadic entries keep exact expansions cheap.
inline double dyadic(Rng& rng, int range = 2, int bits = 5) {
  const int scale = 1 << bits;
  return static_cast<double>(rng.uniform_int(-range * scale, range * scale)) / scale;
}

inline Eigen::MatrixXd random_symmetric(Rng& rng, int d) {
  Eigen::MatrixXd a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) a(i, j) = a(j, i) = dyadic(rng);
  return a;
}

inline HermitianMatrix random_hermitian(Rng& rng, int d) {
  HermitianMatrix h{random_symmetric(rng, d), Eigen::MatrixXd::Zero(d, d)};
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      h.im(i, j) = dyadic(rng);
      h.im(j, i) = -h.im(i, j);
    }
  return h;
}

inline std::vector<double> random_direction(Rng& rng, int n) { return rng.unit_vector(n); }

}  // namespace rz::testing
