#pragma once

#include <complex>
#include <vector>

#include "rz/rational.hpp"

namespace rz {

/// Coefficients are ascending: c[0] + c[1] t + ... .
using UniPoly = std::vector<Rational>;

void trim(UniPoly& p);
int degree(const UniPoly& p);  // -1 for the zero polynomial
UniPoly derivative(const UniPoly& p);
UniPoly poly_gcd(UniPoly a, UniPoly b);  // monic
/// Exact quotient; the remainder must vanish.
UniPoly exact_divide(const UniPoly& a, const UniPoly& b);

struct SquarefreeFactor {
  UniPoly factor;
  int multiplicity = 1;
};

/// Yun's algorithm over Q. The product of factor^multiplicity equals p up to a constant.
std::vector<SquarefreeFactor> squarefree_decomposition(const UniPoly& p);

/// All complex roots of a floating polynomial, via a balanced companion
/// matrix followed by Newton polishing.
std::vector<std::complex<double>> polynomial_roots(const std::vector<double>& coeffs);

struct Root {
  std::complex<double> value;
  int multiplicity = 1;
};

/// Roots with multiplicities; multiplicities come from the exact squarefree split.
std::vector<Root> roots_with_multiplicity(const UniPoly& p);

/// |Im z| <= tol * (1 + |z|)
bool is_effectively_real(std::complex<double> z, double tol);

double evaluate(const UniPoly& p, double t);

}  // namespace rz
