#pragma once

#include <Eigen/Dense>

#include <map>
#include <vector>

#include "rz/linalg.hpp"
#include "rz/poly.hpp"

namespace rz {

/// The linear form L_{p,d} tabulated on every monomial of degree 1..cutoff.
/// L(1) equals the virtual degree and is kept apart from the table.
template <class T>
struct BasicMomentTable {
  int n_vars = 0;
  int virtual_degree = 0;
  int cutoff = 0;
  std::map<Exponent, T, GradedLexLess> values;

  T value(const Exponent& e) const {
    require(static_cast<int>(e.size()) == n_vars, ErrorCode::kDimensionMismatch, "monomial has wrong length");
    const int k = total_degree(e);
    if (k == 0) return T(virtual_degree);
    require(k <= cutoff, ErrorCode::kCapacity,
            "monomial degree " + std::to_string(k) + " exceeds table cutoff " + std::to_string(cutoff));
    return values.at(e);
  }

  /// Linear extension to polynomials of degree <= cutoff.
  T apply(const BasicPolynomial<T>& q) const {
    require(q.n_vars() == n_vars, ErrorCode::kDimensionMismatch, "polynomial and table disagree on variables");
    require(q.is_zero() || q.degree() <= cutoff, ErrorCode::kCapacity, "polynomial degree exceeds table cutoff");
    T sum(0);
    for (const auto& [e, c] : q.terms()) sum += c * value(e);
    return sum;
  }
};

using MomentTable = BasicMomentTable<Rational>;
using RealMomentTable = BasicMomentTable<double>;

/// Exact table from the series -log(p(-x)/p(0)).
MomentTable moment_table(const Polynomial& p, int virtual_degree, int cutoff);
/// Floating point table (used where coefficients are only known numerically).
RealMomentTable moment_table(const RealPolynomial& p, int virtual_degree, int cutoff);

/// Closed-form degree <= 3 moments; p is normalized by p(0) first.
MomentTable cubic_moments_closed_form(const Polynomial& p, int virtual_degree);

Rational moment_apply(const MomentTable& table, const Polynomial& q);

/// Points a_1..a_d of p = prod (1 + a_i^T x).
struct DiracSupport {
  int n_vars = 0;
  std::vector<std::vector<Rational>> points;
};

Polynomial dirac_polynomial(const DiracSupport& s);
Rational dirac_moments(const DiracSupport& s, const Polynomial& q);

/// Coefficients of det(I_d + sum x_i A_i).
struct DetRep {
  int size = 0;
  std::vector<HermitianMatrix> coeffs;

  int n_vars() const { return static_cast<int>(coeffs.size()); }
  static DetRep from_real(const std::vector<Eigen::MatrixXd>& coeffs);
};

void check_detrep(const DetRep& r);

inline constexpr int kMaxHurwitzDegree = 6;
inline constexpr int kMaxExpandSize = 8;
inline constexpr int kMaxExpandVars = 6;

/// Sum over all words with letter i used alpha_i times of the matrix products.
Eigen::MatrixXcd hurwitz_product(const std::vector<Eigen::MatrixXcd>& a, const Exponent& alpha);
HermitianMatrix hurwitz_product(const std::vector<HermitianMatrix>& a, const Exponent& alpha);

/// tr(hur_alpha) / multinomial(alpha).
double detrep_moment(const DetRep& r, const Exponent& alpha);

/// Exact det(I + sum x_i A_i) (entries are converted to rationals exactly).
Polynomial detrep_expand(const DetRep& r);

/// Exact det(A_0 + x_1 A_1 + ... + x_n A_n) by evaluation on the simplex grid
/// and Newton interpolation.
Polynomial determinant_polynomial(const std::vector<RationalMatrix>& coeffs);
Polynomial determinant_polynomial(const std::vector<DenseMatrix<ComplexRational>>& coeffs);

}  // namespace rz
