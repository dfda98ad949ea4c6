#pragma once

#include <Eigen/Dense>

#include <optional>
#include <vector>

#include "rz/matrix.hpp"
#include "rz/rational.hpp"

namespace rz {

struct SymmetricEigen {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // orthonormal columns
};

/// Dense symmetric eigensolver (tridiagonalization + implicit QR).
SymmetricEigen eig_sym(const Eigen::MatrixXd& m);

enum class PsdVerdict { kPsd, kNotPsd, kMarginal };
const char* to_string(PsdVerdict v);

/// PSD if lambda_min >= -tau, NOT_PSD if lambda_min < -kappa, MARGINAL in between,
/// with tau = tau_rel*(1+|M|_F) and kappa = kappa_rel*(1+|M|_F).
struct PsdTolerance {
  double tau_rel = 1e-8;
  double kappa_rel = 1e-6;
};

PsdVerdict is_psd(const Eigen::MatrixXd& m, const PsdTolerance& tol = {});
double min_eigenvalue(const Eigen::MatrixXd& m);

/// A + iB with A symmetric and B skew-symmetric.
struct HermitianMatrix {
  Eigen::MatrixXd re;
  Eigen::MatrixXd im;

  static HermitianMatrix real(const Eigen::MatrixXd& a) {
    return {a, Eigen::MatrixXd::Zero(a.rows(), a.cols())};
  }
  int size() const { return static_cast<int>(re.rows()); }
  Eigen::MatrixXcd complex() const;
  bool is_real() const { return im.isZero(0.0); }
};

void check_hermitian(const HermitianMatrix& h, double tol = 1e-12);

/// [[A, -B], [B, A]]; PSD exactly when the Hermitian matrix is.
Eigen::MatrixXd real_embed(const HermitianMatrix& h);

/// Congruence Q with Q^T A_0 Q = diag(I_e, 0) and the reduced e x e pencil.
struct MonicReduction {
  Eigen::MatrixXd Q;
  int rank = 0;
  std::vector<Eigen::MatrixXd> reduced;  // reduced[0] = I_e
};

MonicReduction monic_normalize(const std::vector<Eigen::MatrixXd>& coeffs);

/// Orthogonal U (a Householder reflection, up to the sign of row 0) with U e = |e| u_1.
Eigen::MatrixXd householder_to_first_axis(const Eigen::VectorXd& e);

// ---------------------------------------------------------------------------
// Exact rational linear algebra

/// Symmetric pivoted LDL^T over the rationals. `pivots` lists the indices of
/// the nonzero pivots in elimination order, so A[pivots, pivots] is nonsingular
/// and has the rank of A.
struct ExactLdl {
  bool psd = false;
  int rank = 0;
  std::vector<int> pivots;
};

ExactLdl exact_ldl(const RationalMatrix& a);

/// Inverse of a nonsingular rational matrix (Gauss-Jordan).
RationalMatrix exact_inverse(const RationalMatrix& a);

/// Basis of the right null space.
std::vector<std::vector<Rational>> exact_nullspace(const RationalMatrix& a);

/// Determinant over any field type by Gaussian elimination.
template <class T>
T determinant(DenseMatrix<T> m) {
  require(m.rows() == m.cols(), ErrorCode::kDimensionMismatch, "determinant needs a square matrix");
  const int n = m.rows();
  T det(1);
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (!(m(r, col) == T(0))) {
        pivot = r;
        break;
      }
    if (pivot < 0) return T(0);
    if (pivot != col) {
      for (int j = 0; j < n; ++j) std::swap(m(pivot, j), m(col, j));
      det = -det;
    }
    det *= m(col, col);
    const T inv = T(1) / m(col, col);
    for (int r = col + 1; r < n; ++r) {
      if (m(r, col) == T(0)) continue;
      const T factor = m(r, col) * inv;
      for (int j = col; j < n; ++j) m(r, j) -= factor * m(col, j);
    }
  }
  return det;
}

/// Exact complex rationals, enough for Hermitian determinants.
struct ComplexRational {
  Rational re;
  Rational im;

  ComplexRational() = default;
  ComplexRational(int v) : re(v) {}  // NOLINT(google-explicit-constructor)
  ComplexRational(Rational r, Rational i = Rational(0)) : re(std::move(r)), im(std::move(i)) {}

  ComplexRational& operator+=(const ComplexRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  ComplexRational& operator-=(const ComplexRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  ComplexRational& operator*=(const ComplexRational& o) {
    Rational r = re * o.re - im * o.im;
    Rational i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }
  friend ComplexRational operator+(ComplexRational a, const ComplexRational& b) { return a += b; }
  friend ComplexRational operator-(ComplexRational a, const ComplexRational& b) { return a -= b; }
  friend ComplexRational operator*(ComplexRational a, const ComplexRational& b) { return a *= b; }
  friend ComplexRational operator-(const ComplexRational& a) { return {Rational(-a.re), Rational(-a.im)}; }
  friend ComplexRational operator/(const ComplexRational& a, const ComplexRational& b) {
    Rational den = b.re * b.re + b.im * b.im;
    return {Rational((a.re * b.re + a.im * b.im) / den), Rational((a.im * b.re - a.re * b.im) / den)};
  }
  ComplexRational& operator/=(const ComplexRational& o) { return *this = *this / o; }
  friend bool operator==(const ComplexRational& a, const ComplexRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const ComplexRational& a, const ComplexRational& b) { return !(a == b); }
};

}  // namespace rz
