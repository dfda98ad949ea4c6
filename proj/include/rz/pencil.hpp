#pragma once

#include <Eigen/Dense>

#include <utility>
#include <vector>

#include "rz/matrix.hpp"
#include "rz/moments.hpp"
#include "rz/poly.hpp"

namespace rz {

/// A_0 + x_1 A_1 + ... + x_n A_n with symmetric blocks.
template <class T>
struct BasicPencil {
  int n_vars = 0;
  int size = 0;
  std::vector<DenseMatrix<T>> coeffs;  // A_0, ..., A_n

  DenseMatrix<T> eval(const std::vector<T>& a) const {
    require(static_cast<int>(a.size()) == n_vars, ErrorCode::kDimensionMismatch, "pencil point has wrong length");
    DenseMatrix<T> m = coeffs[0];
    for (int i = 0; i < n_vars; ++i)
      if (!(a[i] == T(0))) m += coeffs[i + 1] * a[i];
    return m;
  }

  Eigen::MatrixXd eval_numeric(const std::vector<double>& a) const {
    require(static_cast<int>(a.size()) == n_vars, ErrorCode::kDimensionMismatch, "pencil point has wrong length");
    Eigen::MatrixXd m = to_eigen(coeffs[0]);
    for (int i = 0; i < n_vars; ++i)
      if (a[i] != 0.0) m += a[i] * to_eigen(coeffs[i + 1]);
    return m;
  }

  std::vector<Eigen::MatrixXd> numeric() const {
    std::vector<Eigen::MatrixXd> out;
    for (const auto& c : coeffs) out.push_back(to_eigen(c));
    return out;
  }
};

/// x_0 A_0 + ... + x_m A_m: the coefficient list covers every variable.
template <class T>
struct BasicHomogeneousPencil {
  int n_vars = 0;
  int size = 0;
  std::vector<DenseMatrix<T>> coeffs;

  Eigen::MatrixXd eval_numeric(const std::vector<double>& a) const {
    require(static_cast<int>(a.size()) == n_vars, ErrorCode::kDimensionMismatch, "pencil point has wrong length");
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(size, size);
    for (int i = 0; i < n_vars; ++i) m += a[i] * to_eigen(coeffs[i]);
    return m;
  }

  DenseMatrix<T> eval(const std::vector<T>& a) const {
    require(static_cast<int>(a.size()) == n_vars, ErrorCode::kDimensionMismatch, "pencil point has wrong length");
    DenseMatrix<T> m(size, size);
    for (int i = 0; i < n_vars; ++i) m += coeffs[i] * a[i];
    return m;
  }
};

using Pencil = BasicPencil<Rational>;
using RealPencil = BasicPencil<double>;
using HomogeneousPencil = BasicHomogeneousPencil<Rational>;
using RealHomogeneousPencil = BasicHomogeneousPencil<double>;

RealPencil to_real(const Pencil& p);
/// The same pencil with the origin moved to `center`: x -> M(center + x).
Pencil recenter(const Pencil& p, const std::vector<Rational>& center);

/// Moment matrix A_0 and localization matrices A_i over the basis 1, x_1, ..., x_n.
Pencil build_pencil(const MomentTable& table);
RealPencil build_pencil(const RealMomentTable& table);
/// Pencil of p with virtual degree deg p.
Pencil build_pencil(const Polynomial& p);
/// build_pencil with the row and column of the constant monomial removed.
Pencil build_pencil_inf(const MomentTable& table);
/// x_0 A_0 + x_1 A_1 + ... + x_n A_n with the blocks of build_pencil.
HomogeneousPencil build_homogeneous_pencil(const MomentTable& table);
RealHomogeneousPencil build_homogeneous_pencil(const RealMomentTable& table);

/// Level-k pencil over all monomials of degree <= k (graded-lex), using L_p
/// with virtual degree deg p.
Pencil build_hierarchy_pencil(const Polynomial& p, int level);

/// c_0 + c^T x >= 0 with c_0 = L(1), c_i = L(x_i).
struct HalfSpace {
  Rational c0;
  std::vector<Rational> c;
  bool full_space() const;
};
HalfSpace halfspace(const MomentTable& table);

/// (v^T M(a) v, L((v_0 + v^T x)^2 (1 + a^T x))) computed independently.
std::pair<Rational, Rational> quadratic_form_identity_check(const MomentTable& table, const std::vector<Rational>& a,
                                                            const std::vector<Rational>& v);

/// Pencil of a hyperbolic polynomial with respect to a direction.
struct HyperbolicPencil {
  RealHomogeneousPencil pencil;  // M_{p,e}, one block per variable
  Eigen::MatrixXd rotation;      // U with U e = |e| u_1
  RealPolynomial dehomogenized;  // r = p(U^T x) at x_1 = 1
  RealHomogeneousPencil rotated; // M*_{r,deg p}, so pencil(x) = U^T rotated(U x) U
};

HyperbolicPencil homogeneous_pencil(const Polynomial& p, const std::vector<double>& e, int probe_trials = 32);

/// Pencil of p(x + a) / p(a). A point y lies in the shifted relaxation when
/// y - a lies in the spectrahedron of this pencil.
struct ShiftedPencil {
  std::vector<Rational> anchor;
  Polynomial shifted;
  Pencil pencil;
};

std::vector<ShiftedPencil> shifted_pencil_family(const Polynomial& p,
                                                 const std::vector<std::vector<Rational>>& anchors);

}  // namespace rz
