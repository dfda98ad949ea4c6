#pragma once

#include <Eigen/Dense>

#include <optional>
#include <vector>

#include "rz/geometry.hpp"
#include "rz/moments.hpp"
#include "rz/pencil.hpp"
#include "rz/random.hpp"

namespace rz {

/// 2x2 representation det(I + x_1 A_1 + x_2 A_2) of a planar quadratic real
/// zero polynomial with p(0) = 1. Verified by expansion before returning.
DetRep hv2_quadratic(const Polynomial& p);

/// The bordered matrix with x_0 and -d_i x_0 on the diagonal and -d_i x_i in
/// the first row and column. Variables are (x_0, x_1, ..., x_n).
HomogeneousPencil circle_pencil(const std::vector<Rational>& d);

/// Size n + 1 representation of p (1 + b^T x / 2)^(n - 1) for a quadratic
/// real zero polynomial p = x^T A x + b^T x + 1.
DetRep lincofactor_rep(const Polynomial& p);

/// The cofactor target p (1 + b^T x / 2)^(n - 1) represented by lincofactor_rep.
Polynomial lincofactor_target(const Polynomial& p);

enum class FamilyKind { kScalarIdentity, kDiagonal, kFullSymmetric, kPowersOfA };
const char* to_string(FamilyKind k);
FamilyKind parse_family_kind(const std::string& s);

/// Generators of a linear space of symmetric matrices known to be perfect,
/// with the rank of their vectorizations as a spanning certificate.
struct PerfectFamily {
  FamilyKind kind = FamilyKind::kScalarIdentity;
  int size = 0;
  std::vector<RationalMatrix> generators;
  int rank = 0;
};

PerfectFamily perfect_family(FamilyKind kind, int size, const std::optional<RationalMatrix>& a = std::nullopt);

/// Sampled comparison of the gauges of C(p) and S_d(p) for p = det(I + sum x_i A_i), d = size.
struct ExactnessReport {
  int rays = 0;
  double max_deviation = 0.0;     // max |gauge_C - gauge_S|
  double max_containment = 0.0;   // max (gauge_C - gauge_S), <= 0 up to round-off
  std::vector<RayGaugeResult> gauge_C;
  std::vector<RayGaugeResult> gauge_S;
};

ExactnessReport exactness_check_detrep(const DetRep& r, int rays, Rng& rng);

/// Upper triangle of a symmetric matrix in row-major order, and its inverse.
Eigen::VectorXd symmetric_vec(const Eigen::MatrixXd& x);
Eigen::MatrixXd symmetric_from_vec(const Eigen::VectorXd& v, int d);
int symmetric_dim(int d);

/// det X of the general symmetric d x d matrix in the variables symmetric_vec(X).
Polynomial general_symmetric_determinant(int d);

/// The pencil d sqrt(d) (tr(B_i X B_j))_{ij} in the entries of X and the
/// pencil N obtained by deleting its first row and column. N(vec X) is PSD
/// exactly on the derived cone of the PSD cone.
struct SaundersonPencil {
  int d = 0;
  int n = 0;
  Eigen::MatrixXd U;               // U vec(I) = |vec(I)| u_1
  std::vector<Eigen::MatrixXd> B;  // B_i = [row i of U]
  RealHomogeneousPencil full;
  RealHomogeneousPencil reduced;
};

SaundersonPencil saunderson_pencil(int d);

}  // namespace rz
