#pragma once

#include <complex>
#include <limits>
#include <optional>
#include <vector>

#include "rz/linalg.hpp"
#include "rz/pencil.hpp"
#include "rz/poly.hpp"
#include "rz/random.hpp"
#include "rz/univariate.hpp"

namespace rz {

inline constexpr double kDefaultRootTol = 1e-7;
inline constexpr double kDefaultTMax = 1e6;

enum class GaugeStatus { kExactRoot, kBisected, kUnbounded };
const char* to_string(GaugeStatus s);

/// sup{t >= 0 : t a in the set}; +infinity when unbounded.
struct RayGaugeResult {
  std::vector<double> direction;
  double gauge = std::numeric_limits<double>::infinity();
  GaugeStatus status = GaugeStatus::kUnbounded;

  bool unbounded() const { return status == GaugeStatus::kUnbounded; }
};

/// Outcome of a randomized real-rootedness probe. Passing is evidence, not proof.
struct RZVerdict {
  bool passed = true;
  std::vector<double> counterexample_direction;
  std::optional<std::complex<double>> counterexample_root;
  int directions_tested = 0;
  double tolerance = kDefaultRootTol;
};

/// Probes p(t a) for random unit directions a.
RZVerdict real_zero_probe(const Polynomial& p, int trials, double tol, Rng& rng);

/// p = x^T A x + b^T x + 1 with the discriminant matrix b b^T - 4A.
struct QuadraticCertificate {
  RationalMatrix A;
  std::vector<Rational> b;
  RationalMatrix discriminant;
  PsdVerdict verdict = PsdVerdict::kNotPsd;  // numerical verdict
  bool exact_psd = false;                    // exact rational LDL^T verdict
};

/// Requires deg p <= 2; p is normalized to p(0) = 1 first.
QuadraticCertificate quadratic_rz_certificate(const Polynomial& p);

/// Smallest positive real root of t -> p(t a).
RayGaugeResult ray_gauge_C(const Polynomial& p, const std::vector<double>& a, double tol = kDefaultRootTol);
bool member_C(const Polynomial& p, const std::vector<double>& a);

/// Gauge oracle of {x : M(x) PSD} for a pencil with M(0) PSD.
///
/// When the kernel of A_0 lies in the kernel of every A_k (so the origin is
/// interior relative to the pencil's support) the pencil is reduced exactly to
/// the pivot rows of A_0 and the gauge along a is 1 / lambda_max(-sum a_k C_k)
/// with C_k = L^{-1} A_k L^{-T}. Otherwise the gauge is found by bisection on
/// the PSD verdict.
class SpectrahedronGauge {
 public:
  explicit SpectrahedronGauge(const Pencil& m, double t_max = kDefaultTMax);

  RayGaugeResult gauge(const std::vector<double>& a) const;
  bool reduced() const { return reduced_; }
  int reduced_size() const { return static_cast<int>(pivots_.size()); }
  /// The bisection route, regardless of whether the pencil was reduced.
  RayGaugeResult bisect(const std::vector<double>& a) const;

 private:

  int n_vars_ = 0;
  double t_max_ = kDefaultTMax;
  bool reduced_ = false;
  std::vector<int> pivots_;
  std::vector<Eigen::MatrixXd> whitened_;  // C_1..C_n
  std::vector<Eigen::MatrixXd> numeric_;   // A_0..A_n
};

RayGaugeResult ray_gauge_S(const Pencil& m, const std::vector<double>& a, double t_max = kDefaultTMax);
/// The bisection route alone: sup{t in [0, t_max] : is_psd(M(t a)) != NOT_PSD}.
RayGaugeResult ray_gauge_S_bisect(const Pencil& m, const std::vector<double>& a, double t_max = kDefaultTMax);
PsdVerdict member_S(const Pencil& m, const std::vector<double>& a);

/// Gauge of the intersection of shifted relaxations: the minimum over anchors.
class FamilyGauge {
 public:
  explicit FamilyGauge(const std::vector<ShiftedPencil>& family, double t_max = kDefaultTMax);
  RayGaugeResult gauge(const std::vector<double>& a) const;

 private:
  std::vector<SpectrahedronGauge> members_;
};

/// Probes p(a - t e) for random directions a. Requires p homogeneous and p(e) != 0.
RZVerdict hyperbolicity_probe(const Polynomial& p, const std::vector<double>& e, int trials, double tol, Rng& rng);

/// Roots of t -> p(a - t e), with multiplicity, ascending.
std::vector<double> eigenvalues_dir(const Polynomial& p, const std::vector<double>& e, const std::vector<double>& a,
                                    double tol = kDefaultRootTol);
double trace_dir(const Polynomial& p, const std::vector<double>& e, const std::vector<double>& a,
                 double tol = kDefaultRootTol);
bool cone_member(const Polynomial& p, const std::vector<double>& e, const std::vector<double>& a);

}  // namespace rz
