#include "rz/detrep.hpp"

#include <algorithm>
#include <cmath>

namespace rz {

namespace {

void check_residual(const DetRep& rep, const Polynomial& target, const char* what) {
  const Polynomial expanded = detrep_expand(rep);
  const double residual = max_coeff_difference(expanded, target);
  require(residual <= 1e-8 * (1.0 + max_abs_coeff(target)), ErrorCode::kNumerical,
          std::string(what) + ": expansion residual " + std::to_string(residual) + " too large");
}

struct QuadraticParts {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
};

QuadraticParts quadratic_parts(const Polynomial& p, const char* what) {
  require(p.constant_term() == 1, ErrorCode::kDomain, std::string(what) + " needs p(0) = 1");
  const QuadraticCertificate c = quadratic_rz_certificate(p);
  require(c.exact_psd, ErrorCode::kDomain, std::string(what) + " needs a real zero quadratic (b b^T - 4A not PSD)");
  QuadraticParts q;
  q.A = to_eigen(c.A);
  q.b = Eigen::Map<const Eigen::VectorXd>(to_double(c.b).data(), p.n_vars());
  return q;
}

// Planar formula; needs r = b_1^2 - 4 a_11 > 0.
std::vector<Eigen::MatrixXd> hv2_direct(const Eigen::MatrixXd& A, const Eigen::VectorXd& b) {
  const double r = b(0) * b(0) - 4.0 * A(0, 0);
  const Eigen::MatrixXd disc = b * b.transpose() - 4.0 * A;
  const double s = std::max(0.0, disc.determinant());
  const double sr = std::sqrt(r);
  const double b1 = b(0), b2 = b(1), a11 = A(0, 0), a12 = A(0, 1);
  Eigen::MatrixXd a1 = Eigen::MatrixXd::Zero(2, 2);
  a1(0, 0) = 0.5 * (b1 - sr);
  a1(1, 1) = 0.5 * (b1 + sr);
  Eigen::MatrixXd a2(2, 2);
  a2(0, 0) = b1 * b1 * b2 - b1 * b2 * sr - 4.0 * a11 * b2 + 4.0 * a12 * sr;
  a2(1, 1) = b1 * b1 * b2 + b1 * b2 * sr - 4.0 * a11 * b2 - 4.0 * a12 * sr;
  a2(0, 1) = a2(1, 0) = std::sqrt(r * s);
  a2 /= 2.0 * r;
  return {a1, a2};
}

}  // namespace

DetRep hv2_quadratic(const Polynomial& p) {
  require(p.n_vars() == 2, ErrorCode::kDimensionMismatch, "hv2_quadratic needs a polynomial in 2 variables");
  const QuadraticParts q = quadratic_parts(p, "hv2_quadratic");
  const Eigen::MatrixXd disc = q.b * q.b.transpose() - 4.0 * q.A;
  const SymmetricEigen es = eig_sym(disc);
  const double top = es.values(1);
  std::vector<Eigen::MatrixXd> coeffs;
  if (top <= 1e-14 * (1.0 + q.b.squaredNorm())) {
    // p = (1 + b^T x / 2)^2
    for (int i = 0; i < 2; ++i) coeffs.push_back(0.5 * q.b(i) * Eigen::MatrixXd::Identity(2, 2));
  } else if (disc(0, 0) > 1e-3 * top) {
    coeffs = hv2_direct(q.A, q.b);
  } else {
    // Rotate so that the first variable carries the top eigenvalue of the
    // discriminant, apply the formula there and rotate the coefficients back.
    Eigen::MatrixXd V(2, 2);
    V.col(0) = es.vectors.col(1);
    V.col(1) = es.vectors.col(0);
    if (V.determinant() < 0) V.col(1) = -V.col(1);
    const std::vector<Eigen::MatrixXd> rotated = hv2_direct(V.transpose() * q.A * V, V.transpose() * q.b);
    for (int i = 0; i < 2; ++i) coeffs.push_back(V(i, 0) * rotated[0] + V(i, 1) * rotated[1]);
  }
  DetRep rep = DetRep::from_real(coeffs);
  check_residual(rep, p, "hv2_quadratic");
  return rep;
}

HomogeneousPencil circle_pencil(const std::vector<Rational>& d) {
  const int n = static_cast<int>(d.size());
  HomogeneousPencil m;
  m.n_vars = n + 1;
  m.size = n + 1;
  m.coeffs.assign(n + 1, RationalMatrix(n + 1, n + 1));
  m.coeffs[0](0, 0) = 1;
  for (int i = 1; i <= n; ++i) {
    m.coeffs[0](i, i) = -d[i - 1];
    m.coeffs[i](0, i) = -d[i - 1];
    m.coeffs[i](i, 0) = -d[i - 1];
  }
  return m;
}

Polynomial lincofactor_target(const Polynomial& p) {
  const int n = p.n_vars();
  require(p.constant_term() == 1, ErrorCode::kDomain, "lincofactor needs p(0) = 1");
  Polynomial half_linear = Polynomial::constant(n, Rational(1));
  for (int i = 0; i < n; ++i) {
    const Rational bi = p.coeff(unit_exponent(n, i));
    if (bi != 0) half_linear += Polynomial::variable(n, i) * Rational(bi / 2);
  }
  Polynomial out = p;
  for (int k = 0; k < n - 1; ++k) out = out * half_linear;
  return out;
}

DetRep lincofactor_rep(const Polynomial& p) {
  const int n = p.n_vars();
  require(n >= 1, ErrorCode::kDomain, "lincofactor needs at least one variable");
  const QuadraticParts q = quadratic_parts(p, "lincofactor_rep");
  const Eigen::MatrixXd K = q.A - 0.25 * q.b * q.b.transpose();
  const SymmetricEigen es = eig_sym(K);  // ascending: negative eigenvalues first
  const double zero_tol = 1e-12 * (1.0 + K.norm());
  int m = 0;
  while (m < n && es.values(m) < -zero_tol) ++m;

  std::vector<Eigen::MatrixXd> coeffs;
  if (m == 0) {
    for (int i = 0; i < n; ++i) coeffs.push_back(0.5 * q.b(i) * Eigen::MatrixXd::Identity(n + 1, n + 1));
  } else {
    const Eigen::MatrixXd& U = es.vectors;
    Eigen::VectorXd diag = Eigen::VectorXd::Ones(n + 1);
    for (int i = 0; i < m; ++i) diag(i + 1) = -es.values(i);
    const Eigen::VectorXd scale = diag.cwiseSqrt().cwiseInverse();
    for (int k = 0; k < n; ++k) {
      Eigen::MatrixXd bk = 0.5 * q.b(k) * Eigen::MatrixXd(diag.asDiagonal());
      for (int i = 0; i < m; ++i) {
        const double v = -es.values(i) * U(k, i);
        bk(0, i + 1) += v;
        bk(i + 1, 0) += v;
      }
      coeffs.push_back(scale.asDiagonal() * bk * scale.asDiagonal());
    }
  }
  DetRep rep = DetRep::from_real(coeffs);
  check_residual(rep, lincofactor_target(p), "lincofactor_rep");
  return rep;
}

const char* to_string(FamilyKind k) {
  switch (k) {
    case FamilyKind::kScalarIdentity: return "SCALAR_IDENTITY";
    case FamilyKind::kDiagonal: return "DIAGONAL";
    case FamilyKind::kFullSymmetric: return "FULL_SYMMETRIC";
    case FamilyKind::kPowersOfA: return "POWERS_OF_A";
  }
  return "?";
}

FamilyKind parse_family_kind(const std::string& s) {
  for (FamilyKind k : {FamilyKind::kScalarIdentity, FamilyKind::kDiagonal, FamilyKind::kFullSymmetric,
                       FamilyKind::kPowersOfA})
    if (s == to_string(k)) return k;
  fail(ErrorCode::kParse, "unknown family kind '" + s + "'");
}

PerfectFamily perfect_family(FamilyKind kind, int size, const std::optional<RationalMatrix>& a) {
  require(size >= 1, ErrorCode::kDomain, "family size must be positive");
  PerfectFamily f;
  f.kind = kind;
  f.size = size;
  switch (kind) {
    case FamilyKind::kScalarIdentity:
      f.generators.push_back(RationalMatrix::identity(size));
      break;
    case FamilyKind::kDiagonal:
      for (int i = 0; i < size; ++i) {
        RationalMatrix e(size, size);
        e(i, i) = 1;
        f.generators.push_back(e);
      }
      break;
    case FamilyKind::kFullSymmetric:
      for (int i = 0; i < size; ++i)
        for (int j = i; j < size; ++j) {
          RationalMatrix e(size, size);
          e(i, j) = 1;
          e(j, i) = 1;
          f.generators.push_back(e);
        }
      break;
    case FamilyKind::kPowersOfA: {
      require(a.has_value(), ErrorCode::kUsage, "POWERS_OF_A needs a matrix");
      require(a->rows() == size && a->cols() == size, ErrorCode::kDimensionMismatch, "matrix has wrong size");
      require(a->is_symmetric(), ErrorCode::kDomain, "POWERS_OF_A needs a symmetric matrix");
      RationalMatrix power = RationalMatrix::identity(size);
      for (int k = 0; k < size; ++k) {
        f.generators.push_back(power);
        power = power * *a;
      }
      break;
    }
  }
  RationalMatrix vecs(static_cast<int>(f.generators.size()), size * size);
  for (int g = 0; g < vecs.rows(); ++g)
    for (int i = 0; i < size; ++i)
      for (int j = 0; j < size; ++j) vecs(g, i * size + j) = f.generators[g](i, j);
  // generators minus the dimension of their linear relations
  f.rank = vecs.rows() - static_cast<int>(exact_nullspace(vecs.transpose()).size());
  return f;
}

ExactnessReport exactness_check_detrep(const DetRep& r, int rays, Rng& rng) {
  require(rays >= 0, ErrorCode::kDomain, "ray count must be nonnegative");
  const Polynomial p = detrep_expand(r);
  const SpectrahedronGauge s(build_pencil(moment_table(p, r.size, 3)));
  ExactnessReport report;
  report.rays = rays;
  for (int k = 0; k < rays; ++k) {
    const std::vector<double> a = rng.unit_vector(r.n_vars());
    const RayGaugeResult gc = ray_gauge_C(p, a);
    const RayGaugeResult gs = s.gauge(a);
    double dev = 0.0;
    double contain = 0.0;
    if (gc.unbounded() != gs.unbounded()) {
      dev = std::numeric_limits<double>::infinity();
      contain = gc.unbounded() ? dev : -dev;
    } else if (!gc.unbounded()) {
      dev = std::abs(gc.gauge - gs.gauge);
      contain = gc.gauge - gs.gauge;
    }
    report.max_deviation = std::max(report.max_deviation, dev);
    report.max_containment = k == 0 ? contain : std::max(report.max_containment, contain);
    report.gauge_C.push_back(gc);
    report.gauge_S.push_back(gs);
  }
  return report;
}

int symmetric_dim(int d) { return d * (d + 1) / 2; }

Eigen::VectorXd symmetric_vec(const Eigen::MatrixXd& x) {
  const int d = static_cast<int>(x.rows());
  Eigen::VectorXd v(symmetric_dim(d));
  int k = 0;
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) v(k++) = x(i, j);
  return v;
}

Eigen::MatrixXd symmetric_from_vec(const Eigen::VectorXd& v, int d) {
  require(v.size() == symmetric_dim(d), ErrorCode::kDimensionMismatch, "vector does not match the matrix size");
  Eigen::MatrixXd x(d, d);
  int k = 0;
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      x(i, j) = v(k);
      x(j, i) = v(k++);
    }
  return x;
}

Polynomial general_symmetric_determinant(int d) {
  require(d >= 1 && d <= kMaxExpandSize, ErrorCode::kCapacity, "matrix size out of range");
  const int n = symmetric_dim(d);
  std::vector<RationalMatrix> coeffs(n + 1, RationalMatrix(d, d));
  int k = 1;
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j, ++k) {
      coeffs[k](i, j) = 1;
      coeffs[k](j, i) = 1;
    }
  return determinant_polynomial(coeffs);
}

SaundersonPencil saunderson_pencil(int d) {
  require(d >= 1, ErrorCode::kDomain, "saunderson_pencil needs d >= 1");
  SaundersonPencil s;
  s.d = d;
  s.n = symmetric_dim(d);
  s.U = householder_to_first_axis(symmetric_vec(Eigen::MatrixXd::Identity(d, d)));
  for (int i = 0; i < s.n; ++i) s.B.push_back(symmetric_from_vec(s.U.row(i).transpose(), d));
  const double scale = d * std::sqrt(static_cast<double>(d));
  s.full.n_vars = s.reduced.n_vars = s.n;
  s.full.size = s.n;
  s.reduced.size = s.n - 1;
  for (int k = 0; k < s.n; ++k) {
    const Eigen::MatrixXd e = symmetric_from_vec(Eigen::VectorXd::Unit(s.n, k), d);
    Eigen::MatrixXd c(s.n, s.n);
    for (int i = 0; i < s.n; ++i)
      for (int j = 0; j < s.n; ++j) c(i, j) = scale * (s.B[i] * e * s.B[j]).trace();
    c = 0.5 * (c + c.transpose());
    s.full.coeffs.push_back(to_dense(c));
    s.reduced.coeffs.push_back(to_dense(c.bottomRightCorner(s.n - 1, s.n - 1)));
  }
  return s;
}

}  // namespace rz
