#include "rz/pencil.hpp"

#include <cmath>

#include "rz/geometry.hpp"
#include "rz/linalg.hpp"

namespace rz {

RealPencil to_real(const Pencil& p) {
  RealPencil r;
  r.n_vars = p.n_vars;
  r.size = p.size;
  for (const auto& c : p.coeffs) {
    DenseMatrix<double> m(c.rows(), c.cols());
    for (int i = 0; i < c.rows(); ++i)
      for (int j = 0; j < c.cols(); ++j) m(i, j) = c(i, j).get_d();
    r.coeffs.push_back(m);
  }
  return r;
}

Pencil recenter(const Pencil& p, const std::vector<Rational>& center) {
  Pencil r = p;
  r.coeffs[0] = p.eval(center);
  return r;
}

namespace {

template <class T>
BasicPencil<T> pencil_from_table(const BasicMomentTable<T>& table) {
  require(table.cutoff >= 3, ErrorCode::kDomain, "pencil needs moments up to degree 3");
  const int n = table.n_vars;
  BasicPencil<T> m;
  m.n_vars = n;
  m.size = n + 1;
  // basis monomials 1, x_1, ..., x_n
  std::vector<Exponent> basis{Exponent(n, 0)};
  for (int i = 0; i < n; ++i) basis.push_back(unit_exponent(n, i));
  for (int k = 0; k <= n; ++k) {
    DenseMatrix<T> a(n + 1, n + 1);
    for (int i = 0; i <= n; ++i)
      for (int j = i; j <= n; ++j) {
        Exponent e = add_exponents(basis[i], basis[j]);
        if (k > 0) ++e[k - 1];
        a(i, j) = table.value(e);
        a(j, i) = a(i, j);
      }
    m.coeffs.push_back(a);
  }
  return m;
}

template <class T>
BasicHomogeneousPencil<T> homogeneous_from_table(const BasicMomentTable<T>& table) {
  BasicPencil<T> m = pencil_from_table(table);
  BasicHomogeneousPencil<T> h;
  h.n_vars = m.n_vars + 1;
  h.size = m.size;
  h.coeffs = m.coeffs;
  return h;
}

}  // namespace

Pencil build_pencil(const MomentTable& table) { return pencil_from_table(table); }
RealPencil build_pencil(const RealMomentTable& table) { return pencil_from_table(table); }

Pencil build_pencil(const Polynomial& p) {
  const int d = p.is_zero() ? 0 : p.degree();
  return build_pencil(moment_table(p, d, 3));
}

Pencil build_pencil_inf(const MomentTable& table) {
  const Pencil full = build_pencil(table);
  Pencil m;
  m.n_vars = full.n_vars;
  m.size = full.size - 1;
  std::vector<int> keep;
  for (int i = 1; i < full.size; ++i) keep.push_back(i);
  for (const auto& c : full.coeffs) m.coeffs.push_back(c.principal(keep));
  return m;
}

HomogeneousPencil build_homogeneous_pencil(const MomentTable& table) { return homogeneous_from_table(table); }
RealHomogeneousPencil build_homogeneous_pencil(const RealMomentTable& table) {
  return homogeneous_from_table(table);
}

Pencil build_hierarchy_pencil(const Polynomial& p, int level) {
  require(level >= 0, ErrorCode::kDomain, "hierarchy level must be nonnegative");
  const int n = p.n_vars();
  const int cutoff = std::max(1, 2 * level + 1);
  require(cutoff <= kMaxCutoff, ErrorCode::kCapacity,
          "hierarchy level " + std::to_string(level) + " needs moments beyond degree " + std::to_string(kMaxCutoff));
  const MomentTable table = moment_table(p, p.is_zero() ? 0 : p.degree(), cutoff);
  const std::vector<Exponent> basis = monomials_up_to(n, level);
  const int s = static_cast<int>(basis.size());
  Pencil m;
  m.n_vars = n;
  m.size = s;
  for (int k = 0; k <= n; ++k) {
    RationalMatrix a(s, s);
    for (int i = 0; i < s; ++i)
      for (int j = i; j < s; ++j) {
        Exponent e = add_exponents(basis[i], basis[j]);
        if (k > 0) ++e[k - 1];
        a(i, j) = table.value(e);
        a(j, i) = a(i, j);
      }
    m.coeffs.push_back(a);
  }
  return m;
}

bool HalfSpace::full_space() const {
  for (const Rational& v : c)
    if (v != 0) return false;
  return true;
}

HalfSpace halfspace(const MomentTable& table) {
  HalfSpace h;
  h.c0 = table.virtual_degree;
  for (int i = 0; i < table.n_vars; ++i) h.c.push_back(table.value(unit_exponent(table.n_vars, i)));
  return h;
}

std::pair<Rational, Rational> quadratic_form_identity_check(const MomentTable& table, const std::vector<Rational>& a,
                                                            const std::vector<Rational>& v) {
  const int n = table.n_vars;
  require(static_cast<int>(a.size()) == n && static_cast<int>(v.size()) == n + 1, ErrorCode::kDimensionMismatch,
          "expected a in R^n and v in R^(n+1)");
  const Pencil m = build_pencil(table);
  const RationalMatrix ma = m.eval(a);
  Rational lhs(0);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) lhs += v[i] * ma(i, j) * v[j];

  Polynomial lin = Polynomial::constant(n, v[0]);
  Polynomial loc = Polynomial::constant(n, Rational(1));
  for (int i = 0; i < n; ++i) {
    lin.add_term(unit_exponent(n, i), v[i + 1]);
    loc.add_term(unit_exponent(n, i), a[i]);
  }
  const Rational rhs = table.apply(lin * lin * loc);
  return {lhs, rhs};
}

HyperbolicPencil homogeneous_pencil(const Polynomial& p, const std::vector<double>& e, int probe_trials) {
  const int n = p.n_vars();
  require(static_cast<int>(e.size()) == n, ErrorCode::kDimensionMismatch, "direction has wrong length");
  require(n >= 1, ErrorCode::kDomain, "hyperbolic pencils need at least one variable");
  require(!p.is_zero() && p.is_homogeneous(), ErrorCode::kDomain, "polynomial must be homogeneous and nonzero");
  Eigen::VectorXd ev = Eigen::Map<const Eigen::VectorXd>(e.data(), n);
  require(ev.norm() > 0.0, ErrorCode::kDomain, "direction must be nonzero");
  if (probe_trials > 0) {
    Rng rng(kDefaultSeed);
    const RZVerdict v = hyperbolicity_probe(p, e, probe_trials, kDefaultRootTol, rng);
    require(v.passed, ErrorCode::kDomain, "hyperbolicity probe failed in the given direction");
  }
  const int d = p.degree();
  HyperbolicPencil out;
  out.rotation = householder_to_first_axis(ev);
  const Eigen::MatrixXd& U = out.rotation;
  // q = p(U^T x), r = q(1, x_2, ..., x_n)
  const RealPolynomial q = linear_substitute(to_real(p), Eigen::MatrixXd(U.transpose()));
  out.dehomogenized = dehomogenize(q);
  require(std::abs(out.dehomogenized.constant_term()) > 0.0, ErrorCode::kDomain, "p vanishes at the direction");
  const RealMomentTable table = moment_table(out.dehomogenized, d, 3);
  out.rotated = build_homogeneous_pencil(table);

  out.pencil.n_vars = n;
  out.pencil.size = n;
  for (int j = 0; j < n; ++j) {
    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(n, n);
    for (int k = 0; k < n; ++k) sum += U(k, j) * to_eigen(out.rotated.coeffs[k]);
    const Eigen::MatrixXd block = U.transpose() * sum * U;
    out.pencil.coeffs.push_back(to_dense(Eigen::MatrixXd(0.5 * (block + block.transpose()))));
  }
  return out;
}

std::vector<ShiftedPencil> shifted_pencil_family(const Polynomial& p,
                                                 const std::vector<std::vector<Rational>>& anchors) {
  const int n = p.n_vars();
  require(p.constant_term() != 0, ErrorCode::kDomain, "p(0) must be nonzero");
  std::vector<ShiftedPencil> family;
  for (const auto& a : anchors) {
    require(static_cast<int>(a.size()) == n, ErrorCode::kDimensionMismatch, "anchor has wrong length");
    const Rational value = p.eval(a);
    require(value != 0, ErrorCode::kDomain, "anchor lies on the zero set");
    bool at_origin = true;
    for (const Rational& v : a) at_origin = at_origin && v == 0;
    if (!at_origin) {
      const RayGaugeResult g = ray_gauge_C(p, to_double(a));
      require(g.unbounded() || g.gauge > 1.0 + 1e-9, ErrorCode::kDomain,
              "anchor is not in the interior of the rigidly convex set");
    }
    ShiftedPencil s;
    s.anchor = a;
    s.shifted = shift(p, a) * Rational(1 / value);
    s.pencil = build_pencil(s.shifted);
    family.push_back(std::move(s));
  }
  return family;
}

}  // namespace rz
