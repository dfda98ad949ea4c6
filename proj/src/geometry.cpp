#include "rz/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace rz {

const char* to_string(GaugeStatus s) {
  switch (s) {
    case GaugeStatus::kExactRoot: return "EXACT_ROOT";
    case GaugeStatus::kBisected: return "BISECTED";
    case GaugeStatus::kUnbounded: return "UNBOUNDED";
  }
  return "?";
}

namespace {

// Newton refinement of a real root of a squarefree factor, in long double.
double polish_real_root(const UniPoly& f, double x0) {
  std::vector<long double> c;
  for (const Rational& v : f) c.push_back(static_cast<long double>(v.get_d()));
  auto eval = [&](long double x, long double& d) {
    long double v = 0.0L;
    d = 0.0L;
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
      d = d * x + v;
      v = v * x + *it;
    }
    return v;
  };
  long double x = x0;
  long double d;
  long double fx = eval(x, d);
  for (int it = 0; it < 8 && fx != 0.0L && d != 0.0L; ++it) {
    const long double next = x - fx / d;
    long double dn;
    const long double fn = eval(next, dn);
    if (!(std::fabs(fn) < std::fabs(fx))) break;
    x = next;
    fx = fn;
    d = dn;
  }
  return static_cast<double>(x);
}

bool all_zero(const std::vector<double>& a) {
  return std::all_of(a.begin(), a.end(), [](double v) { return v == 0.0; });
}

}  // namespace

RZVerdict real_zero_probe(const Polynomial& p, int trials, double tol, Rng& rng) {
  require(!p.is_zero(), ErrorCode::kDomain, "the zero polynomial is not a real zero polynomial");
  require(trials >= 0 && tol > 0.0, ErrorCode::kDomain, "invalid probe parameters");
  RZVerdict v;
  v.tolerance = tol;
  if (p.constant_term() == 0) {
    v.passed = false;
    v.counterexample_direction.assign(p.n_vars(), 0.0);
    v.counterexample_root = std::complex<double>(0.0, 0.0);
    return v;
  }
  for (int t = 0; t < trials; ++t) {
    const std::vector<double> a = rng.unit_vector(p.n_vars());
    ++v.directions_tested;
    const UniPoly f = univariate_coefficients(restrict_line(p, exact_rational(a)));
    for (const Root& r : roots_with_multiplicity(f)) {
      if (!is_effectively_real(r.value, tol)) {
        v.passed = false;
        v.counterexample_direction = a;
        v.counterexample_root = r.value;
        return v;
      }
    }
  }
  return v;
}

QuadraticCertificate quadratic_rz_certificate(const Polynomial& p_in) {
  require(p_in.is_zero() || p_in.degree() <= 2, ErrorCode::kDomain, "certificate applies to degree <= 2 only");
  const Rational c0 = p_in.constant_term();
  require(c0 != 0, ErrorCode::kDomain, "p(0) must be nonzero");
  const Polynomial p = p_in * Rational(1 / c0);
  const int n = p.n_vars();
  QuadraticCertificate c;
  c.A = RationalMatrix(n, n);
  c.b.assign(n, Rational(0));
  for (const auto& [e, v] : p.terms()) {
    std::vector<int> idx;
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < e[i]; ++k) idx.push_back(i);
    if (idx.size() == 1) {
      c.b[idx[0]] = v;
    } else if (idx.size() == 2) {
      if (idx[0] == idx[1]) {
        c.A(idx[0], idx[0]) = v;
      } else {
        c.A(idx[0], idx[1]) = v / 2;
        c.A(idx[1], idx[0]) = v / 2;
      }
    }
  }
  c.discriminant = RationalMatrix(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) c.discriminant(i, j) = c.b[i] * c.b[j] - 4 * c.A(i, j);
  c.verdict = is_psd(to_eigen(c.discriminant));
  c.exact_psd = exact_ldl(c.discriminant).psd;
  return c;
}

RayGaugeResult ray_gauge_C(const Polynomial& p, const std::vector<double>& a, double tol) {
  require(static_cast<int>(a.size()) == p.n_vars(), ErrorCode::kDimensionMismatch, "direction has wrong length");
  require(p.constant_term() != 0, ErrorCode::kDomain, "gauge needs p(0) != 0");
  RayGaugeResult r;
  r.direction = a;
  if (all_zero(a)) return r;
  const UniPoly f = univariate_coefficients(restrict_line(p, exact_rational(a)));
  double best = std::numeric_limits<double>::infinity();
  for (const SquarefreeFactor& sf : squarefree_decomposition(f)) {
    std::vector<double> c;
    for (const Rational& v : sf.factor) c.push_back(v.get_d());
    for (std::complex<double> z : polynomial_roots(c)) {
      if (!is_effectively_real(z, tol) || z.real() <= 1e-12) continue;
      best = std::min(best, polish_real_root(sf.factor, z.real()));
    }
  }
  if (std::isfinite(best)) {
    r.gauge = best;
    r.status = GaugeStatus::kExactRoot;
  }
  return r;
}

bool member_C(const Polynomial& p, const std::vector<double>& a) {
  const RayGaugeResult g = ray_gauge_C(p, a);
  return g.unbounded() || g.gauge >= 1.0 - 1e-10;
}

// ---------------------------------------------------------------------------

SpectrahedronGauge::SpectrahedronGauge(const Pencil& m, double t_max) : n_vars_(m.n_vars), t_max_(t_max) {
  require(t_max > 0.0, ErrorCode::kDomain, "t_max must be positive");
  const RationalMatrix& a0 = m.coeffs.front();
  const ExactLdl ldl = exact_ldl(a0);
  require(ldl.psd, ErrorCode::kDomain, "the pencil is not PSD at the origin");
  numeric_ = m.numeric();

  bool kernel_shared = true;
  const auto kernel = exact_nullspace(a0);
  for (std::size_t k = 1; k < m.coeffs.size() && kernel_shared; ++k)
    for (const auto& v : kernel) {
      const std::vector<Rational> w = m.coeffs[k].apply(v);
      if (std::any_of(w.begin(), w.end(), [](const Rational& x) { return x != 0; })) {
        kernel_shared = false;
        break;
      }
    }
  if (!kernel_shared) return;

  pivots_ = ldl.pivots;
  std::sort(pivots_.begin(), pivots_.end());
  const int e = static_cast<int>(pivots_.size());
  reduced_ = true;
  if (e == 0) return;
  const Eigen::MatrixXd b0 = to_eigen(a0.principal(pivots_));
  Eigen::LLT<Eigen::MatrixXd> llt(b0);
  require(llt.info() == Eigen::Success, ErrorCode::kNumerical, "Cholesky factorization of the reduced pencil failed");
  const Eigen::MatrixXd L = llt.matrixL();
  for (std::size_t k = 1; k < m.coeffs.size(); ++k) {
    const Eigen::MatrixXd bk = to_eigen(m.coeffs[k].principal(pivots_));
    Eigen::MatrixXd x = L.triangularView<Eigen::Lower>().solve(bk);
    Eigen::MatrixXd c = L.triangularView<Eigen::Lower>().solve(Eigen::MatrixXd(x.transpose()));
    whitened_.push_back(0.5 * (c + c.transpose()));
  }
}

RayGaugeResult SpectrahedronGauge::gauge(const std::vector<double>& a) const {
  require(static_cast<int>(a.size()) == n_vars_, ErrorCode::kDimensionMismatch, "direction has wrong length");
  if (!reduced_) return bisect(a);
  RayGaugeResult r;
  r.direction = a;
  if (whitened_.empty() || pivots_.empty()) return r;
  const int e = static_cast<int>(pivots_.size());
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(e, e);
  for (int k = 0; k < n_vars_; ++k)
    if (a[k] != 0.0) b -= a[k] * whitened_[k];
  const double lambda = eig_sym(b).values(e - 1);
  if (lambda <= 1.0 / t_max_) return r;
  r.gauge = 1.0 / lambda;
  r.status = GaugeStatus::kExactRoot;
  return r;
}

RayGaugeResult SpectrahedronGauge::bisect(const std::vector<double>& a) const {
  RayGaugeResult r;
  r.direction = a;
  auto feasible = [&](double t) {
    Eigen::MatrixXd m = numeric_[0];
    for (int k = 0; k < n_vars_; ++k)
      if (a[k] != 0.0) m += (t * a[k]) * numeric_[k + 1];
    return is_psd(m) != PsdVerdict::kNotPsd;
  };
  if (feasible(t_max_)) return r;
  double lo = 0.0;
  double hi = t_max_;
  double t = std::min(1.0, t_max_);
  if (feasible(t)) {
    while (2.0 * t < t_max_ && feasible(2.0 * t)) t *= 2.0;
    lo = t;
    hi = std::min(2.0 * t, t_max_);
  } else {
    hi = t;
    while (t > 1e-300 && !feasible(t * 0.5)) t *= 0.5;
    hi = t;
    lo = t * 0.5;
  }
  while (hi - lo > 1e-9 * hi) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? lo : hi) = mid;
  }
  r.gauge = lo;
  r.status = GaugeStatus::kBisected;
  return r;
}

RayGaugeResult ray_gauge_S(const Pencil& m, const std::vector<double>& a, double t_max) {
  return SpectrahedronGauge(m, t_max).gauge(a);
}

RayGaugeResult ray_gauge_S_bisect(const Pencil& m, const std::vector<double>& a, double t_max) {
  require(static_cast<int>(a.size()) == m.n_vars, ErrorCode::kDimensionMismatch, "direction has wrong length");
  return SpectrahedronGauge(m, t_max).bisect(a);
}

PsdVerdict member_S(const Pencil& m, const std::vector<double>& a) { return is_psd(m.eval_numeric(a)); }

FamilyGauge::FamilyGauge(const std::vector<ShiftedPencil>& family, double t_max) {
  require(!family.empty(), ErrorCode::kDomain, "the anchor family is empty");
  for (const ShiftedPencil& s : family) {
    std::vector<Rational> center;
    for (const Rational& v : s.anchor) center.push_back(-v);
    members_.emplace_back(recenter(s.pencil, center), t_max);
  }
}

RayGaugeResult FamilyGauge::gauge(const std::vector<double>& a) const {
  RayGaugeResult best;
  best.direction = a;
  for (const SpectrahedronGauge& g : members_) {
    RayGaugeResult r = g.gauge(a);
    if (!r.unbounded() && (best.unbounded() || r.gauge < best.gauge)) best = r;
  }
  return best;
}

// ---------------------------------------------------------------------------

namespace {

UniPoly eigen_line(const Polynomial& p, const std::vector<double>& e, const std::vector<double>& a) {
  require(static_cast<int>(e.size()) == p.n_vars() && static_cast<int>(a.size()) == p.n_vars(),
          ErrorCode::kDimensionMismatch, "vector has wrong length");
  std::vector<Rational> neg_e;
  for (double v : e) neg_e.push_back(exact_rational(-v));
  return line_coefficients(p, exact_rational(a), neg_e);
}

void check_hyperbolic_input(const Polynomial& p, const std::vector<double>& e) {
  require(!p.is_zero() && p.is_homogeneous(), ErrorCode::kDomain, "polynomial must be homogeneous and nonzero");
  require(!all_zero(e), ErrorCode::kDomain, "direction must be nonzero");
  require(p.eval(exact_rational(e)) != 0, ErrorCode::kDomain, "p vanishes at the direction");
}

}  // namespace

RZVerdict hyperbolicity_probe(const Polynomial& p, const std::vector<double>& e, int trials, double tol, Rng& rng) {
  RZVerdict v;
  v.tolerance = tol;
  require(static_cast<int>(e.size()) == p.n_vars(), ErrorCode::kDimensionMismatch, "direction has wrong length");
  if (p.is_zero() || !p.is_homogeneous()) fail(ErrorCode::kDomain, "polynomial must be homogeneous and nonzero");
  if (all_zero(e) || p.eval(exact_rational(e)) == 0) {
    v.passed = false;
    v.counterexample_direction = e;
    v.counterexample_root = std::complex<double>(0.0, 0.0);
    return v;
  }
  for (int t = 0; t < trials; ++t) {
    const std::vector<double> a = rng.unit_vector(p.n_vars());
    ++v.directions_tested;
    for (const Root& r : roots_with_multiplicity(eigen_line(p, e, a))) {
      if (!is_effectively_real(r.value, tol)) {
        v.passed = false;
        v.counterexample_direction = a;
        v.counterexample_root = r.value;
        return v;
      }
    }
  }
  return v;
}

std::vector<double> eigenvalues_dir(const Polynomial& p, const std::vector<double>& e, const std::vector<double>& a,
                                    double tol) {
  check_hyperbolic_input(p, e);
  const UniPoly f = eigen_line(p, e, a);
  std::vector<double> out;
  for (const SquarefreeFactor& sf : squarefree_decomposition(f)) {
    std::vector<double> c;
    for (const Rational& v : sf.factor) c.push_back(v.get_d());
    for (std::complex<double> z : polynomial_roots(c)) {
      require(is_effectively_real(z, tol), ErrorCode::kDomain, "eigenvalue is not real: not hyperbolic here");
      const double x = polish_real_root(sf.factor, z.real());
      for (int k = 0; k < sf.multiplicity; ++k) out.push_back(x);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

double trace_dir(const Polynomial& p, const std::vector<double>& e, const std::vector<double>& a, double tol) {
  double sum = 0.0;
  for (double v : eigenvalues_dir(p, e, a, tol)) sum += v;
  return sum;
}

bool cone_member(const Polynomial& p, const std::vector<double>& e, const std::vector<double>& a) {
  const std::vector<double> eig = eigenvalues_dir(p, e, a);
  double scale = 1.0;
  for (double v : eig) scale = std::max(scale, std::abs(v));
  return eig.empty() || eig.front() >= -1e-9 * scale;
}

}  // namespace rz
