#include "rz/amalgam.hpp"

#include <algorithm>
#include <cmath>

#include "rz/detrep.hpp"
#include "rz/geometry.hpp"
#include "rz/linalg.hpp"

namespace rz {

namespace {

// Sets every variable outside `keep` to zero and renumbers the rest in order.
Polynomial keep_vars(const Polynomial& p, const std::vector<int>& keep) {
  Polynomial out(static_cast<int>(keep.size()));
  std::vector<bool> kept(p.n_vars(), false);
  for (int k : keep) kept[k] = true;
  for (const auto& [e, c] : p.terms()) {
    bool vanishes = false;
    for (int i = 0; i < p.n_vars(); ++i)
      if (!kept[i] && e[i] > 0) vanishes = true;
    if (vanishes) continue;
    Exponent f(keep.size());
    for (std::size_t j = 0; j < keep.size(); ++j) f[j] = e[keep[j]];
    out.add_term(f, c);
  }
  return out;
}

std::vector<int> range(int begin, int end) {
  std::vector<int> out;
  for (int i = begin; i < end; ++i) out.push_back(i);
  return out;
}

// x^T A x + b^T x + c with A, b of a polynomial of degree <= 2.
struct Quadratic {
  RationalMatrix A;
  std::vector<Rational> b;
};

Polynomial from_quadratic(const Quadratic& q, const Rational& c) {
  const int n = static_cast<int>(q.b.size());
  Polynomial out = Polynomial::constant(n, Rational(1));
  for (int i = 0; i < n; ++i) {
    if (q.b[i] != 0) out.add_term(unit_exponent(n, i), q.b[i]);
    for (int j = i; j < n; ++j) {
      const Rational v = i == j ? q.A(i, i) : Rational(2 * q.A(i, j));
      if (v != 0) out.add_term(add_exponents(unit_exponent(n, i), unit_exponent(n, j)), v);
    }
  }
  return out * c;
}

}  // namespace

Polynomial restrict_to_first_block(const Polynomial& r, int shared, int m, int n) {
  require(r.n_vars() == shared + m + n, ErrorCode::kDimensionMismatch, "block sizes do not match the polynomial");
  return keep_vars(r, range(0, shared + m));
}

Polynomial restrict_to_second_block(const Polynomial& r, int shared, int m, int n) {
  require(r.n_vars() == shared + m + n, ErrorCode::kDimensionMismatch, "block sizes do not match the polynomial");
  std::vector<int> keep = range(0, shared);
  for (int k = shared + m; k < shared + m + n; ++k) keep.push_back(k);
  return keep_vars(r, keep);
}

Polynomial amalgamate_disjoint(const Polynomial& p, const Polynomial& q, int d) {
  require(d >= 0, ErrorCode::kDomain, "degree bound must be nonnegative");
  require(p.is_zero() || p.degree() <= d, ErrorCode::kDomain, "deg p exceeds the degree bound");
  require(q.is_zero() || q.degree() <= d, ErrorCode::kDomain, "deg q exceeds the degree bound");
  const Rational c = p.constant_term();
  require(c != 0, ErrorCode::kDomain, "amalgamation needs p(0) != 0");
  require(q.constant_term() == c, ErrorCode::kDomain, "amalgamation needs p(0) = q(0)");
  const int m = p.n_vars();
  const int n = q.n_vars();
  const int total = m + n;
  // Homogeneous parts of the normalized inputs, embedded in (y, z).
  std::vector<Polynomial> P, Q;
  for (int k = 0; k <= d; ++k) {
    P.push_back(embed_vars(p.homogeneous_part(k), total, 0) * Rational(1 / c));
    Q.push_back(embed_vars(q.homogeneous_part(k), total, m) * Rational(1 / c));
  }
  // With p~ = sum_k x0^(d-k) P_k: d^i/dx0^i p~ at x0 = 1 is sum_k (d-k)!/(d-k-i)! P_k,
  // and d^(d-i)/dx0^(d-i) q~ at x0 = 0 is (d-i)! Q_i.
  Polynomial r(total);
  for (int i = 0; i <= d; ++i) {
    if (Q[i].is_zero()) continue;
    Polynomial left(total);
    for (int k = 0; k + i <= d; ++k)
      if (!P[k].is_zero()) left += P[k] * Rational(factorial(d - k) / factorial(d - k - i));
    r += left * (Q[i] * factorial(d - i));
  }
  return r * Rational(c / factorial(d));
}

Polynomial additive_convolution_1d(const Polynomial& f, const Polynomial& g, int d) {
  require(f.n_vars() == 1 && g.n_vars() == 1, ErrorCode::kDimensionMismatch, "convolution needs univariate inputs");
  require(d >= 0, ErrorCode::kDomain, "degree bound must be nonnegative");
  require(f.is_zero() || f.degree() <= d, ErrorCode::kDomain, "deg f exceeds the degree bound");
  require(g.is_zero() || g.degree() <= d, ErrorCode::kDomain, "deg g exceeds the degree bound");
  Polynomial h(1);
  Polynomial fi = f;
  for (int i = 0; i <= d; ++i) {
    const int j = d - i;
    const Rational gj = g.coeff(Exponent{j}) * factorial(j);
    if (gj != 0) h += fi * gj;
    fi = derivative(fi, 0);
  }
  return h;
}

void check_amalgam_problem(const AmalgamProblem& prob) {
  require(prob.shared >= 0 && prob.m() >= 0 && prob.n() >= 0, ErrorCode::kDimensionMismatch,
          "shared block larger than a factor");
  require(prob.p.constant_term() != 0, ErrorCode::kDomain, "amalgamation needs p(0) != 0");
  require(prob.p.is_zero() || prob.p.degree() <= prob.d, ErrorCode::kDomain, "deg p exceeds the degree bound");
  require(prob.q.is_zero() || prob.q.degree() <= prob.d, ErrorCode::kDomain, "deg q exceeds the degree bound");
  require(restrict_vars(prob.p, prob.shared) == restrict_vars(prob.q, prob.shared), ErrorCode::kDomain,
          "p(x, 0) and q(x, 0) differ");
}

Polynomial amalgamate_quadratic(const AmalgamProblem& prob) {
  require(prob.d == 2, ErrorCode::kDomain, "amalgamate_quadratic needs d = 2");
  check_amalgam_problem(prob);
  const int l = prob.shared, m = prob.m(), n = prob.n();
  const int total = l + m + n;
  const Rational c = prob.p.constant_term();
  const QuadraticCertificate cp = quadratic_rz_certificate(prob.p);
  const QuadraticCertificate cq = quadratic_rz_certificate(prob.q);
  require(cp.exact_psd, ErrorCode::kDomain, "p is not a real zero quadratic");
  require(cq.exact_psd, ErrorCode::kDomain, "q is not a real zero quadratic");

  // p keeps its variable positions in r; q's z block moves past y.
  auto qz = [&](int i) { return i < l ? i : m + i; };

  Quadratic r{RationalMatrix(total, total), std::vector<Rational>(total, Rational(0))};
  for (int i = 0; i < l + m; ++i) {
    r.b[i] = cp.b[i];
    for (int j = 0; j < l + m; ++j) r.A(i, j) = cp.A(i, j);
  }
  for (int i = 0; i < l + n; ++i) {
    r.b[qz(i)] = cq.b[i];
    for (int j = 0; j < l + n; ++j)
      if (i >= l || j >= l) r.A(qz(i), qz(j)) = cq.A(i, j);
  }

  // Completion of the (y, z) block of the discriminant: K = P_yx G P_xz with G
  // a generalized inverse of the shared block P_xx.
  if (m > 0 && n > 0) {
    RationalMatrix K(m, n);
    if (l > 0) {
      const RationalMatrix pxx = cp.discriminant.principal(range(0, l));
      const ExactLdl ldl = exact_ldl(pxx);
      std::vector<int> piv = ldl.pivots;
      std::sort(piv.begin(), piv.end());
      RationalMatrix G(l, l);
      if (!piv.empty()) {
        const RationalMatrix inv = exact_inverse(pxx.principal(piv));
        for (std::size_t a = 0; a < piv.size(); ++a)
          for (std::size_t b = 0; b < piv.size(); ++b) G(piv[a], piv[b]) = inv(a, b);
      }
      RationalMatrix pyx(m, l), qxz(l, n);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < l; ++j) pyx(i, j) = cp.discriminant(l + i, j);
      for (int i = 0; i < l; ++i)
        for (int j = 0; j < n; ++j) qxz(i, j) = cq.discriminant(i, l + j);
      K = pyx * G * qxz;
    }
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) {
        const Rational a = (cp.b[l + i] * cq.b[l + j] - K(i, j)) / 4;
        r.A(l + i, l + m + j) = a;
        r.A(l + m + j, l + i) = a;
      }
  }

  const Polynomial out = from_quadratic(r, c);
  const QuadraticCertificate cr = quadratic_rz_certificate(out);
  require(cr.exact_psd, ErrorCode::kNumerical, "completed discriminant is not PSD");
  require(restrict_to_first_block(out, l, m, n) == prob.p && restrict_to_second_block(out, l, m, n) == prob.q,
          ErrorCode::kNumerical, "restriction identities failed");
  return out;
}

Polynomial amalgamate_deg2_onevar(const Polynomial& p, const Polynomial& q) {
  require(p.n_vars() == 2 && q.n_vars() == 2, ErrorCode::kDimensionMismatch,
          "amalgamate_deg2_onevar needs p(x, y) and q(x, z)");
  check_amalgam_problem({1, p, q, 2});
  const Rational c = p.constant_term();
  const Polynomial pn = p * Rational(1 / c);
  const Polynomial qn = q * Rational(1 / c);
  const DetRep rp = hv2_quadratic(pn);
  const DetRep rq = hv2_quadratic(qn);
  const SymmetricEigen ep = eig_sym(rp.coeffs[0].re);
  const SymmetricEigen eq = eig_sym(rq.coeffs[0].re);
  require((ep.values - eq.values).cwiseAbs().maxCoeff() <= 1e-8 * (1.0 + ep.values.cwiseAbs().maxCoeff()),
          ErrorCode::kDomain, "the x coefficients of the two representations have different spectra");
  const Eigen::MatrixXd b = ep.vectors.transpose() * rp.coeffs[1].re * ep.vectors;
  const Eigen::MatrixXd cz = eq.vectors.transpose() * rq.coeffs[1].re * eq.vectors;
  // yz coefficient of det(I + x Lambda + y B + z C); every other coefficient
  // of the glued determinant is already fixed by p and q.
  double yz = b(0, 0) * cz(1, 1) + b(1, 1) * cz(0, 0) - 2.0 * b(0, 1) * cz(0, 1);
  const double scale = 1.0 + b.cwiseAbs().maxCoeff() * cz.cwiseAbs().maxCoeff();
  if (std::abs(yz) <= 1e-12 * scale) yz = 0.0;

  Polynomial r = embed_vars(pn, 3, std::vector<int>{0, 1}) + embed_vars(qn, 3, std::vector<int>{0, 2}) -
                 embed_vars(restrict_vars(pn, 1), 3, 0);
  r.add_term(Exponent{0, 1, 1}, exact_rational(yz));
  return r * c;
}

}  // namespace rz
