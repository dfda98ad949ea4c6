#include "rz/moments.hpp"

#include <functional>

namespace rz {

namespace {

// p(-x) / p(0)
template <class T>
BasicPolynomial<T> reflect_normalize(const BasicPolynomial<T>& p) {
  const T c0 = p.constant_term();
  require(!(c0 == T(0)), ErrorCode::kDomain, "moments need p(0) != 0");
  BasicPolynomial<T> r(p.n_vars());
  for (const auto& [e, c] : p.terms()) {
    T v = c / c0;
    if (total_degree(e) % 2 == 1) v = -v;
    r.add_term(e, v);
  }
  return r;
}

template <class T>
BasicMomentTable<T> table_from_series(const BasicPolynomial<T>& p, int virtual_degree, int cutoff) {
  require(cutoff >= 1, ErrorCode::kDomain, "moment cutoff must be at least 1");
  require(virtual_degree >= 0, ErrorCode::kDomain, "virtual degree must be nonnegative");
  check_cutoff(p.n_vars(), cutoff);
  const BasicPolynomial<T> s = -log_series_impl(reflect_normalize(p), cutoff);
  BasicMomentTable<T> table;
  table.n_vars = p.n_vars();
  table.virtual_degree = virtual_degree;
  table.cutoff = cutoff;
  for (const Exponent& e : monomials_up_to(p.n_vars(), cutoff)) {
    const int k = total_degree(e);
    if (k == 0) continue;
    // coeff = (1/|a|) multinomial(a) L(x^a)
    const T c = s.coeff(e);
    table.values.emplace(e, T(c * T(k) / scalar_from<T>(multinomial(e))));
  }
  return table;
}

}  // namespace

MomentTable moment_table(const Polynomial& p, int virtual_degree, int cutoff) {
  return table_from_series(p, virtual_degree, cutoff);
}

RealMomentTable moment_table(const RealPolynomial& p, int virtual_degree, int cutoff) {
  return table_from_series(p, virtual_degree, cutoff);
}

MomentTable cubic_moments_closed_form(const Polynomial& p_in, int virtual_degree) {
  const int n = p_in.n_vars();
  const Rational c0 = p_in.constant_term();
  require(c0 != 0, ErrorCode::kDomain, "moments need p(0) != 0");
  const Polynomial p = p_in * Rational(1 / c0);
  auto a1 = [&](int i) { return p.coeff(unit_exponent(n, i)); };
  auto a2 = [&](int i, int j) {
    Exponent e(n, 0);
    ++e[i];
    ++e[j];
    return p.coeff(e);
  };
  auto a3 = [&](int i, int j, int k) {
    Exponent e(n, 0);
    ++e[i];
    ++e[j];
    ++e[k];
    return p.coeff(e);
  };
  MomentTable t;
  t.n_vars = n;
  t.virtual_degree = virtual_degree;
  t.cutoff = 3;
  for (const Exponent& e : monomials_up_to(n, 3)) {
    std::vector<int> idx;
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < e[i]; ++k) idx.push_back(i);
    Rational v;
    if (idx.size() == 1) {
      v = a1(idx[0]);
    } else if (idx.size() == 2) {
      const int i = idx[0], j = idx[1];
      if (i == j) v = a1(i) * a1(i) - 2 * a2(i, i);
      else v = -a2(i, j) + a1(i) * a1(j);
    } else if (idx.size() == 3) {
      const int i = idx[0], j = idx[1], k = idx[2];
      if (i == j && j == k) {
        v = 3 * a3(i, i, i) - 3 * a1(i) * a2(i, i) + a1(i) * a1(i) * a1(i);
      } else if (i == j || j == k) {
        // x_s^2 x_t
        const int s = (i == j) ? i : j;
        const int u = (i == j) ? k : i;
        v = a3(s, s, u) - a1(s) * a2(s, u) - a1(u) * a2(s, s) + a1(s) * a1(s) * a1(u);
      } else {
        v = (a3(i, j, k) - a1(i) * a2(j, k) - a1(j) * a2(i, k) - a1(k) * a2(i, j) +
             2 * a1(i) * a1(j) * a1(k)) /
            2;
      }
    } else {
      continue;
    }
    t.values.emplace(e, v);
  }
  return t;
}

Rational moment_apply(const MomentTable& table, const Polynomial& q) { return table.apply(q); }

Polynomial dirac_polynomial(const DiracSupport& s) {
  Polynomial p = Polynomial::constant(s.n_vars, Rational(1));
  for (const auto& a : s.points) {
    require(static_cast<int>(a.size()) == s.n_vars, ErrorCode::kDimensionMismatch, "Dirac point has wrong length");
    Polynomial lin = Polynomial::constant(s.n_vars, Rational(1));
    for (int i = 0; i < s.n_vars; ++i) lin.add_term(unit_exponent(s.n_vars, i), a[i]);
    p = p * lin;
  }
  return p;
}

Rational dirac_moments(const DiracSupport& s, const Polynomial& q) {
  require(q.n_vars() == s.n_vars, ErrorCode::kDimensionMismatch, "polynomial and support disagree on variables");
  Rational sum(0);
  for (const auto& a : s.points) sum += q.eval(a);
  return sum;
}

DetRep DetRep::from_real(const std::vector<Eigen::MatrixXd>& coeffs) {
  DetRep r;
  r.size = coeffs.empty() ? 0 : static_cast<int>(coeffs.front().rows());
  for (const auto& c : coeffs) r.coeffs.push_back(HermitianMatrix::real(c));
  return r;
}

void check_detrep(const DetRep& r) {
  for (const auto& h : r.coeffs) {
    check_hermitian(h);
    require(h.size() == r.size, ErrorCode::kDimensionMismatch, "representation blocks differ in size");
  }
}

Eigen::MatrixXcd hurwitz_product(const std::vector<Eigen::MatrixXcd>& a, const Exponent& alpha) {
  require(static_cast<int>(alpha.size()) == static_cast<int>(a.size()), ErrorCode::kDimensionMismatch,
          "multidegree length differs from matrix count");
  const Eigen::Index d = a.empty() ? 0 : a.front().rows();
  for (const auto& m : a)
    require(m.rows() == d && m.cols() == d, ErrorCode::kDimensionMismatch, "Hurwitz factors differ in size");
  for (int k : alpha) require(k >= 0, ErrorCode::kDomain, "negative multidegree");
  // Words split by their first letter: hur_alpha = sum_i A_i hur_{alpha - e_i}.
  std::map<Exponent, Eigen::MatrixXcd> memo;
  std::function<const Eigen::MatrixXcd&(const Exponent&)> rec = [&](const Exponent& b) -> const Eigen::MatrixXcd& {
    auto it = memo.find(b);
    if (it != memo.end()) return it->second;
    Eigen::MatrixXcd value;
    if (total_degree(b) == 0) {
      value = Eigen::MatrixXcd::Identity(d, d);
    } else {
      value = Eigen::MatrixXcd::Zero(d, d);
      for (std::size_t i = 0; i < b.size(); ++i) {
        if (b[i] == 0) continue;
        Exponent c = b;
        --c[i];
        value += a[i] * rec(c);
      }
    }
    return memo.emplace(b, std::move(value)).first->second;
  };
  return rec(alpha);
}

HermitianMatrix hurwitz_product(const std::vector<HermitianMatrix>& a, const Exponent& alpha) {
  std::vector<Eigen::MatrixXcd> c;
  for (const auto& h : a) c.push_back(h.complex());
  const Eigen::MatrixXcd h = hurwitz_product(c, alpha);
  return {h.real(), h.imag()};
}

double detrep_moment(const DetRep& r, const Exponent& alpha) {
  check_detrep(r);
  const int k = total_degree(alpha);
  require(k <= kMaxHurwitzDegree, ErrorCode::kCapacity,
          "Hurwitz degree capped at " + std::to_string(kMaxHurwitzDegree));
  if (k == 0) return r.size;
  std::vector<Eigen::MatrixXcd> c;
  for (const auto& h : r.coeffs) c.push_back(h.complex());
  const std::complex<double> tr = hurwitz_product(c, alpha).trace();
  const double scale = 1.0 + std::abs(tr);
  require(std::abs(tr.imag()) <= 1e-10 * scale, ErrorCode::kNumerical, "Hurwitz trace is not real");
  return tr.real() / multinomial(alpha).get_d();
}

// ---------------------------------------------------------------------------
// Determinant expansion

namespace {

Rational real_part(const Rational& v) { return v; }
Rational real_part(const ComplexRational& v) {
  require(v.im == 0, ErrorCode::kNumerical, "Hermitian determinant has an imaginary part");
  return v.re;
}

template <class T>
Polynomial expand_determinant(const std::vector<DenseMatrix<T>>& coeffs) {
  require(!coeffs.empty(), ErrorCode::kDimensionMismatch, "pencil has no coefficients");
  const int n = static_cast<int>(coeffs.size()) - 1;
  const int s = coeffs.front().rows();
  for (const auto& c : coeffs)
    require(c.rows() == s && c.cols() == s, ErrorCode::kDimensionMismatch, "pencil coefficients differ in size");
  require(s <= 12 && n <= kMaxVars, ErrorCode::kCapacity, "determinant expansion too large");
  require(count_monomials_up_to(n, s) <= 20000, ErrorCode::kCapacity, "interpolation grid too large");

  // values on the simplex grid {alpha : |alpha| <= s}
  std::map<Exponent, Rational> table;
  for (const Exponent& alpha : monomials_up_to(n, s)) {
    DenseMatrix<T> m = coeffs[0];
    for (int i = 0; i < n; ++i)
      if (alpha[i] != 0) m += coeffs[i + 1] * T(Rational(alpha[i]));
    table.emplace(alpha, real_part(determinant(m)));
  }
  // Forward differences along each axis give the Newton coefficients. The
  // reverse graded-lex walk reaches alpha before alpha - e_i, as in-place
  // differencing requires.
  for (int i = 0; i < n; ++i) {
    for (int k = 1; k <= s; ++k) {
      for (auto it = table.rbegin(); it != table.rend(); ++it) {
        const Exponent& alpha = it->first;
        if (alpha[i] < k) continue;
        Exponent prev = alpha;
        --prev[i];
        it->second -= table.at(prev);
      }
    }
  }
  // Newton basis prod (x_i)_{beta_i} / beta_i! -> monomials, one axis at a time
  std::vector<std::vector<Rational>> stirling(s + 1, std::vector<Rational>(s + 1, Rational(0)));
  stirling[0][0] = 1;
  for (int k = 1; k <= s; ++k)
    for (int j = 1; j <= k; ++j) stirling[k][j] = stirling[k - 1][j - 1] - (k - 1) * stirling[k - 1][j];
  for (auto& [alpha, v] : table)
    for (int a : alpha) v /= factorial(a);
  for (int i = 0; i < n; ++i) {
    std::map<Exponent, Rational> next;
    for (const auto& [alpha, v] : table) {
      if (v == 0) continue;
      Exponent beta = alpha;
      for (int j = 0; j <= alpha[i]; ++j) {
        if (stirling[alpha[i]][j] == 0) continue;
        beta[i] = j;
        next[beta] += v * stirling[alpha[i]][j];
      }
    }
    table = std::move(next);
  }
  Polynomial p(n);
  for (const auto& [alpha, v] : table) p.add_term(alpha, v);
  return p;
}

}  // namespace

Polynomial determinant_polynomial(const std::vector<RationalMatrix>& coeffs) { return expand_determinant(coeffs); }

Polynomial determinant_polynomial(const std::vector<DenseMatrix<ComplexRational>>& coeffs) {
  return expand_determinant(coeffs);
}

Polynomial detrep_expand(const DetRep& r) {
  check_detrep(r);
  require(r.size <= kMaxExpandSize, ErrorCode::kCapacity,
          "representation size capped at " + std::to_string(kMaxExpandSize));
  require(r.n_vars() <= kMaxExpandVars, ErrorCode::kCapacity,
          "representation variable count capped at " + std::to_string(kMaxExpandVars));
  bool real = true;
  for (const auto& h : r.coeffs) real = real && h.is_real();
  if (real) {
    std::vector<RationalMatrix> coeffs{RationalMatrix::identity(r.size)};
    for (const auto& h : r.coeffs) coeffs.push_back(exact_matrix(0.5 * (h.re + h.re.transpose())));
    return expand_determinant(coeffs);
  }
  std::vector<DenseMatrix<ComplexRational>> coeffs{DenseMatrix<ComplexRational>::identity(r.size)};
  for (const auto& h : r.coeffs) {
    DenseMatrix<ComplexRational> m(r.size, r.size);
    for (int i = 0; i < r.size; ++i)
      for (int j = 0; j < r.size; ++j) {
        // enforce exact Hermitian symmetry from the upper triangle
        if (i <= j) m(i, j) = ComplexRational(exact_rational(h.re(i, j)), exact_rational(h.im(i, j)));
        else m(i, j) = ComplexRational(exact_rational(h.re(j, i)), exact_rational(-h.im(j, i)));
        if (i == j) m(i, j).im = 0;
      }
    coeffs.push_back(m);
  }
  return expand_determinant(coeffs);
}

}  // namespace rz
