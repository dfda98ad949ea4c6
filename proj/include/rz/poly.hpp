#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <limits>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "rz/error.hpp"
#include "rz/matrix.hpp"
#include "rz/rational.hpp"

namespace rz {

/// Exponent vector of a monomial.
using Exponent = std::vector<int>;

inline constexpr int kMaxVars = 16;
inline constexpr int kMaxCutoff = 12;
/// Upper bound on the number of monomials in a tabulated series.
inline constexpr long kMaxTableMonomials = 200000;

int total_degree(const Exponent& e);

/// Graded lexicographic order with x1 > x2 > ... : lower total degree first,
/// then lexicographically larger exponent vectors first (1, x1, x2, x1^2, x1x2, ...).
struct GradedLexLess {
  bool operator()(const Exponent& a, const Exponent& b) const {
    const int da = total_degree(a);
    const int db = total_degree(b);
    if (da != db) return da < db;
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
  }
};

/// All monomials of exactly this degree, in graded-lex order.
std::vector<Exponent> monomials_of_degree(int n_vars, int degree);
/// All monomials of degree at most max_degree, in graded-lex order.
std::vector<Exponent> monomials_up_to(int n_vars, int max_degree);
long count_monomials_up_to(int n_vars, int max_degree);

/// |alpha|! / (alpha_1! ... alpha_n!)
Rational multinomial(const Exponent& e);

Exponent unit_exponent(int n_vars, int i);
Exponent add_exponents(const Exponent& a, const Exponent& b);

template <class T>
class BasicPolynomial {
 public:
  using Terms = std::map<Exponent, T, GradedLexLess>;
  /// Degree reported for the zero polynomial.
  static constexpr int kZeroDegree = std::numeric_limits<int>::min();

  BasicPolynomial() = default;
  explicit BasicPolynomial(int n_vars) : n_(n_vars) {
    require(n_vars >= 0 && n_vars <= kMaxVars, ErrorCode::kCapacity,
            "variable count " + std::to_string(n_vars) + " outside [0, " + std::to_string(kMaxVars) + "]");
  }

  static BasicPolynomial constant(int n_vars, const T& c) {
    BasicPolynomial p(n_vars);
    p.add_term(Exponent(n_vars, 0), c);
    return p;
  }
  static BasicPolynomial variable(int n_vars, int i, const T& c = T(1)) {
    BasicPolynomial p(n_vars);
    p.add_term(unit_exponent(n_vars, i), c);
    return p;
  }
  static BasicPolynomial monomial(const Exponent& e, const T& c = T(1)) {
    BasicPolynomial p(static_cast<int>(e.size()));
    p.add_term(e, c);
    return p;
  }

  int n_vars() const { return n_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  int degree() const { return terms_.empty() ? kZeroDegree : total_degree(terms_.rbegin()->first); }

  T coeff(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? T(0) : it->second;
  }
  T constant_term() const { return coeff(Exponent(n_, 0)); }

  void add_term(const Exponent& e, const T& c) {
    require(static_cast<int>(e.size()) == n_, ErrorCode::kDimensionMismatch, "exponent length mismatch");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  BasicPolynomial operator-() const {
    BasicPolynomial r(*this);
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
  }
  BasicPolynomial& operator+=(const BasicPolynomial& o) {
    check_vars(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  BasicPolynomial& operator-=(const BasicPolynomial& o) {
    check_vars(o);
    for (const auto& [e, c] : o.terms_) add_term(e, T(-c));
    return *this;
  }
  BasicPolynomial& operator*=(const T& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }
  BasicPolynomial& operator*=(const BasicPolynomial& o) { return *this = (*this) * o; }

  friend BasicPolynomial operator+(BasicPolynomial a, const BasicPolynomial& b) { return a += b; }
  friend BasicPolynomial operator-(BasicPolynomial a, const BasicPolynomial& b) { return a -= b; }
  friend BasicPolynomial operator*(BasicPolynomial a, const T& s) { return a *= s; }
  friend BasicPolynomial operator*(const T& s, BasicPolynomial a) { return a *= s; }
  friend BasicPolynomial operator*(const BasicPolynomial& a, const BasicPolynomial& b) {
    return multiply(a, b, std::numeric_limits<int>::max());
  }
  friend bool operator==(const BasicPolynomial& a, const BasicPolynomial& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const BasicPolynomial& a, const BasicPolynomial& b) { return !(a == b); }

  /// Product keeping only terms of total degree <= max_degree.
  static BasicPolynomial multiply(const BasicPolynomial& a, const BasicPolynomial& b, int max_degree) {
    a.check_vars(b);
    BasicPolynomial r(a.n_);
    Exponent e(a.n_);
    for (const auto& [ea, ca] : a.terms_) {
      const int da = total_degree(ea);
      for (const auto& [eb, cb] : b.terms_) {
        if (da + total_degree(eb) > max_degree) break;  // b's terms are sorted by degree
        for (int i = 0; i < a.n_; ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, T(ca * cb));
      }
    }
    return r;
  }

  T eval(const std::vector<T>& a) const {
    require(static_cast<int>(a.size()) == n_, ErrorCode::kDimensionMismatch, "evaluation point has wrong length");
    T sum(0);
    for (const auto& [e, c] : terms_) {
      T term(c);
      for (int i = 0; i < n_; ++i)
        for (int k = 0; k < e[i]; ++k) term *= a[i];
      sum += term;
    }
    return sum;
  }

  BasicPolynomial homogeneous_part(int k) const {
    BasicPolynomial r(n_);
    for (const auto& [e, c] : terms_)
      if (total_degree(e) == k) r.terms_.emplace(e, c);
    return r;
  }

  BasicPolynomial truncated(int d) const {
    BasicPolynomial r(n_);
    for (const auto& [e, c] : terms_) {
      if (total_degree(e) > d) break;
      r.terms_.emplace(e, c);
    }
    return r;
  }

  bool is_homogeneous() const {
    if (terms_.empty()) return true;
    return total_degree(terms_.begin()->first) == total_degree(terms_.rbegin()->first);
  }

 private:
  void check_vars(const BasicPolynomial& o) const {
    require(n_ == o.n_, ErrorCode::kDimensionMismatch,
            "polynomials live in " + std::to_string(n_) + " and " + std::to_string(o.n_) + " variables");
  }

  int n_ = 0;
  Terms terms_;
};

using Polynomial = BasicPolynomial<Rational>;
using RealPolynomial = BasicPolynomial<double>;

RealPolynomial to_real(const Polynomial& p);
Polynomial exact_polynomial(const RealPolynomial& p);

/// Floating point evaluation of an exact polynomial.
double eval(const Polynomial& p, const std::vector<double>& a);

/// Parses e.g. "1 - x1^2 - 3/2*x1*x2 + 0.5*x3". When n_vars < 0 the variable
/// count is the largest index that occurs.
Polynomial parse_polynomial(std::string_view text, int n_vars = -1);
std::string to_string(const Polynomial& p);
std::string to_string(const RealPolynomial& p);
std::string monomial_string(const Exponent& e);

/// Power series known up to and including total degree `cutoff`.
struct TruncatedSeries {
  Polynomial terms;
  int cutoff = 0;
};

void check_cutoff(int n_vars, int cutoff);

Polynomial truncate(const Polynomial& p, int d);

/// log p via the Euler-operator recurrence k*s_k = k*p_k - sum_{j<k} j*s_j*p_{k-j}.
template <class T>
BasicPolynomial<T> log_series_impl(const BasicPolynomial<T>& p, int cutoff) {
  require(p.constant_term() == T(1), ErrorCode::kDomain, "logarithm needs constant term 1");
  const int n = p.n_vars();
  std::vector<BasicPolynomial<T>> parts(cutoff + 1, BasicPolynomial<T>(n));
  for (const auto& [e, c] : p.terms()) {
    const int k = total_degree(e);
    if (k > cutoff) break;
    parts[k].add_term(e, c);
  }
  std::vector<BasicPolynomial<T>> s(cutoff + 1, BasicPolynomial<T>(n));
  BasicPolynomial<T> result(n);
  for (int k = 1; k <= cutoff; ++k) {
    BasicPolynomial<T> acc = parts[k] * T(k);
    for (int j = 1; j < k; ++j) {
      if (s[j].is_zero() || parts[k - j].is_zero()) continue;
      acc -= (s[j] * parts[k - j]) * T(j);
    }
    s[k] = acc * T(T(1) / T(k));
    result += s[k];
  }
  return result;
}

/// exp s via k*f_k = sum_{j=1..k} j*s_j*f_{k-j}.
template <class T>
BasicPolynomial<T> exp_series_impl(const BasicPolynomial<T>& s, int cutoff) {
  require(s.constant_term() == T(0), ErrorCode::kDomain, "exponential needs constant term 0");
  const int n = s.n_vars();
  std::vector<BasicPolynomial<T>> parts(cutoff + 1, BasicPolynomial<T>(n));
  for (const auto& [e, c] : s.terms()) {
    const int k = total_degree(e);
    if (k > cutoff) break;
    parts[k].add_term(e, c);
  }
  std::vector<BasicPolynomial<T>> f(cutoff + 1, BasicPolynomial<T>(n));
  f[0] = BasicPolynomial<T>::constant(n, T(1));
  BasicPolynomial<T> result = f[0];
  for (int k = 1; k <= cutoff; ++k) {
    BasicPolynomial<T> acc(n);
    for (int j = 1; j <= k; ++j) {
      if (parts[j].is_zero() || f[k - j].is_zero()) continue;
      acc += (parts[j] * f[k - j]) * T(j);
    }
    f[k] = acc * T(T(1) / T(k));
    result += f[k];
  }
  return result;
}

TruncatedSeries log_series(const Polynomial& p, int cutoff);
TruncatedSeries exp_series(const Polynomial& p, int cutoff);

/// Degree-d homogenization in n+1 variables with x0 prepended.
Polynomial homogenize(const Polynomial& p, int d);
/// Sets x0 = 1 and drops it.
Polynomial dehomogenize(const Polynomial& p);
RealPolynomial dehomogenize(const RealPolynomial& p);

/// Substitutes images[i] for x_i. All images share one variable count.
template <class T>
BasicPolynomial<T> substitute(const BasicPolynomial<T>& p, const std::vector<BasicPolynomial<T>>& images,
                              int out_vars) {
  require(static_cast<int>(images.size()) == p.n_vars(), ErrorCode::kDimensionMismatch,
          "substitution needs one image per variable");
  for (const auto& img : images)
    require(img.n_vars() == out_vars, ErrorCode::kDimensionMismatch, "substitution images disagree on variables");
  // powers[i][k] = images[i]^k, built lazily
  std::vector<std::vector<BasicPolynomial<T>>> powers(images.size());
  auto power = [&](int i, int k) -> const BasicPolynomial<T>& {
    auto& list = powers[i];
    if (list.empty()) list.push_back(BasicPolynomial<T>::constant(out_vars, T(1)));
    while (static_cast<int>(list.size()) <= k) list.push_back(list.back() * images[i]);
    return list[k];
  };
  BasicPolynomial<T> result(out_vars);
  for (const auto& [e, c] : p.terms()) {
    BasicPolynomial<T> term = BasicPolynomial<T>::constant(out_vars, c);
    for (int i = 0; i < p.n_vars(); ++i)
      if (e[i] > 0) term = term * power(i, e[i]);
    result += term;
  }
  return result;
}

/// p*(1 + a^T x, x) with p* the homogenization at degree deg p.
Polynomial a_transform(const Polynomial& p, const std::vector<Rational>& a);
/// p(x + a)
Polynomial shift(const Polynomial& p, const std::vector<Rational>& a);
/// p(U x); U must be orthogonal (exactly).
Polynomial rotate(const Polynomial& p, const RationalMatrix& U);
/// p(U x) for a floating orthogonal U (checked to 1e-10).
RealPolynomial rotate(const RealPolynomial& p, const Eigen::MatrixXd& U);
/// p(M x) with no orthogonality requirement.
Polynomial linear_substitute(const Polynomial& p, const RationalMatrix& M);
RealPolynomial linear_substitute(const RealPolynomial& p, const Eigen::MatrixXd& M);
/// p(x1, ..., xm, 0, ..., 0) as a polynomial in m variables.
Polynomial restrict_vars(const Polynomial& p, int m);
/// p(t a) as a polynomial in the single variable t.
Polynomial restrict_line(const Polynomial& p, const std::vector<Rational>& a);
/// p(a + t v) as ascending coefficients in t.
std::vector<Rational> line_coefficients(const Polynomial& p, const std::vector<Rational>& a,
                                        const std::vector<Rational>& v);
/// Coefficient list of a univariate polynomial, ascending.
std::vector<Rational> univariate_coefficients(const Polynomial& p);
Polynomial from_univariate(const std::vector<Rational>& coeffs);

/// Reinterprets p in a larger ring: variable i becomes variable offset + i.
Polynomial embed_vars(const Polynomial& p, int n_total, int offset);
/// Reinterprets p with variable i mapped to positions[i].
Polynomial embed_vars(const Polynomial& p, int n_total, const std::vector<int>& positions);
Polynomial derivative(const Polynomial& p, int var);

/// Max absolute coefficient difference, for floating comparisons.
double max_coeff_difference(const Polynomial& a, const Polynomial& b);
double max_abs_coeff(const Polynomial& p);

}  // namespace rz
