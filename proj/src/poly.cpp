#include "rz/poly.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <regex>
#include <sstream>

namespace rz {

int total_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

namespace {

void monomials_rec(int n_vars, int var, int remaining, Exponent& cur, std::vector<Exponent>& out) {
  if (var == n_vars - 1) {
    cur[var] = remaining;
    out.push_back(cur);
    cur[var] = 0;
    return;
  }
  for (int k = remaining; k >= 0; --k) {
    cur[var] = k;
    monomials_rec(n_vars, var + 1, remaining - k, cur, out);
  }
  cur[var] = 0;
}

}  // namespace

std::vector<Exponent> monomials_of_degree(int n_vars, int degree) {
  std::vector<Exponent> out;
  if (degree < 0) return out;
  if (n_vars == 0) {
    if (degree == 0) out.emplace_back();
    return out;
  }
  Exponent cur(n_vars, 0);
  monomials_rec(n_vars, 0, degree, cur, out);
  return out;
}

std::vector<Exponent> monomials_up_to(int n_vars, int max_degree) {
  std::vector<Exponent> out;
  for (int k = 0; k <= max_degree; ++k) {
    std::vector<Exponent> part = monomials_of_degree(n_vars, k);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

long count_monomials_up_to(int n_vars, int max_degree) {
  if (max_degree < 0) return 0;
  // C(n + D, n), computed incrementally and saturated
  long double c = 1;
  for (int i = 1; i <= n_vars; ++i) c = c * (max_degree + i) / i;
  return c > 1e15L ? static_cast<long>(1e15) : std::lround(static_cast<double>(c));
}

Rational multinomial(const Exponent& e) {
  Rational r = factorial(total_degree(e));
  for (int k : e) r /= factorial(k);
  return r;
}

Exponent unit_exponent(int n_vars, int i) {
  require(i >= 0 && i < n_vars, ErrorCode::kDimensionMismatch, "variable index out of range");
  Exponent e(n_vars, 0);
  e[i] = 1;
  return e;
}

Exponent add_exponents(const Exponent& a, const Exponent& b) {
  require(a.size() == b.size(), ErrorCode::kDimensionMismatch, "exponent length mismatch");
  Exponent r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

RealPolynomial to_real(const Polynomial& p) {
  RealPolynomial r(p.n_vars());
  for (const auto& [e, c] : p.terms()) r.add_term(e, c.get_d());
  return r;
}

Polynomial exact_polynomial(const RealPolynomial& p) {
  Polynomial r(p.n_vars());
  for (const auto& [e, c] : p.terms()) r.add_term(e, exact_rational(c));
  return r;
}

double eval(const Polynomial& p, const std::vector<double>& a) {
  require(static_cast<int>(a.size()) == p.n_vars(), ErrorCode::kDimensionMismatch,
          "evaluation point has wrong length");
  double sum = 0.0;
  for (const auto& [e, c] : p.terms()) {
    double term = c.get_d();
    for (int i = 0; i < p.n_vars(); ++i)
      if (e[i]) term *= std::pow(a[i], e[i]);
    sum += term;
  }
  return sum;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class Parser {
 public:
  Parser(std::string_view text, int n_vars) : s_(text), n_(n_vars) {}

  Polynomial parse() {
    Polynomial p = expression();
    skip_ws();
    if (pos_ != s_.size()) error("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorCode::kParse, "polynomial parse error at offset " + std::to_string(pos_) + ": " + what);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip_ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  bool accept(char c) {
    if (peek(c)) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expression() {
    Polynomial acc(n_);
    bool first = true;
    while (true) {
      skip_ws();
      bool negative = false;
      if (accept('+')) {
      } else if (accept('-')) {
        negative = true;
      } else if (!first) {
        break;
      }
      Polynomial t = term();
      if (negative) acc -= t;
      else acc += t;
      first = false;
    }
    return acc;
  }

  Polynomial term() {
    Polynomial acc = factor();
    while (true) {
      if (accept('*')) {
        acc = acc * factor();
        continue;
      }
      if (accept('/')) {
        const Polynomial d = factor();
        if (d.is_zero() || d.degree() != 0) error("division only by nonzero constants");
        acc = acc * Polynomial::constant(n_, Rational(1 / d.constant_term()));
        continue;
      }
      // implicit multiplication: "2x1", "(1+x1)(1-x1)"
      skip_ws();
      if (pos_ < s_.size() && (s_[pos_] == 'x' || s_[pos_] == '(')) {
        acc = acc * factor();
        continue;
      }
      break;
    }
    return acc;
  }

  Polynomial factor() {
    Polynomial base = primary();
    if (accept('^')) {
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) error("expected exponent");
      if (pos_ - start > 3) error("exponent too large");
      int k = std::stoi(std::string(s_.substr(start, pos_ - start)));
      Polynomial r = Polynomial::constant(n_, Rational(1));
      for (int i = 0; i < k; ++i) r = r * base;
      return r;
    }
    return base;
  }

  Polynomial primary() {
    skip_ws();
    if (pos_ >= s_.size()) error("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial inner = expression();
      if (!accept(')')) error("expected ')'");
      return inner;
    }
    if (c == 'x') {
      ++pos_;
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) error("expected variable index after 'x'");
      int idx = std::stoi(std::string(s_.substr(start, pos_ - start)));
      if (idx < 1 || idx > n_) error("variable x" + std::to_string(idx) + " out of range");
      return Polynomial::variable(n_, idx - 1);
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
      if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
        std::size_t save = pos_;
        ++pos_;
        if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
        std::size_t digits = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (digits == pos_) pos_ = save;
      }
      std::size_t end = pos_;
      // a fraction "p/q" binds tighter than anything else
      std::size_t probe = pos_;
      while (probe < s_.size() && std::isspace(static_cast<unsigned char>(s_[probe]))) ++probe;
      if (probe < s_.size() && s_[probe] == '/') {
        ++probe;
        while (probe < s_.size() && std::isspace(static_cast<unsigned char>(s_[probe]))) ++probe;
        std::size_t dstart = probe;
        while (probe < s_.size() && std::isdigit(static_cast<unsigned char>(s_[probe]))) ++probe;
        if (dstart == probe) error("expected denominator");
        Rational num = parse_rational(s_.substr(start, end - start));
        Rational den = parse_rational(s_.substr(dstart, probe - dstart));
        if (den == 0) error("zero denominator");
        pos_ = probe;
        return Polynomial::constant(n_, Rational(num / den));
      }
      return Polynomial::constant(n_, parse_rational(s_.substr(start, end - start)));
    }
    error("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  int n_;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, int n_vars) {
  static const std::regex var_re("x([0-9]+)");
  const std::string str(text);
  int max_index = 0;
  for (auto it = std::sregex_iterator(str.begin(), str.end(), var_re); it != std::sregex_iterator(); ++it) {
    const std::string digits = (*it)[1].str();
    if (digits.size() > 3) fail(ErrorCode::kParse, "variable index too large");
    max_index = std::max(max_index, std::stoi(digits));
  }
  if (n_vars < 0) {
    n_vars = max_index;
  } else if (max_index > n_vars) {
    fail(ErrorCode::kParse, "variable x" + std::to_string(max_index) + " exceeds declared count " +
                                std::to_string(n_vars));
  }
  if (n_vars > kMaxVars)
    fail(ErrorCode::kCapacity, "at most " + std::to_string(kMaxVars) + " variables are supported");
  if (str.find_first_not_of(" \t\r\n") == std::string::npos) fail(ErrorCode::kParse, "empty polynomial");
  return Parser(str, n_vars).parse();
}

std::string monomial_string(const Exponent& e) {
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += 'x' + std::to_string(i + 1);
    if (e[i] > 1) out += '^' + std::to_string(e[i]);
  }
  return out.empty() ? "1" : out;
}

namespace {

template <class T, class Format>
std::string format_polynomial(const BasicPolynomial<T>& p, Format format_abs) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    const bool negative = c < 0;
    const T magnitude = negative ? T(-c) : c;
    if (first) out += negative ? "-" : "";
    else out += negative ? " - " : " + ";
    const bool is_constant = total_degree(e) == 0;
    if (is_constant) out += format_abs(magnitude);
    else if (magnitude == 1) out += monomial_string(e);
    else out += format_abs(magnitude) + "*" + monomial_string(e);
    first = false;
  }
  return out;
}

}  // namespace

std::string to_string(const Polynomial& p) {
  return format_polynomial(p, [](const Rational& c) { return c.get_str(); });
}

std::string to_string(const RealPolynomial& p) {
  return format_polynomial(p, [](double c) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", c);
    return std::string(buf);
  });
}

// ---------------------------------------------------------------------------
// Series

void check_cutoff(int n_vars, int cutoff) {
  require(cutoff >= 0, ErrorCode::kDomain, "cutoff must be nonnegative");
  require(cutoff <= kMaxCutoff, ErrorCode::kCapacity,
          "cutoff " + std::to_string(cutoff) + " exceeds " + std::to_string(kMaxCutoff));
  require(n_vars <= kMaxVars, ErrorCode::kCapacity, "too many variables");
  require(count_monomials_up_to(n_vars, cutoff) <= kMaxTableMonomials, ErrorCode::kCapacity,
          "series with " + std::to_string(n_vars) + " variables up to degree " + std::to_string(cutoff) +
              " exceeds the monomial budget");
}

Polynomial truncate(const Polynomial& p, int d) {
  require(d >= 0, ErrorCode::kDomain, "truncation degree must be nonnegative");
  return p.truncated(d);
}

TruncatedSeries log_series(const Polynomial& p, int cutoff) {
  check_cutoff(p.n_vars(), cutoff);
  return {log_series_impl(p, cutoff), cutoff};
}

TruncatedSeries exp_series(const Polynomial& p, int cutoff) {
  check_cutoff(p.n_vars(), cutoff);
  return {exp_series_impl(p, cutoff), cutoff};
}

// ---------------------------------------------------------------------------
// Transforms

Polynomial homogenize(const Polynomial& p, int d) {
  require(p.is_zero() || d >= p.degree(), ErrorCode::kDomain, "homogenization degree below deg p");
  require(p.n_vars() + 1 <= kMaxVars, ErrorCode::kCapacity, "homogenization exceeds variable limit");
  Polynomial r(p.n_vars() + 1);
  for (const auto& [e, c] : p.terms()) {
    Exponent h(e.size() + 1);
    h[0] = d - total_degree(e);
    std::copy(e.begin(), e.end(), h.begin() + 1);
    r.add_term(h, c);
  }
  return r;
}

template <class T>
static BasicPolynomial<T> dehomogenize_impl(const BasicPolynomial<T>& p) {
  require(p.n_vars() >= 1, ErrorCode::kDimensionMismatch, "dehomogenization needs a variable");
  BasicPolynomial<T> r(p.n_vars() - 1);
  for (const auto& [e, c] : p.terms()) r.add_term(Exponent(e.begin() + 1, e.end()), c);
  return r;
}

Polynomial dehomogenize(const Polynomial& p) { return dehomogenize_impl(p); }
RealPolynomial dehomogenize(const RealPolynomial& p) { return dehomogenize_impl(p); }

Polynomial a_transform(const Polynomial& p, const std::vector<Rational>& a) {
  const int n = p.n_vars();
  require(static_cast<int>(a.size()) == n, ErrorCode::kDimensionMismatch, "a-transform vector has wrong length");
  require(p.constant_term() != 0, ErrorCode::kDomain, "a-transform needs p(0) != 0");
  const Polynomial h = homogenize(p, p.degree());
  std::vector<Polynomial> images;
  Polynomial x0 = Polynomial::constant(n, Rational(1));
  for (int i = 0; i < n; ++i) x0 += Polynomial::variable(n, i, a[i]);
  images.push_back(x0);
  for (int i = 0; i < n; ++i) images.push_back(Polynomial::variable(n, i));
  return substitute(h, images, n);
}

Polynomial shift(const Polynomial& p, const std::vector<Rational>& a) {
  const int n = p.n_vars();
  require(static_cast<int>(a.size()) == n, ErrorCode::kDimensionMismatch, "shift vector has wrong length");
  std::vector<Polynomial> images;
  for (int i = 0; i < n; ++i) images.push_back(Polynomial::variable(n, i) + Polynomial::constant(n, a[i]));
  return substitute(p, images, n);
}

Polynomial linear_substitute(const Polynomial& p, const RationalMatrix& M) {
  const int n = p.n_vars();
  require(M.rows() == n, ErrorCode::kDimensionMismatch, "substitution matrix row count mismatch");
  const int m = M.cols();
  std::vector<Polynomial> images;
  for (int i = 0; i < n; ++i) {
    Polynomial img(m);
    for (int j = 0; j < m; ++j) img.add_term(unit_exponent(m, j), M(i, j));
    images.push_back(img);
  }
  return substitute(p, images, m);
}

RealPolynomial linear_substitute(const RealPolynomial& p, const Eigen::MatrixXd& M) {
  const int n = p.n_vars();
  require(M.rows() == n, ErrorCode::kDimensionMismatch, "substitution matrix row count mismatch");
  const int m = static_cast<int>(M.cols());
  std::vector<RealPolynomial> images;
  for (int i = 0; i < n; ++i) {
    RealPolynomial img(m);
    for (int j = 0; j < m; ++j) img.add_term(unit_exponent(m, j), M(i, j));
    images.push_back(img);
  }
  return substitute(p, images, m);
}

Polynomial rotate(const Polynomial& p, const RationalMatrix& U) {
  require(U.rows() == p.n_vars() && U.cols() == p.n_vars(), ErrorCode::kDimensionMismatch,
          "rotation matrix has wrong size");
  require(U.transpose() * U == RationalMatrix::identity(U.rows()), ErrorCode::kDomain,
          "rotation matrix is not orthogonal");
  return linear_substitute(p, U);
}

RealPolynomial rotate(const RealPolynomial& p, const Eigen::MatrixXd& U) {
  require(U.rows() == p.n_vars() && U.cols() == p.n_vars(), ErrorCode::kDimensionMismatch,
          "rotation matrix has wrong size");
  const double err = (U.transpose() * U - Eigen::MatrixXd::Identity(U.rows(), U.cols())).norm();
  require(err <= 1e-10, ErrorCode::kDomain, "rotation matrix is not orthogonal");
  return linear_substitute(p, U);
}

Polynomial restrict_vars(const Polynomial& p, int m) {
  require(m >= 0 && m <= p.n_vars(), ErrorCode::kDimensionMismatch, "restriction count out of range");
  Polynomial r(m);
  for (const auto& [e, c] : p.terms()) {
    bool keep = true;
    for (int i = m; i < p.n_vars(); ++i)
      if (e[i] != 0) keep = false;
    if (keep) r.add_term(Exponent(e.begin(), e.begin() + m), c);
  }
  return r;
}

namespace {

std::vector<Rational> uni_mul(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<Rational> r(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

}  // namespace

std::vector<Rational> line_coefficients(const Polynomial& p, const std::vector<Rational>& a,
                                        const std::vector<Rational>& v) {
  const int n = p.n_vars();
  require(static_cast<int>(a.size()) == n && static_cast<int>(v.size()) == n, ErrorCode::kDimensionMismatch,
          "line data has wrong length");
  const int deg = p.is_zero() ? 0 : p.degree();
  std::vector<std::vector<std::vector<Rational>>> powers(n);
  for (int i = 0; i < n; ++i) {
    powers[i].push_back({Rational(1)});
    for (int k = 1; k <= deg; ++k) powers[i].push_back(uni_mul(powers[i].back(), {a[i], v[i]}));
  }
  std::vector<Rational> out(deg + 1, Rational(0));
  for (const auto& [e, c] : p.terms()) {
    std::vector<Rational> term{c};
    for (int i = 0; i < n; ++i)
      if (e[i] > 0) term = uni_mul(term, powers[i][e[i]]);
    for (std::size_t k = 0; k < term.size(); ++k) out[k] += term[k];
  }
  while (out.size() > 1 && out.back() == 0) out.pop_back();
  return out;
}

Polynomial from_univariate(const std::vector<Rational>& coeffs) {
  Polynomial r(1);
  for (std::size_t k = 0; k < coeffs.size(); ++k) r.add_term({static_cast<int>(k)}, coeffs[k]);
  return r;
}

std::vector<Rational> univariate_coefficients(const Polynomial& p) {
  require(p.n_vars() == 1, ErrorCode::kDimensionMismatch, "expected a univariate polynomial");
  std::vector<Rational> out(p.is_zero() ? 1 : p.degree() + 1, Rational(0));
  for (const auto& [e, c] : p.terms()) out[e[0]] = c;
  return out;
}

Polynomial restrict_line(const Polynomial& p, const std::vector<Rational>& a) {
  return from_univariate(line_coefficients(p, std::vector<Rational>(p.n_vars(), Rational(0)), a));
}

Polynomial embed_vars(const Polynomial& p, int n_total, const std::vector<int>& positions) {
  require(static_cast<int>(positions.size()) == p.n_vars(), ErrorCode::kDimensionMismatch,
          "embedding needs one position per variable");
  Polynomial r(n_total);
  for (const auto& [e, c] : p.terms()) {
    Exponent f(n_total, 0);
    for (int i = 0; i < p.n_vars(); ++i) {
      require(positions[i] >= 0 && positions[i] < n_total, ErrorCode::kDimensionMismatch,
              "embedding position out of range");
      f[positions[i]] += e[i];
    }
    r.add_term(f, c);
  }
  return r;
}

Polynomial embed_vars(const Polynomial& p, int n_total, int offset) {
  std::vector<int> positions(p.n_vars());
  std::iota(positions.begin(), positions.end(), offset);
  return embed_vars(p, n_total, positions);
}

Polynomial derivative(const Polynomial& p, int var) {
  require(var >= 0 && var < p.n_vars(), ErrorCode::kDimensionMismatch, "derivative variable out of range");
  Polynomial r(p.n_vars());
  for (const auto& [e, c] : p.terms()) {
    if (e[var] == 0) continue;
    Exponent f = e;
    f[var] -= 1;
    r.add_term(f, Rational(c * e[var]));
  }
  return r;
}

double max_coeff_difference(const Polynomial& a, const Polynomial& b) {
  return max_abs_coeff(a - b);
}

double max_abs_coeff(const Polynomial& p) {
  double m = 0.0;
  for (const auto& [e, c] : p.terms()) m = std::max(m, std::abs(c.get_d()));
  return m;
}

}  // namespace rz
