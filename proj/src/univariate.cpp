#include "rz/univariate.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>

#include "rz/error.hpp"

namespace rz {

void trim(UniPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const UniPoly& p) {
  for (int k = static_cast<int>(p.size()) - 1; k >= 0; --k)
    if (p[k] != 0) return k;
  return -1;
}

UniPoly derivative(const UniPoly& p) {
  UniPoly d;
  for (std::size_t k = 1; k < p.size(); ++k) d.push_back(Rational(p[k] * static_cast<long>(k)));
  trim(d);
  return d;
}

namespace {

// remainder of a / b, b nonzero
UniPoly poly_rem(UniPoly a, const UniPoly& b) {
  trim(a);
  const int db = degree(b);
  const Rational lead = b[db];
  while (degree(a) >= db) {
    const int da = degree(a);
    const Rational f = a[da] / lead;
    for (int k = 0; k <= db; ++k) a[da - db + k] -= f * b[k];
    trim(a);
  }
  return a;
}

void make_monic(UniPoly& p) {
  trim(p);
  if (p.empty()) return;
  const Rational lead = p.back();
  for (Rational& c : p) c /= lead;
}

}  // namespace

UniPoly poly_gcd(UniPoly a, UniPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    UniPoly r = poly_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  make_monic(a);
  return a;
}

UniPoly exact_divide(const UniPoly& a_in, const UniPoly& b) {
  UniPoly a = a_in;
  trim(a);
  const int db = degree(b);
  require(db >= 0, ErrorCode::kDomain, "division by the zero polynomial");
  const int da = degree(a);
  if (da < db) {
    require(da < 0, ErrorCode::kNumerical, "inexact polynomial division");
    return {};
  }
  UniPoly q(da - db + 1, Rational(0));
  for (int k = da; k >= db; --k) {
    const Rational f = a[k] / b[db];
    q[k - db] = f;
    for (int j = 0; j <= db; ++j) a[k - db + j] -= f * b[j];
  }
  trim(a);
  require(a.empty(), ErrorCode::kNumerical, "inexact polynomial division");
  trim(q);
  return q;
}

std::vector<SquarefreeFactor> squarefree_decomposition(const UniPoly& p_in) {
  UniPoly p = p_in;
  trim(p);
  std::vector<SquarefreeFactor> out;
  if (degree(p) <= 0) return out;
  UniPoly dp = derivative(p);
  UniPoly a = poly_gcd(p, dp);
  UniPoly b = exact_divide(p, a);
  UniPoly c = exact_divide(dp, a);
  UniPoly d = c;
  {
    UniPoly db = derivative(b);
    d.resize(std::max(d.size(), db.size()), Rational(0));
    for (std::size_t k = 0; k < db.size(); ++k) d[k] -= db[k];
    trim(d);
  }
  int multiplicity = 1;
  while (degree(b) > 0) {
    UniPoly g = poly_gcd(b, d);
    if (degree(g) > 0) out.push_back({g, multiplicity});
    b = exact_divide(b, g);
    c = exact_divide(d, g);
    UniPoly db = derivative(b);
    d = c;
    d.resize(std::max(d.size(), db.size()), Rational(0));
    for (std::size_t k = 0; k < db.size(); ++k) d[k] -= db[k];
    trim(d);
    ++multiplicity;
  }
  return out;
}

namespace {

// Parlett-Reinsch balancing by powers of two.
void balance(Eigen::MatrixXd& a) {
  const Eigen::Index n = a.rows();
  const double radix = 2.0;
  bool converged = false;
  for (int sweep = 0; sweep < 100 && !converged; ++sweep) {
    converged = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double c = 0.0;
      double r = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double f = 1.0;
      const double s = c + r;
      double g = r / radix;
      while (c < g) {
        f *= radix;
        c *= radix * radix;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= radix * radix;
      }
      if ((c + r) / f < 0.95 * s) {
        converged = false;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
}

std::complex<double> horner(const std::vector<double>& c, std::complex<double> z,
                            std::complex<double>* deriv) {
  std::complex<double> v = 0.0;
  std::complex<double> dv = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    dv = dv * z + v;
    v = v * z + *it;
  }
  if (deriv) *deriv = dv;
  return v;
}

}  // namespace

std::vector<std::complex<double>> polynomial_roots(const std::vector<double>& coeffs_in) {
  std::vector<double> c = coeffs_in;
  while (!c.empty() && c.back() == 0.0) c.pop_back();
  require(!c.empty(), ErrorCode::kDomain, "the zero polynomial has no finite root set");
  // a leading coefficient below eps^2 of the rest only carries roots beyond 1/eps
  double scale = 0.0;
  for (double v : c) scale = std::max(scale, std::abs(v));
  const double negligible = std::numeric_limits<double>::epsilon() * std::numeric_limits<double>::epsilon() * scale;
  while (c.size() > 1 && std::abs(c.back()) < negligible) c.pop_back();
  std::vector<std::complex<double>> roots;
  // roots at zero
  std::size_t zeros = 0;
  while (zeros < c.size() && c[zeros] == 0.0) ++zeros;
  for (std::size_t k = 0; k < zeros; ++k) roots.emplace_back(0.0, 0.0);
  c.erase(c.begin(), c.begin() + static_cast<long>(zeros));
  const int n = static_cast<int>(c.size()) - 1;
  if (n <= 0) return roots;
  if (n == 1) {
    roots.emplace_back(-c[0] / c[1], 0.0);
    return roots;
  }
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -c[i] / c[n];
  balance(comp);
  Eigen::VectorXcd eig;
  Eigen::EigenSolver<Eigen::MatrixXd> solver(comp, false);
  if (solver.info() == Eigen::Success) {
    eig = solver.eigenvalues();
  } else {
    // the real QR iteration can stall on exactly repeated roots
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> complex_solver(comp.cast<std::complex<double>>(), false);
    require(complex_solver.info() == Eigen::Success, ErrorCode::kNumerical, "companion eigensolver did not converge");
    eig = complex_solver.eigenvalues();
  }
  for (int i = 0; i < n; ++i) {
    std::complex<double> z = eig(i);
    // Newton polish, kept only if it reduces the residual
    for (int it = 0; it < 3; ++it) {
      std::complex<double> d;
      const std::complex<double> v = horner(c, z, &d);
      if (std::abs(d) == 0.0) break;
      const std::complex<double> next = z - v / d;
      if (!(std::abs(horner(c, next, nullptr)) < std::abs(v))) break;
      z = next;
    }
    roots.push_back(z);
  }
  return roots;
}

std::vector<Root> roots_with_multiplicity(const UniPoly& p) {
  std::vector<Root> out;
  for (const SquarefreeFactor& f : squarefree_decomposition(p)) {
    std::vector<double> c;
    for (const Rational& v : f.factor) c.push_back(v.get_d());
    for (std::complex<double> z : polynomial_roots(c)) out.push_back({z, f.multiplicity});
  }
  return out;
}

bool is_effectively_real(std::complex<double> z, double tol) {
  return std::abs(z.imag()) <= tol * (1.0 + std::abs(z));
}

double evaluate(const UniPoly& p, double t) {
  double v = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * t + it->get_d();
  return v;
}

}  // namespace rz
