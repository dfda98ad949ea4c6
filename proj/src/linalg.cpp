#include "rz/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "rz/error.hpp"

namespace rz {

namespace {

void check_finite_square(const Eigen::MatrixXd& m) {
  require(m.rows() == m.cols(), ErrorCode::kDimensionMismatch, "expected a square matrix");
  require(m.allFinite(), ErrorCode::kDomain, "matrix has non-finite entries");
}

}  // namespace

SymmetricEigen eig_sym(const Eigen::MatrixXd& m) {
  check_finite_square(m);
  if (m.rows() == 0) return {Eigen::VectorXd(0), Eigen::MatrixXd(0, 0)};
  const Eigen::MatrixXd sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
  require(solver.info() == Eigen::Success, ErrorCode::kNumerical, "symmetric eigensolver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

const char* to_string(PsdVerdict v) {
  switch (v) {
    case PsdVerdict::kPsd: return "PSD";
    case PsdVerdict::kNotPsd: return "NOT_PSD";
    case PsdVerdict::kMarginal: return "MARGINAL";
  }
  return "?";
}

double min_eigenvalue(const Eigen::MatrixXd& m) {
  check_finite_square(m);
  if (m.rows() == 0) return 0.0;
  const Eigen::MatrixXd sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym, Eigen::EigenvaluesOnly);
  require(solver.info() == Eigen::Success, ErrorCode::kNumerical, "symmetric eigensolver did not converge");
  return solver.eigenvalues()(0);
}

PsdVerdict is_psd(const Eigen::MatrixXd& m, const PsdTolerance& tol) {
  if (m.rows() == 0) return PsdVerdict::kPsd;
  const double scale = 1.0 + m.norm();
  const double lambda = min_eigenvalue(m);
  if (lambda >= -tol.tau_rel * scale) return PsdVerdict::kPsd;
  if (lambda < -tol.kappa_rel * scale) return PsdVerdict::kNotPsd;
  return PsdVerdict::kMarginal;
}

Eigen::MatrixXcd HermitianMatrix::complex() const {
  Eigen::MatrixXcd c(re.rows(), re.cols());
  c.real() = re;
  c.imag() = im;
  return c;
}

void check_hermitian(const HermitianMatrix& h, double tol) {
  require(h.re.rows() == h.re.cols() && h.im.rows() == h.re.rows() && h.im.cols() == h.re.cols(),
          ErrorCode::kDimensionMismatch, "Hermitian parts must be square and of equal size");
  require(h.re.allFinite() && h.im.allFinite(), ErrorCode::kDomain, "Hermitian matrix has non-finite entries");
  const double scale = 1.0 + h.re.norm() + h.im.norm();
  require((h.re - h.re.transpose()).norm() <= tol * scale, ErrorCode::kDomain, "real part is not symmetric");
  require((h.im + h.im.transpose()).norm() <= tol * scale, ErrorCode::kDomain,
          "imaginary part is not skew-symmetric");
}

Eigen::MatrixXd real_embed(const HermitianMatrix& h) {
  check_hermitian(h);
  const Eigen::Index d = h.re.rows();
  Eigen::MatrixXd r(2 * d, 2 * d);
  r.topLeftCorner(d, d) = h.re;
  r.topRightCorner(d, d) = -h.im;
  r.bottomLeftCorner(d, d) = h.im;
  r.bottomRightCorner(d, d) = h.re;
  return r;
}

MonicReduction monic_normalize(const std::vector<Eigen::MatrixXd>& coeffs) {
  require(!coeffs.empty(), ErrorCode::kDimensionMismatch, "pencil has no constant coefficient");
  const Eigen::MatrixXd& a0 = coeffs.front();
  for (const auto& a : coeffs)
    require(a.rows() == a0.rows() && a.cols() == a0.cols(), ErrorCode::kDimensionMismatch,
            "pencil coefficients differ in size");
  require(is_psd(a0) == PsdVerdict::kPsd, ErrorCode::kDomain, "constant coefficient is not PSD");
  const int s = static_cast<int>(a0.rows());
  SymmetricEigen eig = eig_sym(a0);
  const double cut = 1e-10 * (1.0 + a0.norm());

  MonicReduction out;
  std::vector<int> positive;
  std::vector<int> zero;
  for (int i = s - 1; i >= 0; --i) (eig.values(i) > cut ? positive : zero).push_back(i);
  out.rank = static_cast<int>(positive.size());

  if (out.rank == s) {
    // symmetric inverse square root keeps Q = I for monic input
    Eigen::VectorXd inv_sqrt = eig.values.array().rsqrt();
    out.Q = eig.vectors * inv_sqrt.asDiagonal() * eig.vectors.transpose();
  } else {
    out.Q.resize(s, s);
    int col = 0;
    auto put = [&](int idx, double scale) {
      Eigen::VectorXd v = eig.vectors.col(idx);
      Eigen::Index arg;
      v.cwiseAbs().maxCoeff(&arg);
      if (v(arg) < 0) v = -v;
      out.Q.col(col++) = v * scale;
    };
    // keep the original coordinate order among the positive directions
    std::sort(positive.begin(), positive.end(), [&](int a, int b) {
      Eigen::Index ia, ib;
      eig.vectors.col(a).cwiseAbs().maxCoeff(&ia);
      eig.vectors.col(b).cwiseAbs().maxCoeff(&ib);
      return ia < ib;
    });
    for (int i : positive) put(i, 1.0 / std::sqrt(eig.values(i)));
    for (int i : zero) put(i, 1.0);
  }

  const int e = out.rank;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    const Eigen::MatrixXd c = out.Q.transpose() * coeffs[k] * out.Q;
    const double scale = 1.0 + coeffs[k].norm() * out.Q.squaredNorm();
    const double off = std::sqrt(std::max(0.0, c.squaredNorm() - c.topLeftCorner(e, e).squaredNorm()));
    require(off <= 1e-8 * scale, ErrorCode::kNumerical,
            "pencil does not reduce to the range of its constant term (origin not interior)");
    Eigen::MatrixXd block = c.topLeftCorner(e, e);
    out.reduced.push_back(0.5 * (block + block.transpose()));
  }
  return out;
}

Eigen::MatrixXd householder_to_first_axis(const Eigen::VectorXd& e) {
  const Eigen::Index n = e.size();
  const double norm = e.norm();
  require(n > 0 && norm > 0.0, ErrorCode::kDomain, "direction must be nonzero");
  // Reflect onto -sign(e_0)|e| u_1 to avoid cancellation, then fix the sign of row 0.
  const bool flip = e(0) > 0;
  Eigen::VectorXd v = e;
  v(0) += flip ? norm : -norm;
  const double vv = v.squaredNorm();
  Eigen::MatrixXd u = Eigen::MatrixXd::Identity(n, n);
  if (vv > 0.0) u -= (2.0 / vv) * v * v.transpose();
  if (flip) u.row(0) *= -1.0;
  return u;
}

ExactLdl exact_ldl(const RationalMatrix& a) {
  require(a.rows() == a.cols(), ErrorCode::kDimensionMismatch, "LDL needs a square matrix");
  require(a.is_symmetric(), ErrorCode::kDomain, "LDL needs a symmetric matrix");
  const int n = a.rows();
  RationalMatrix s = a;
  std::vector<int> remaining(n);
  for (int i = 0; i < n; ++i) remaining[i] = i;
  ExactLdl out;
  out.psd = true;
  while (!remaining.empty()) {
    int best = -1;
    double best_abs = 0.0;
    for (int idx : remaining) {
      const double v = std::abs(s(idx, idx).get_d());
      if (s(idx, idx) != 0 && (best < 0 || v > best_abs)) {
        best = idx;
        best_abs = v;
      }
    }
    if (best < 0) {
      // zero diagonal: PSD only if the whole remaining block vanishes
      for (int i : remaining)
        for (int j : remaining)
          if (s(i, j) != 0) out.psd = false;
      break;
    }
    const Rational pivot = s(best, best);
    if (pivot < 0) out.psd = false;
    out.pivots.push_back(best);
    remaining.erase(std::find(remaining.begin(), remaining.end(), best));
    for (int i : remaining) {
      if (s(i, best) == 0) continue;
      const Rational f = s(i, best) / pivot;
      for (int j : remaining) s(i, j) -= f * s(best, j);
    }
  }
  out.rank = static_cast<int>(out.pivots.size());
  return out;
}

RationalMatrix exact_inverse(const RationalMatrix& a) {
  require(a.rows() == a.cols(), ErrorCode::kDimensionMismatch, "inverse needs a square matrix");
  const int n = a.rows();
  RationalMatrix m = a;
  RationalMatrix inv = RationalMatrix::identity(n);
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (m(r, col) != 0) {
        pivot = r;
        break;
      }
    require(pivot >= 0, ErrorCode::kDomain, "matrix is singular");
    if (pivot != col)
      for (int j = 0; j < n; ++j) {
        std::swap(m(pivot, j), m(col, j));
        std::swap(inv(pivot, j), inv(col, j));
      }
    const Rational p = m(col, col);
    for (int j = 0; j < n; ++j) {
      m(col, j) /= p;
      inv(col, j) /= p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || m(r, col) == 0) continue;
      const Rational f = m(r, col);
      for (int j = 0; j < n; ++j) {
        m(r, j) -= f * m(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

std::vector<std::vector<Rational>> exact_nullspace(const RationalMatrix& a) {
  RationalMatrix m = a;
  const int rows = m.rows();
  const int cols = m.cols();
  std::vector<int> pivot_cols;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int pivot = -1;
    for (int i = r; i < rows; ++i)
      if (m(i, c) != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    for (int j = 0; j < cols; ++j) std::swap(m(pivot, j), m(r, j));
    const Rational p = m(r, c);
    for (int j = 0; j < cols; ++j) m(r, j) /= p;
    for (int i = 0; i < rows; ++i) {
      if (i == r || m(i, c) == 0) continue;
      const Rational f = m(i, c);
      for (int j = 0; j < cols; ++j) m(i, j) -= f * m(r, j);
    }
    pivot_cols.push_back(c);
    ++r;
  }
  std::vector<std::vector<Rational>> basis;
  for (int free = 0; free < cols; ++free) {
    if (std::find(pivot_cols.begin(), pivot_cols.end(), free) != pivot_cols.end()) continue;
    std::vector<Rational> v(cols, Rational(0));
    v[free] = 1;
    for (std::size_t k = 0; k < pivot_cols.size(); ++k) v[pivot_cols[k]] = -m(static_cast<int>(k), free);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace rz
