#pragma once

#include "rz/poly.hpp"

namespace rz {

/// r(y, z) of degree <= d with r(y, 0) = p and r(0, z) = q, real zero when
/// p and q are. Variables of r are those of p followed by those of q.
/// Requires p(0) = q(0) != 0.
Polynomial amalgamate_disjoint(const Polynomial& p, const Polynomial& q, int d);

/// h(s) = sum_{i + j = d} f^(i)(s) g^(j)(0): the polynomial in x + y obtained
/// from sum_{i + j = d} d^i/dx^i d^j/dy^j f(x) g(y). Univariate in and out.
Polynomial additive_convolution_1d(const Polynomial& f, const Polynomial& g, int d);

/// p in (x, y) and q in (x, z) with the first `shared` variables in common.
struct AmalgamProblem {
  int shared = 0;
  Polynomial p;
  Polynomial q;
  int d = 2;

  int m() const { return p.n_vars() - shared; }
  int n() const { return q.n_vars() - shared; }
};

/// Checks p(x, 0) = q(x, 0), p(0) != 0 and the degree bound.
void check_amalgam_problem(const AmalgamProblem& prob);

/// Quadratic case: the discriminant of r is the PSD completion of the
/// discriminants of p and q. Variables of r are (x, y, z).
Polynomial amalgamate_quadratic(const AmalgamProblem& prob);

/// p(x, y) and q(x, z) quadratics: glue 2x2 representations with a common
/// diagonal x coefficient. Variables of r are (x, y, z).
Polynomial amalgamate_deg2_onevar(const Polynomial& p, const Polynomial& q);

/// r(x, y, 0) and r(x, 0, z) for r in the variables (x, y, z).
Polynomial restrict_to_first_block(const Polynomial& r, int shared, int m, int n);
Polynomial restrict_to_second_block(const Polynomial& r, int shared, int m, int n);

}  // namespace rz
