#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rz/amalgam.hpp"
#include "rz/geometry.hpp"
#include "support.hpp"

using namespace rz;
using namespace rz::testing;

namespace {

Polynomial P(const char* s, int n = -1) { return parse_polynomial(s, n); }

Polynomial keep_first(const Polynomial& r, int keep) { return restrict_vars(r, keep); }

// r(x, y, z) with the first block zeroed: r(0, z) for the disjoint case.
Polynomial keep_last(const Polynomial& r, int drop) {
  const int n = r.n_vars();
  Polynomial out(n - drop);
  for (const auto& [e, c] : r.terms()) {
    bool zero = true;
    for (int i = 0; i < drop; ++i) zero = zero && e[i] == 0;
    if (zero) out.add_term(Exponent(e.begin() + drop, e.end()), c);
  }
  return out;
}

Polynomial random_real_rooted(Rng& rng, int degree) {
  Polynomial f = Polynomial::constant(1, Rational(1));
  for (int k = 0; k < degree; ++k) f = f * (Polynomial::variable(1, 0) - Polynomial::constant(1, rng.small_rational(3, 2)));
  return f;
}

bool real_rooted(const Polynomial& f) {
  for (const Root& r : roots_with_multiplicity(univariate_coefficients(f)))
    if (!is_effectively_real(r.value, 1e-6)) return false;
  return true;
}

// r = random real zero quadratic in l + m + n variables; p and q are its two restrictions.
AmalgamProblem restricted_problem(Rng& rng, int l, int m, int n) {
  const Polynomial r = random_rz_quadratic(rng, l + m + n);
  AmalgamProblem prob;
  prob.shared = l;
  prob.p = restrict_to_first_block(r, l, m, n);
  prob.q = restrict_to_second_block(r, l, m, n);
  return prob;
}

void check_restrictions(const Polynomial& r, const AmalgamProblem& prob) {
  REQUIRE(restrict_to_first_block(r, prob.shared, prob.m(), prob.n()) == prob.p);
  REQUIRE(restrict_to_second_block(r, prob.shared, prob.m(), prob.n()) == prob.q);
}

}  // namespace

TEST_CASE("disjoint amalgamation examples") {
  CHECK(amalgamate_disjoint(P("1 - x1^2"), P("1 - x1^2"), 2) == P("1 - x1^2 - x2^2"));

  const Polynomial p = P("(1 + x1)*(1 + 2*x1)");
  const Polynomial q = P("(1 - x1)*(1 + x1)");
  const Polynomial r = amalgamate_disjoint(p, q, 2);
  CHECK(r == P("1 + 3*x1 + 2*x1^2 - x2^2"));
  CHECK(keep_first(r, 1) == p);
  CHECK(keep_last(r, 1) == q);
  Rng rng(81);
  CHECK(real_zero_probe(r, 50, 1e-7, rng).passed);

  const Polynomial cubic = P("(1 + x1)*(1 - x2)*(1 + x1 + x2)");
  CHECK(amalgamate_disjoint(cubic, P("1", 1), 3) == embed_vars(cubic, 3, 0));

  CHECK(amalgamate_disjoint(P("2 - 2*x1^2"), P("2 + 2*x1"), 2) == P("2 + 2*x2 - 2*x1^2"));

  CHECK_THROWS_AS(amalgamate_disjoint(P("1 - x1^3"), P("1 - x1"), 2), Error);
  CHECK_THROWS_AS(amalgamate_disjoint(P("1 - x1^2"), P("2 - x1"), 2), Error);
  CHECK_THROWS_AS(amalgamate_disjoint(P("x1^2"), P("x1"), 2), Error);
}

TEST_CASE("disjoint amalgamation on random real zero polynomials") {
  Rng rng(82);
  for (int t = 0; t < 40; ++t) {
    const int m = rng.uniform_int(1, 2), n = rng.uniform_int(1, 2);
    const int d = rng.uniform_int(1, 4);
    const Polynomial p = random_rz_polynomial(rng, m, d), q = random_rz_polynomial(rng, n, d);
    const Polynomial r = amalgamate_disjoint(p, q, d);
    REQUIRE(r.n_vars() == m + n);
    REQUIRE(keep_first(r, m) == p);
    REQUIRE(keep_last(r, m) == q);
    REQUIRE(r.degree() <= d);
    CHECK(real_zero_probe(r, 30, 1e-6, rng).passed);
  }
}

TEST_CASE("additive convolution") {
  CHECK(additive_convolution_1d(P("x1^2"), P("x1^2"), 2) == P("2*x1^2"));
  CHECK(additive_convolution_1d(P("x1"), P("x1^2"), 4).is_zero());
  CHECK_THROWS_AS(additive_convolution_1d(P("x1^3"), P("x1"), 2), Error);

  // k! l! / (k + l - d)! s^(k + l - d), or 0 when k + l < d
  for (int d = 0; d <= 6; ++d)
    for (int k = 0; k <= d; ++k)
      for (int l = 0; l <= d; ++l) {
        const Polynomial f = Polynomial::monomial({k}), g = Polynomial::monomial({l});
        Polynomial expected(1);
        if (k + l >= d)
          expected = Polynomial::monomial({k + l - d}, Rational(factorial(k) * factorial(l) / factorial(k + l - d)));
        REQUIRE(additive_convolution_1d(f, g, d) == expected);
      }

  CHECK(real_rooted(additive_convolution_1d(P("x1^2 - 1"), P("x1^2 - 1"), 2)));
  Rng rng(83);
  for (int t = 0; t < 50; ++t) {
    const int d = rng.uniform_int(1, 6);
    const Polynomial h = additive_convolution_1d(random_real_rooted(rng, rng.uniform_int(0, d)),
                                                 random_real_rooted(rng, rng.uniform_int(0, d)), d);
    if (h.is_zero() || h.degree() == 0) continue;
    REQUIRE(real_rooted(h));
  }
}

TEST_CASE("quadratic amalgamation examples") {
  AmalgamProblem disk{1, P("1 - x1^2 - x2^2"), P("1 - x1^2 - x2^2"), 2};
  CHECK(amalgamate_quadratic(disk) == P("1 - x1^2 - x2^2 - x3^2"));

  AmalgamProblem no_y{1, P("1 - x1^2", 1), P("1 - x1^2 + x1*x2 - x2^2"), 2};
  CHECK(amalgamate_quadratic(no_y) == no_y.q);
  AmalgamProblem no_z{1, P("1 - x1^2 + x1*x2 - x2^2"), P("1 - x1^2", 1), 2};
  CHECK(amalgamate_quadratic(no_z) == no_z.p);

  // no shared variables: a valid amalgam, not necessarily the disjoint one
  AmalgamProblem free{0, P("(1 + x1)*(1 + 2*x1)"), P("1 - x1^2"), 2};
  const Polynomial r = amalgamate_quadratic(free);
  check_restrictions(r, free);
  check_restrictions(amalgamate_disjoint(free.p, free.q, 2), free);
  CHECK(quadratic_rz_certificate(r).exact_psd);

  AmalgamProblem mismatch{1, P("1 - x1^2 - x2^2"), P("1 - 2*x1^2 - x2^2"), 2};
  CHECK_THROWS_AS(amalgamate_quadratic(mismatch), Error);
  AmalgamProblem not_rz{1, P("1 + x1^2 - x2^2"), P("1 + x1^2 - x2^2"), 2};
  CHECK_THROWS_AS(amalgamate_quadratic(not_rz), Error);
  AmalgamProblem cubic{1, P("1 - x1^3 - x2^2"), P("1 - x1^3 - x2^2"), 2};
  CHECK_THROWS_AS(amalgamate_quadratic(cubic), Error);
}

TEST_CASE("quadratic amalgamation on random restrictions") {
  Rng rng(84);
  for (int t = 0; t < 150; ++t) {
    const int l = rng.uniform_int(0, 3), m = rng.uniform_int(0, 2), n = rng.uniform_int(0, 2);
    if (l + m + n == 0) continue;
    const AmalgamProblem prob = restricted_problem(rng, l, m, n);
    const Polynomial r = amalgamate_quadratic(prob);
    check_restrictions(r, prob);
    REQUIRE((r.is_zero() || r.degree() <= 2));
    const QuadraticCertificate c = quadratic_rz_certificate(r);
    REQUIRE(c.exact_psd);
    REQUIRE(c.verdict != PsdVerdict::kNotPsd);
    if (t % 10 == 0) CHECK(real_zero_probe(r, 20, 1e-6, rng).passed);
  }
}

TEST_CASE("single shared variable gluing") {
  const Polynomial disk = amalgamate_deg2_onevar(P("1 - x1^2 - x2^2"), P("1 - x1^2 - x2^2"));
  CHECK(restrict_to_first_block(disk, 1, 1, 1) == P("1 - x1^2 - x2^2"));
  CHECK(restrict_to_second_block(disk, 1, 1, 1) == P("1 - x1^2 - x2^2"));
  Rng rng(85);
  CHECK(real_zero_probe(disk, 50, 1e-6, rng).passed);

  // p = q: the output is symmetric in y and z
  const Polynomial p = P("1 + x1 - x2 - x1^2 + 1/2*x1*x2 - x2^2");
  const Polynomial sym = amalgamate_deg2_onevar(p, p);
  CHECK(restrict_to_first_block(sym, 1, 1, 1) == restrict_to_second_block(sym, 1, 1, 1));

  const Polynomial lines = amalgamate_deg2_onevar(P("(1 + x1)*(1 + x2)"), P("(1 + x1)*(1 + x2)"));
  CHECK(restrict_to_first_block(lines, 1, 1, 1) == P("(1 + x1)*(1 + x2)"));
  CHECK(restrict_to_second_block(lines, 1, 1, 1) == P("(1 + x1)*(1 + x2)"));
  CHECK(real_zero_probe(lines, 50, 1e-6, rng).passed);

  CHECK_THROWS_AS(amalgamate_deg2_onevar(P("1 - x1^2 - x2^2"), P("1 - 2*x1^2 - x2^2")), Error);
  CHECK_THROWS_AS(amalgamate_deg2_onevar(P("1 - x1^2 - x2^2 - x3^2"), P("1 - x1^2 - x2^2")), Error);

  for (int t = 0; t < 80; ++t) {
    const AmalgamProblem prob = restricted_problem(rng, 1, 1, 1);
    const Polynomial r = amalgamate_deg2_onevar(prob.p, prob.q);
    check_restrictions(r, prob);
    REQUIRE(r.degree() <= 3);
    if (t % 8 == 0) CHECK(real_zero_probe(r, 20, 1e-6, rng).passed);
  }
}

TEST_CASE("problem validation") {
  CHECK_NOTHROW(check_amalgam_problem({1, P("1 - x1^2 - x2^2"), P("1 - x1^2 - x2^2"), 2}));
  CHECK_THROWS_AS(check_amalgam_problem({1, P("1 - x1^2 - x2^2"), P("1 - 2*x1^2 + x2"), 2}), Error);
  CHECK_THROWS_AS(check_amalgam_problem({3, P("1 - x1^2 - x2^2"), P("1 - x1^2 - x2^2"), 2}), Error);
  CHECK_THROWS_AS(check_amalgam_problem({1, P("x1 - x2^2"), P("x1 - x2^2"), 2}), Error);
  CHECK_THROWS_AS(check_amalgam_problem({1, P("1 - x1^2 - x2^3"), P("1 - x1^2"), 2}), Error);
}
