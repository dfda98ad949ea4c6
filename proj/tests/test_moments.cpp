#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>

#include "rz/moments.hpp"
#include "support.hpp"

using namespace rz;
using namespace rz::testing;

namespace {

Polynomial P(const char* s, int n = -1) { return parse_polynomial(s, n); }

Rational L(const MomentTable& t, const char* mono, int n) { return t.apply(P(mono, n)); }

// Sum of the products over every word with letter i used alpha_i times.
Eigen::MatrixXcd hurwitz_by_words(const std::vector<Eigen::MatrixXcd>& a, Exponent alpha) {
  const int d = static_cast<int>(a.front().rows());
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(d, d);
  std::function<void(Eigen::MatrixXcd)> walk = [&](Eigen::MatrixXcd prefix) {
    bool done = true;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      if (alpha[i] == 0) continue;
      done = false;
      --alpha[i];
      walk(prefix * a[i]);
      ++alpha[i];
    }
    if (done) sum += prefix;
  };
  walk(Eigen::MatrixXcd::Identity(d, d));
  return sum;
}

Polynomial random_poly_unit(Rng& rng, int n, int degree) {
  Polynomial p = Polynomial::constant(n, Rational(1));
  for (const Exponent& e : monomials_up_to(n, degree))
    if (total_degree(e) > 0 && rng.uniform() < 0.5) p.add_term(e, rng.small_rational(2, 3));
  return p;
}

}  // namespace

TEST_CASE("moment_table examples") {
  const MomentTable one = moment_table(Polynomial::constant(2, Rational(1)), 0, 3);
  CHECK(one.value({0, 0}) == 0);
  for (const auto& [e, v] : one.values) CHECK(v == 0);

  const MomentTable two = moment_table(P("(1+x1)*(1+2*x1)"), 2, 3);
  CHECK(two.value({1}) == 3);
  CHECK(two.value({2}) == 5);
  CHECK(two.value({3}) == 9);

  const MomentTable disk = moment_table(P("1 - x1^2 - x2^2"), 2, 3);
  CHECK(disk.value({0, 0}) == 2);
  CHECK(disk.value({1, 0}) == 0);
  CHECK(disk.value({2, 0}) == 2);
  CHECK(disk.value({0, 2}) == 2);
  CHECK(disk.value({1, 1}) == 0);
  for (const Exponent& e : monomials_of_degree(2, 3)) CHECK(disk.value(e) == 0);

  CHECK_THROWS_AS(moment_table(P("x1 + x1^2"), 2, 3), Error);
  CHECK_THROWS_AS(disk.value({2, 2}), Error);
}

TEST_CASE("moment_table scales out p(0)") {
  CHECK(moment_table(P("3 + 3*x1"), 1, 4).values == moment_table(P("1 + x1"), 1, 4).values);
}

TEST_CASE("cubic closed form") {
  const MomentTable t = cubic_moments_closed_form(P("1 + 3*x1"), 1);
  CHECK(t.value({1}) == 3);
  CHECK(t.value({2}) == 9);
  CHECK(t.value({3}) == 27);
  const MomentTable z = cubic_moments_closed_form(Polynomial::constant(3, Rational(5)), 0);
  for (const auto& [e, v] : z.values) CHECK(v == 0);
  CHECK(cubic_moments_closed_form(P("1 - x1^2 - x2^2"), 2).values == moment_table(P("1 - x1^2 - x2^2"), 2, 3).values);

  Rng rng(31);
  for (int t = 0; t < 500; ++t) {
    const int n = rng.uniform_int(1, 5);
    const Polynomial p = random_poly_unit(rng, n, rng.uniform_int(1, n <= 3 ? 5 : 3));
    REQUIRE(cubic_moments_closed_form(p, 3).values == moment_table(p, 3, 3).values);
  }
}

TEST_CASE("moment_apply and dirac oracle") {
  const MomentTable two = moment_table(P("(1+x1)*(1+2*x1)"), 2, 3);
  CHECK(moment_apply(two, Polynomial::constant(1, Rational(1))) == 2);
  CHECK(moment_apply(two, P("(1+x1)^2")) == 13);
  CHECK(moment_apply(moment_table(P("1 - x1^2 - x2^2"), 2, 3), P("x1*x2")) == 0);
  CHECK_THROWS_AS(moment_apply(two, P("x1^4")), Error);

  CHECK(dirac_moments({1, {}}, P("x1")) == 0);
  CHECK(dirac_moments({1, {}}, P("1", 1)) == 0);
  CHECK(dirac_moments({1, {{Rational(1)}, {Rational(2)}}}, P("x1^3")) == 9);
  CHECK(dirac_moments({2, {{Rational(1), Rational(0)}, {Rational(0), Rational(1)}}}, P("x1*x2")) == 0);

  Rng rng(32);
  for (int t = 0; t < 60; ++t) {
    const int n = rng.uniform_int(1, 4);
    const DiracSupport s = random_dirac(rng, n, rng.uniform_int(1, 4));
    const MomentTable table = moment_table(dirac_polynomial(s), static_cast<int>(s.points.size()), 5);
    for (const Exponent& e : monomials_up_to(n, 5)) {
      // independent oracle: sum of a_i^alpha
      Rational expected(0);
      for (const auto& a : s.points) {
        Rational term(1);
        for (int i = 0; i < n; ++i)
          for (int k = 0; k < e[i]; ++k) term *= a[i];
        expected += term;
      }
      REQUIRE(table.value(e) == expected);
    }
  }
}

TEST_CASE("product rule") {
  Rng rng(33);
  for (int t = 0; t < 40; ++t) {
    const int n = rng.uniform_int(1, 3);
    const Polynomial p = random_poly_unit(rng, n, 2), q = random_poly_unit(rng, n, 3);
    const MomentTable a = moment_table(p, 2, 4), b = moment_table(q, 3, 4), ab = moment_table(p * q, 5, 4);
    CHECK(ab.virtual_degree == a.virtual_degree + b.virtual_degree);
    for (const auto& [e, v] : ab.values) REQUIRE(v == a.values.at(e) + b.values.at(e));
  }
}

TEST_CASE("rotation invariance") {
  Rng rng(34);
  for (int t = 0; t < 30; ++t) {
    const int n = rng.uniform_int(2, 4);
    const Polynomial p = random_poly_unit(rng, n, 3);
    const RationalMatrix u = random_rational_orthogonal(n, rng);
    const MomentTable lp = moment_table(p, 3, 3), lpu = moment_table(rotate(p, u), 3, 3);
    for (const Exponent& e : monomials_up_to(n, 3)) {
      const Polynomial q = Polynomial::monomial(e);
      REQUIRE(lpu.apply(rotate(q, u)) == lp.apply(q));
    }
  }
}

TEST_CASE("a-transform and restriction") {
  Rng rng(35);
  for (int t = 0; t < 40; ++t) {
    const int n = rng.uniform_int(1, 3);
    const Polynomial p = random_poly_unit(rng, n, 3);
    const int d = p.degree();
    const std::vector<Rational> a = random_rational_vector(rng, n);
    const MomentTable lp = moment_table(p, d, 4), lpa = moment_table(a_transform(p, a), d, 4);
    for (const Exponent& e : monomials_up_to(n, 4)) {
      const Polynomial f = Polynomial::monomial(e);
      REQUIRE(lpa.apply(f) == lp.apply(shift(f, a)));
    }
  }
  for (int t = 0; t < 20; ++t) {
    const int n = rng.uniform_int(2, 4);
    const int m = rng.uniform_int(1, n - 1);
    const Polynomial p = random_poly_unit(rng, n, 3);
    const MomentTable full = moment_table(p, 3, 4), sub = moment_table(restrict_vars(p, m), 3, 4);
    for (const auto& [e, v] : sub.values) {
      Exponent big(n, 0);
      std::copy(e.begin(), e.end(), big.begin());
      REQUIRE(full.value(big) == v);
    }
  }
}

TEST_CASE("hurwitz products") {
  Rng rng(36);
  std::vector<Eigen::MatrixXcd> a;
  for (int i = 0; i < 3; ++i) a.push_back(random_hermitian(rng, 2).complex());
  CHECK(hurwitz_product(a, {1, 0, 0}).isApprox(a[0]));
  CHECK(hurwitz_product(a, {0, 0, 0}).isApprox(Eigen::MatrixXcd::Identity(2, 2)));
  CHECK(hurwitz_product(a, {1, 1, 0}).isApprox(a[0] * a[1] + a[1] * a[0]));
  CHECK(hurwitz_product(a, {2, 1, 0}).isApprox(a[0] * a[0] * a[1] + a[0] * a[1] * a[0] + a[1] * a[0] * a[0]));
  for (const Exponent& e : monomials_up_to(3, 5))
    REQUIRE((hurwitz_product(a, e) - hurwitz_by_words(a, e)).norm() <= 1e-9 * (1 + hurwitz_by_words(a, e).norm()));
}

TEST_CASE("detrep moments and expansion") {
  Rng rng(37);
  std::vector<HermitianMatrix> c;
  for (int i = 0; i < 2; ++i) c.push_back(random_hermitian(rng, 3));
  const DetRep r{3, c};
  CHECK(detrep_moment(r, {1, 0}) == doctest::Approx(c[0].re.trace()));
  CHECK(detrep_moment(r, {1, 1}) == doctest::Approx((c[0].complex() * c[1].complex()).trace().real()));

  Eigen::MatrixXd a1(2, 2), a2(2, 2);
  a1 << -1, 0, 0, 1;
  a2 << 0, 1, 1, 0;
  CHECK(detrep_expand(DetRep::from_real({a1, a2})) == P("1 - x1^2 - x2^2"));
  CHECK(detrep_expand(DetRep::from_real({Eigen::MatrixXd::Zero(3, 3)})) == Polynomial::constant(1, Rational(1)));

  // diagonal coefficients: the product of linear forms and the Dirac oracle
  const Eigen::MatrixXd d1 = Eigen::Vector3d(1, -2, 0.5).asDiagonal(), d2 = Eigen::Vector3d(0, 3, -1).asDiagonal();
  const DetRep diag = DetRep::from_real({d1, d2});
  CHECK(detrep_expand(diag) == P("(1 + x1)*(1 - 2*x1 + 3*x2)*(1 + 1/2*x1 - x2)"));
  const DiracSupport s{2, {{Rational(1), Rational(0)}, {Rational(-2), Rational(3)}, {Rational(1, 2), Rational(-1)}}};
  for (const Exponent& e : monomials_up_to(2, 4))
    if (total_degree(e) > 0)
      CHECK(detrep_moment(diag, e) == doctest::Approx(to_double(dirac_moments(s, Polynomial::monomial(e)))));

  CHECK_THROWS_AS(detrep_moment(r, {5, 2}), Error);
  CHECK_THROWS_AS(detrep_expand(DetRep::from_real({Eigen::MatrixXd::Zero(9, 9)})), Error);
}

TEST_CASE("hermitian expansion is real and matches the trace moments") {
  Rng rng(38);
  for (int t = 0; t < 20; ++t) {
    const int d = rng.uniform_int(1, 3), n = rng.uniform_int(1, 3);
    std::vector<HermitianMatrix> c;
    for (int i = 0; i < n; ++i) c.push_back(random_hermitian(rng, d));
    const DetRep r{d, c};
    const MomentTable table = moment_table(detrep_expand(r), d, 3);
    for (const auto& [e, v] : table.values) REQUIRE(to_double(v) == doctest::Approx(detrep_moment(r, e)).epsilon(1e-9));
  }
}
