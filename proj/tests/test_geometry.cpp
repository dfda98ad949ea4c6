#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rz/geometry.hpp"
#include "support.hpp"

using namespace rz;
using namespace rz::testing;

namespace {

Polynomial P(const char* s, int n = -1) { return parse_polynomial(s, n); }

Polynomial random_linear_product(Rng& rng, int n, int d) {
  Polynomial p = Polynomial::constant(n, Rational(1));
  for (int k = 0; k < d; ++k) {
    Polynomial lin = Polynomial::constant(n, Rational(1));
    for (int i = 0; i < n; ++i) lin.add_term(unit_exponent(n, i), rng.small_rational(2, 2));
    p = p * lin;
  }
  return p;
}

}  // namespace

TEST_CASE("real zero probe") {
  Rng rng(51);
  const RZVerdict disk = real_zero_probe(P("1 - x1^2 - x2^2"), 50, 1e-7, rng);
  CHECK(disk.passed);
  CHECK(disk.directions_tested == 50);
  CHECK_FALSE(disk.counterexample_root.has_value());

  const RZVerdict bad = real_zero_probe(P("1 + x1^2"), 10, 1e-7, rng);
  CHECK_FALSE(bad.passed);
  REQUIRE(bad.counterexample_root.has_value());
  CHECK(std::abs(bad.counterexample_root->imag()) == doctest::Approx(1.0));
  CHECK(std::abs(bad.counterexample_root->real()) < 1e-9);

  CHECK_FALSE(real_zero_probe(P("x1 + x1^2"), 10, 1e-7, rng).passed);
  CHECK_THROWS_AS(real_zero_probe(Polynomial(2), 10, 1e-7, rng), Error);

  for (int t = 0; t < 30; ++t) {
    const int n = rng.uniform_int(1, 4);
    CHECK(real_zero_probe(dirac_polynomial(random_dirac(rng, n, rng.uniform_int(1, 5))), 20, 1e-7, rng).passed);
    CHECK(real_zero_probe(random_rz_polynomial(rng, n, 6), 20, 1e-7, rng).passed);
  }
}

TEST_CASE("quadratic certificate") {
  const QuadraticCertificate disk = quadratic_rz_certificate(P("1 - x1^2 - x2^2"));
  CHECK(disk.discriminant == RationalMatrix::from_rows({{Rational(4), Rational(0)}, {Rational(0), Rational(4)}}));
  CHECK(disk.verdict == PsdVerdict::kPsd);
  CHECK(disk.exact_psd);

  const QuadraticCertificate bad = quadratic_rz_certificate(P("1 + x1^2"));
  CHECK(bad.discriminant(0, 0) == -4);
  CHECK(bad.verdict == PsdVerdict::kNotPsd);
  CHECK_FALSE(bad.exact_psd);

  const QuadraticCertificate edge = quadratic_rz_certificate(P("(1 + x1)^2"));
  CHECK(edge.discriminant(0, 0) == 0);
  CHECK(edge.verdict == PsdVerdict::kPsd);
  CHECK(edge.exact_psd);

  CHECK(quadratic_rz_certificate(P("2 - 2*x1^2", 1)).discriminant(0, 0) == 4);
  CHECK_THROWS_AS(quadratic_rz_certificate(P("1 + x1^3")), Error);

  // the certificate agrees with the probe on random quadratics
  Rng rng(52);
  for (int t = 0; t < 40; ++t) {
    const int n = rng.uniform_int(1, 4);
    Polynomial p = Polynomial::constant(n, Rational(1));
    for (const Exponent& e : monomials_up_to(n, 2))
      if (total_degree(e) > 0) p.add_term(e, rng.small_rational(2, 2));
    const QuadraticCertificate c = quadratic_rz_certificate(p);
    if (c.verdict == PsdVerdict::kMarginal) continue;
    if (!c.exact_psd) continue;  // a failing certificate may still pass a finite probe
    CHECK(real_zero_probe(p, 30, 1e-6, rng).passed);
  }
}

TEST_CASE("ray gauge of the rigidly convex set") {
  const Polynomial disk = P("1 - x1^2 - x2^2");
  const RayGaugeResult g1 = ray_gauge_C(disk, {1.0, 0.0});
  CHECK(g1.status == GaugeStatus::kExactRoot);
  CHECK(g1.gauge == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ray_gauge_C(disk, {3.0, 4.0}).gauge == doctest::Approx(0.2).epsilon(1e-12));
  const RayGaugeResult unb = ray_gauge_C(P("1 + x1"), {1.0});
  CHECK(unb.unbounded());
  CHECK(std::isinf(unb.gauge));
  CHECK(ray_gauge_C(P("(1 - x1)^3"), {1.0}).gauge == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(ray_gauge_C(P("1 - 3*x1 + 2*x1^2"), {1.0}).gauge == doctest::Approx(0.5).epsilon(1e-12));
  CHECK_THROWS_AS(ray_gauge_C(P("x1"), {1.0}), Error);
  CHECK_THROWS_AS(ray_gauge_C(disk, {1.0}), Error);

  CHECK(member_C(disk, {0.5, 0.0}));
  CHECK_FALSE(member_C(disk, {1.1, 0.0}));
  CHECK(member_C(disk, {0.0, 0.0}));
  CHECK(member_C(disk, {1.0, 0.0}));
}

TEST_CASE("ray gauge of spectrahedra") {
  const Pencil disk = build_pencil(P("1 - x1^2 - x2^2"));
  const RayGaugeResult g = ray_gauge_S(disk, {1.0, 0.0});
  CHECK(std::abs(g.gauge - 1.0) <= 1e-8);
  CHECK(ray_gauge_S(disk, {3.0, 4.0}).gauge == doctest::Approx(0.2).epsilon(1e-9));
  // bisection stops where the verdict turns NOT_PSD, past the MARGINAL band
  CHECK(ray_gauge_S_bisect(disk, {1.0, 0.0}).gauge == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(ray_gauge_S_bisect(disk, {1.0, 0.0}).gauge >= 1.0);
  CHECK(ray_gauge_S_bisect(disk, {1.0, 0.0}).status == GaugeStatus::kBisected);

  const Pencil zero = build_pencil(moment_table(Polynomial::constant(2, Rational(1)), 0, 3));
  CHECK(ray_gauge_S(zero, {0.6, 0.8}).unbounded());
  CHECK(ray_gauge_S_bisect(zero, {0.6, 0.8}).unbounded());

  const Pencil line = build_pencil(P("1 + x1"));
  CHECK(ray_gauge_S(line, {-1.0}).gauge == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(ray_gauge_S(line, {1.0}).unbounded());
  CHECK(ray_gauge_S_bisect(line, {-1.0}).gauge == doctest::Approx(1.0).epsilon(1e-5));

  Pencil bad = disk;
  bad.coeffs[0](0, 0) = -1;
  CHECK_THROWS_AS(ray_gauge_S(bad, {1.0, 0.0}), Error);

  CHECK(member_S(disk, {0.5, 0.0}) == PsdVerdict::kPsd);
  CHECK(member_S(disk, {1.1, 0.0}) == PsdVerdict::kNotPsd);
  CHECK(member_S(disk, {0.0, 0.0}) == PsdVerdict::kPsd);
}

TEST_CASE("exact and bisected spectrahedron gauges agree") {
  Rng rng(53);
  for (int t = 0; t < 30; ++t) {
    const int n = rng.uniform_int(1, 3);
    const Pencil m = build_pencil(random_rz_polynomial(rng, n, 4));
    const SpectrahedronGauge sg(m);
    for (int k = 0; k < 5; ++k) {
      const std::vector<double> a = random_direction(rng, n);
      const RayGaugeResult exact = sg.gauge(a), bis = sg.bisect(a);
      if (exact.unbounded() || bis.unbounded()) {
        // a huge but finite section can look unbounded to one route
        const double other = exact.unbounded() ? bis.gauge : exact.gauge;
        CHECK((std::isinf(other) || other > 1e5));
        continue;
      }
      CHECK(bis.gauge >= exact.gauge * (1 - 1e-9));
      std::vector<double> inside = a, outside = a;
      for (double& v : inside) v *= bis.gauge * (1 - 1e-8);
      for (double& v : outside) v *= bis.gauge * (1 + 1e-6);
      CHECK(member_S(m, inside) != PsdVerdict::kNotPsd);
      CHECK(member_S(m, outside) == PsdVerdict::kNotPsd);
    }
  }
}

TEST_CASE("relaxation contains the rigidly convex set") {
  Rng rng(54);
  for (int t = 0; t < 60; ++t) {
    const int n = rng.uniform_int(1, 4);
    const Polynomial p = random_rz_polynomial(rng, n, 5);
    const SpectrahedronGauge sg(build_pencil(p));
    for (int k = 0; k < 10; ++k) {
      const std::vector<double> a = random_direction(rng, n);
      const RayGaugeResult c = ray_gauge_C(p, a), s = sg.gauge(a);
      if (c.unbounded()) REQUIRE(s.unbounded());
      if (!s.unbounded()) REQUIRE(c.gauge <= s.gauge + 1e-7);
    }
  }
}

TEST_CASE("quadratics are exact") {
  Rng rng(55);
  for (int t = 0; t < 60; ++t) {
    const int n = rng.uniform_int(1, 6);
    const Polynomial p = random_rz_quadratic(rng, n);
    const SpectrahedronGauge sg(build_pencil(p));
    for (int k = 0; k < 20; ++k) {
      const std::vector<double> a = random_direction(rng, n);
      const RayGaugeResult c = ray_gauge_C(p, a), s = sg.gauge(a);
      REQUIRE(c.unbounded() == s.unbounded());
      if (!c.unbounded()) REQUIRE(std::abs(c.gauge - s.gauge) <= 1e-6);
    }
  }
}

TEST_CASE("hierarchy converges for products of linear forms") {
  Rng rng(56);
  for (int t = 0; t < 6; ++t) {
    const int n = 2;
    const int d = rng.uniform_int(2, 4);
    const Polynomial p = random_linear_product(rng, n, d);
    std::vector<SpectrahedronGauge> levels;
    for (int level = 1; level <= d - 1; ++level) levels.emplace_back(build_hierarchy_pencil(p, level));
    for (int k = 0; k < 8; ++k) {
      const std::vector<double> a = random_direction(rng, n);
      const RayGaugeResult c = ray_gauge_C(p, a);
      double prev = std::numeric_limits<double>::infinity();
      for (const SpectrahedronGauge& g : levels) {
        const double v = g.gauge(a).gauge;
        CHECK(v <= prev + 1e-7);
        prev = v;
      }
      const RayGaugeResult last = levels.back().gauge(a);
      REQUIRE(c.unbounded() == last.unbounded());
      if (!c.unbounded()) CHECK(std::abs(c.gauge - last.gauge) <= 1e-6 * (1 + c.gauge));
    }
  }
}

TEST_CASE("halfspace contains the rigidly convex set") {
  Rng rng(57);
  for (int t = 0; t < 30; ++t) {
    const int n = rng.uniform_int(1, 3);
    const Polynomial p = random_rz_polynomial(rng, n, 4);
    const HalfSpace h = halfspace(moment_table(p, p.degree(), 3));
    for (int k = 0; k < 20; ++k) {
      const std::vector<double> a = random_direction(rng, n);
      const RayGaugeResult c = ray_gauge_C(p, a);
      const double t_in = c.unbounded() ? 10.0 : c.gauge * rng.uniform();
      double lhs = to_double(h.c0);
      for (int i = 0; i < n; ++i) lhs += to_double(h.c[i]) * t_in * a[i];
      REQUIRE(lhs >= -1e-9);
    }
  }
}

TEST_CASE("hyperbolicity and eigenvalues in a direction") {
  Rng rng(58);
  const Polynomial detx = P("x1*x3 - x2^2");
  CHECK(hyperbolicity_probe(detx, {1.0, 0.0, 1.0}, 30, 1e-7, rng).passed);
  CHECK_FALSE(hyperbolicity_probe(P("x1^2 + x2^2"), {1.0, 0.0}, 30, 1e-7, rng).passed);
  CHECK_FALSE(hyperbolicity_probe(P("x1^2 + x2^2"), {0.6, 0.8}, 30, 1e-7, rng).passed);
  CHECK(hyperbolicity_probe(P("x1*x2"), {1.0, 1.0}, 30, 1e-7, rng).passed);
  CHECK_FALSE(hyperbolicity_probe(P("x1*x2"), {1.0, 0.0}, 30, 1e-7, rng).passed);
  CHECK_THROWS_AS(hyperbolicity_probe(P("1 + x1*x2"), {1.0, 1.0}, 30, 1e-7, rng), Error);

  const Polynomial xy = P("x1*x2");
  const std::vector<double> ev = eigenvalues_dir(xy, {1.0, 1.0}, {3.0, 5.0});
  REQUIRE(ev.size() == 2);
  CHECK(ev[0] == doctest::Approx(3.0));
  CHECK(ev[1] == doctest::Approx(5.0));
  CHECK(trace_dir(xy, {1.0, 1.0}, {3.0, 5.0}) == doctest::Approx(8.0));
  for (double v : eigenvalues_dir(xy, {1.0, 1.0}, {1.0, 1.0})) CHECK(v == doctest::Approx(1.0));
  for (double v : eigenvalues_dir(detx, {1.0, 0.0, 1.0}, {1.0, 0.0, 1.0})) CHECK(v == doctest::Approx(1.0));
  CHECK(trace_dir(detx, {1.0, 0.0, 1.0}, {1.0, 0.0, 1.0}) == doctest::Approx(2.0));
  for (double v : eigenvalues_dir(xy, {1.0, 1.0}, {0.0, 0.0})) CHECK(v == doctest::Approx(0.0));
  CHECK_THROWS_AS(eigenvalues_dir(P("x1^2 + x2^2"), {1.0, 0.0}, {0.0, 1.0}), Error);

  // trace is linear
  const Polynomial cubic = P("x1*x2*x3");
  for (int t = 0; t < 20; ++t) {
    std::vector<double> a(3), b(3), ab(3);
    const double s = rng.uniform(-2, 2);
    for (int i = 0; i < 3; ++i) {
      a[i] = rng.uniform(-2, 2);
      b[i] = rng.uniform(-2, 2);
      ab[i] = a[i] + s * b[i];
    }
    const std::vector<double> e{1.0, 2.0, 0.5};
    CHECK(trace_dir(cubic, e, ab) == doctest::Approx(trace_dir(cubic, e, a) + s * trace_dir(cubic, e, b)).epsilon(1e-8));
  }
}

TEST_CASE("cone membership") {
  const Polynomial detx = P("x1*x3 - x2^2");
  const std::vector<double> e{1.0, 0.0, 1.0};
  CHECK(cone_member(detx, e, {2.0, 1.0, 1.0}));
  CHECK(cone_member(detx, e, {1.0, 1.0, 1.0}));
  CHECK_FALSE(cone_member(detx, e, {1.0, 0.0, -1.0}));
  CHECK(cone_member(detx, e, e));

  Rng rng(59);
  for (int t = 0; t < 50; ++t) {
    const Eigen::MatrixXd m = random_symmetric(rng, 2);
    const bool psd = min_eigenvalue(m) >= 0.0;
    if (std::abs(min_eigenvalue(m)) < 1e-6) continue;
    CHECK(cone_member(detx, e, {m(0, 0), m(0, 1), m(1, 1)}) == psd);
  }
}

TEST_CASE("dehomogenization bridge") {
  Rng rng(60);
  for (int t = 0; t < 20; ++t) {
    const int n = rng.uniform_int(1, 3);
    const Polynomial q = random_rz_polynomial(rng, n, 4);
    const Polynomial p = homogenize(q, q.degree());
    std::vector<double> u(n + 1, 0.0);
    u[0] = 1.0;
    for (int k = 0; k < 10; ++k) {
      std::vector<double> a(n);
      for (double& v : a) v = rng.uniform(-2, 2);
      const RayGaugeResult g = ray_gauge_C(q, a);
      if (!g.unbounded() && std::abs(g.gauge - 1.0) < 1e-6) continue;
      std::vector<double> point{1.0};
      point.insert(point.end(), a.begin(), a.end());
      REQUIRE(cone_member(p, u, point) == member_C(q, a));
    }
  }
}

TEST_CASE("rigidly convex sets are shift invariant") {
  Rng rng(61);
  for (int t = 0; t < 20; ++t) {
    const int n = rng.uniform_int(1, 3);
    const Polynomial p = random_rz_polynomial(rng, n, 4);
    // an interior anchor: half way to the boundary along a rational direction
    const std::vector<Rational> dir = random_rational_vector(rng, n, 1, 2);
    const RayGaugeResult g = ray_gauge_C(p, to_double(dir));
    const Rational scale = g.unbounded() ? Rational(1) : exact_rational(std::floor(g.gauge * 32) / 64);
    std::vector<Rational> anchor;
    for (const Rational& v : dir) anchor.push_back(v * scale);
    if (p.eval(anchor) == 0) continue;
    const Polynomial shifted = shift(p, anchor);
    for (int k = 0; k < 10; ++k) {
      std::vector<double> x(n), y(n);
      for (int i = 0; i < n; ++i) {
        x[i] = rng.uniform(-2, 2);
        y[i] = x[i] - to_double(anchor[i]);
      }
      const RayGaugeResult gx = ray_gauge_C(p, x);
      if (!gx.unbounded() && std::abs(gx.gauge - 1.0) < 1e-6) continue;
      REQUIRE(member_C(p, x) == member_C(shifted, y));
    }
  }
}

TEST_CASE("family gauge is the minimum over anchors") {
  const Polynomial box = P("(1 - x1)*(1 + x1)*(1 - x2)*(1 + x2)");
  const std::vector<std::vector<Rational>> anchors{{Rational(0), Rational(0)},
                                                   {Rational(1, 2), Rational(1, 2)},
                                                   {Rational(-1, 2), Rational(1, 2)},
                                                   {Rational(1, 2), Rational(-1, 2)},
                                                   {Rational(-1, 2), Rational(-1, 2)}};
  const auto family = shifted_pencil_family(box, anchors);
  const FamilyGauge fg(family);
  const SpectrahedronGauge single(build_pencil(box));
  Rng rng(62);
  double before = 0, after = 0;
  for (int k = 0; k < 16; ++k) {
    const double th = 2 * M_PI * (k + 0.5) / 16;
    const std::vector<double> a{std::cos(th), std::sin(th)};
    const double c = ray_gauge_C(box, a).gauge;
    const double s = single.gauge(a).gauge, f = fg.gauge(a).gauge;
    CHECK(f <= s + 1e-9);
    CHECK(c <= f + 1e-7);
    before += s / c;
    after += f / c;
  }
  CHECK(after < before);
  CHECK_THROWS_AS(FamilyGauge({}), Error);
}
