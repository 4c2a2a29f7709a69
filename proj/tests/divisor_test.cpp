#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "prym/divisor.hpp"
#include "prym/errors.hpp"

using namespace prym;

namespace {

PicVector vec(const TestCurveVector& t) { return {t.lambda, t.d0p, t.d0pp, t.d0ram}; }

PicVector pv(Rational a, Rational b, Rational c, Rational d) { return {a, b, c, d}; }

}  // namespace

TEST_CASE("nodal fibre count") {
  CHECK(euler_nodal_count(24, 12) == 60);
  CHECK(euler_nodal_count(24, 6) == 42);
  CHECK(euler_nodal_count(24, 0) == 24);
  CHECK_THROWS_AS((void)euler_nodal_count(24, 3), DomainError);
  CHECK_THROWS_AS((void)euler_nodal_count(24, -2), DomainError);
  // Blowing up C^2 points of a K3: e = 24 + C^2 = (2 - 2h) * 2 + #nodes.
  for (std::int64_t c2 = 0; c2 <= 400; c2 += 2) {
    const std::int64_t h = c2 / 2 + 1;
    CHECK(24 + c2 == 2 * (2 - 2 * h) + euler_nodal_count(24, c2));
  }
}

TEST_CASE("pencil examples") {
  CHECK(vec(standard_pencil_vector(7)) == pv(8, 44, 0, 8));
  CHECK(vec(nonstandard_pencil_vector(5)) == pv(5, 30, 0, 4));
  CHECK(vec(nonstandard_pencil_vector(3)) == pv(3, 18, 0, 4));
  CHECK(vec(standard_pencil_vector(3)) == pv(4, 20, 0, 8));
  CHECK(pullback_delta0(standard_pencil_vector(7)) == Rational(60));
  CHECK(pullback_delta0(nonstandard_pencil_vector(5)) == Rational(38));
  CHECK(standard_pencil_vector(9).to_json().at("d0p") == "56");
  CHECK_THROWS_AS((void)nonstandard_pencil_vector(6), DomainError);
  CHECK_THROWS_AS((void)nonstandard_pencil_vector(1), DomainError);
  CHECK_THROWS_AS((void)standard_pencil_vector(1), DomainError);
}

TEST_CASE("pencils over a range of genera") {
  for (std::int64_t g = 2; g <= 100; ++g) {
    const auto s = standard_pencil_vector(g);
    CHECK(s.lambda == Rational(g + 1));
    CHECK(s.d0p == Rational(euler_nodal_count(24, 2 * g - 2) - 16));
    CHECK(s.d0p == Rational(6 * g + 2));
    CHECK(s.d0pp == Rational(0));
    CHECK(s.d0ram == Rational(8));
    CHECK(pullback_delta0(s) == Rational(euler_nodal_count(24, 2 * g - 2)));
    if (g % 2 == 1 && g >= 3) {
      const auto n = nonstandard_pencil_vector(g);
      CHECK(vec(n) == pv(g, euler_nodal_count(24, 2 * g - 4) - 12, 0, 4));
      CHECK(n.d0p == Rational(6 * g));
      CHECK(pullback_delta0(n) == Rational(6 * g + 8));
    }
  }
}

TEST_CASE("intersection is bilinear") {
  CHECK(intersect(pv(4, Rational(-1, 2), Rational(-1, 2), Rational(-3, 4)), standard_pencil_vector(3)) == Rational(0));
  CHECK(intersect(pv(4, Rational(-1, 2), Rational(-1, 2), Rational(-3, 4)), nonstandard_pencil_vector(3)) ==
        Rational(0));
  CHECK(intersect(pv(0, 0, 0, 0), standard_pencil_vector(11)) == Rational(0));

  std::mt19937 rng(5);
  std::uniform_int_distribution<int> n(-9, 9), d(1, 6);
  auto r = [&] { return Rational(n(rng), d(rng)); };
  for (int t = 0; t < 200; ++t) {
    const auto a = pv(r(), r(), r(), r()), b = pv(r(), r(), r(), r());
    const Rational s = r();
    const PicVector sum = {s * a.lambda + b.lambda, s * a.d0p + b.d0p, s * a.d0pp + b.d0pp, s * a.d0ram + b.d0ram};
    TestCurveVector x{"x", 0, r(), r(), r(), r()}, y{"y", 0, r(), r(), r(), r()};
    CHECK(intersect(sum, x) == s * intersect(a, x) + intersect(b, x));
    const TestCurveVector xy{"xy", 0, s * x.lambda + y.lambda, s * x.d0p + y.d0p, s * x.d0pp + y.d0pp,
                             s * x.d0ram + y.d0ram};
    CHECK(intersect(a, xy) == s * intersect(a, x) + intersect(a, y));
  }
}

TEST_CASE("difference class") {
  const auto one = solve_difference_class(1);
  CHECK(one.normalized == pv(4, Rational(-1, 2), 0, Rational(-3, 4)));
  // i = 2 by hand: 7*6 - 32 - (5/4)*8 = 0 and 7*5 - 30 - (5/4)*4 = 0.
  const auto two = solve_difference_class(2);
  CHECK(two.normalized == pv(7, -1, 0, Rational(-5, 4)));
  CHECK(solve_difference_class(50).normalized == pv(151, -25, 0, Rational(-101, 4)));

  for (std::int64_t g = 3; g <= 101; g += 2) {
    const std::int64_t i = (g - 1) / 2;
    const auto dc = solve_difference_class(i);
    CHECK(dc.normalized.lambda == Rational(3 * i + 1));
    CHECK(dc.normalized.d0p == Rational(-i, 2));
    CHECK(dc.normalized.d0ram == Rational(-(2 * i + 1), 4));
    CHECK(dc.d0pp_annotation == Rational(-i, 2));
    REQUIRE(dc.residuals.size() == 2);
    for (const auto& res : dc.residuals) CHECK(res == Rational(0));
    for (const auto& p : dc.pencils) CHECK(intersect(dc.normalized, p) == Rational(0));
  }

  const auto j = two.to_json();
  CHECK(j.at("normalized_class").at("d0pp") == "undetermined");
  CHECK(j.at("normalized_class").at("d0ram") == "-5/4");
  CHECK(j.at("d0pp_annotation") == "-1");
  CHECK_THROWS_AS((void)solve_difference_class(0), DomainError);
}

TEST_CASE("srange coefficients") {
  CHECK(srange_coefficients(1) == std::pair{Rational(0), Rational(2)});
  CHECK(srange_coefficients(2) == std::pair{Rational(2), Rational(4)});
  CHECK(srange_coefficients(3) == std::pair{Rational(48, 5), Rational(54, 5)});
  for (std::int64_t i = 1; i <= 30; ++i) {
    const auto [a, b] = srange_coefficients(i);
    CHECK(a.sign() >= 0);
    CHECK(b.sign() > 0);
    if (i >= 2) CHECK(a.sign() > 0);
  }
  // Large i stays exact: C(200, 99) overflows any machine integer.
  const auto [a, b] = srange_coefficients(50);
  CHECK(a * Rational(199) / Rational(49) * Rational(binomial(100, 49)) ==
        b * Rational(199) / Rational(3) * Rational(binomial(100, 50)));
  CHECK_THROWS_AS((void)srange_coefficients(0), DomainError);
}
