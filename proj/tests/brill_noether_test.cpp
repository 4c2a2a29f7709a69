#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "prym/brill_noether.hpp"
#include "prym/errors.hpp"

using namespace prym;

using Pairs = std::vector<std::pair<std::int64_t, std::int64_t>>;

namespace {

// Random valid assignment: each tail weight is uniform in [0, full], the
// spine side takes the complement.
WeightAssignment random_assignment(std::int64_t g, std::int64_t e, std::int64_t f, std::int64_t m,
                                   std::mt19937_64& rng) {
  WeightAssignment w;
  w.g = g;
  w.e = e;
  w.f = f;
  w.m = m;
  const std::int64_t full = w.full_weight();
  std::uniform_int_distribution<std::int64_t> pick(0, full);
  for (std::int64_t j = 0; j < g; ++j) {
    const auto a = pick(rng);
    w.alpha_weights.push_back(a);
    w.bar_alpha_weights.push_back(full - a);
  }
  const auto p = pick(rng);
  w.p_weights = {p, full - p};
  return w;
}

}  // namespace

TEST_CASE("rho") {
  CHECK(rho(9, 2, 8) == 0);
  CHECK(rho(4, 1, 2) == -2);
  for (int g = 0; g < 30; ++g) CHECK(rho(g, 0, 0) == 0);
}

TEST_CASE("secant dimensions") {
  for (int e = 1; e < 10; ++e) CHECK(secant_expected_dim(e, 0, 5) == e);
  for (int i = 2; i < 20; ++i) {
    CHECK(secant_expected_dim(i, 1, 2 * i - 1) == -1);
    CHECK(prym_secant_expected_dim(2 * i + 1, i, 1) == -1);
  }
  CHECK(secant_expected_dim(4, 2, 7) == -8);
  CHECK(prym_secant_expected_dim(9, 8, 3) == -1);
  CHECK(prym_secant_expected_dim(12, 7, 0) == 7);
  CHECK_THROWS_AS((void)secant_expected_dim(3, 3, 4), DomainError);
  CHECK_THROWS_AS((void)secant_expected_dim(3, -1, 4), DomainError);
  CHECK_THROWS_AS((void)prym_secant_expected_dim(5, 5, 1), DomainError);
  CHECK_THROWS_AS((void)prym_secant_expected_dim(5, 2, 2), DomainError);
}

TEST_CASE("identities for all legal inputs") {
  for (std::int64_t g = 3; g <= 60; ++g) {
    for (std::int64_t e = 1; e < g; ++e) {
      for (std::int64_t f = 0; f < e; ++f) {
        const auto p = prym_secant_expected_dim(g, e, f);
        CHECK(rho(g - 2, f, e) == p);
        CHECK(secant_expected_dim(e, f, g - 2) == p);
      }
    }
  }
}

TEST_CASE("divisorial pairs") {
  CHECK(divisorial_pairs(3) == Pairs{{1, 1}});
  CHECK(divisorial_pairs(4) == Pairs{{3, 2}});
  CHECK(divisorial_pairs(5) == Pairs{{2, 1}});
  CHECK(divisorial_pairs(9) == Pairs{{4, 1}, {8, 3}});
  // Frozen from a hand search of e - f(g - 1 - e + f) = -1.
  CHECK(divisorial_pairs(6) == Pairs{});
  CHECK(divisorial_pairs(7) == Pairs{{3, 1}, {5, 2}});
  CHECK(divisorial_pairs(8) == Pairs{});
  CHECK(divisorial_pairs(11) == Pairs{{5, 1}});
  CHECK(divisorial_pairs(16) == Pairs{{11, 2}, {15, 4}});
  CHECK_THROWS_AS((void)divisorial_pairs(2), DomainError);

  for (std::int64_t g = 3; g <= 80; ++g) {
    Pairs brute;
    for (std::int64_t f = 0; f < g; ++f) {
      for (std::int64_t e = f; e < g; ++e) {
        if (e >= 1 && e - f * (g - 1 - e + f) == -1) brute.emplace_back(e, f);
      }
    }
    CHECK(divisorial_pairs(g) == brute);
  }
}

TEST_CASE("ramification weight") {
  CHECK(ram_weight({2, 5, {0, 0, 0}}) == 0);
  CHECK(ram_weight({2, 5, {3, 3, 3}}) == 9);
  CHECK(ram_weight({2, 5, {0, 1, 3}}) == 4);
  CHECK_NOTHROW(RamificationSequence({2, 5, {0, 1, 3}}).validate());
  CHECK_THROWS_AS(RamificationSequence({2, 5, {1, 0, 3}}).validate(), DomainError);
  CHECK_THROWS_AS(RamificationSequence({2, 5, {0, 1, 4}}).validate(), DomainError);
  CHECK_THROWS_AS(RamificationSequence({2, 5, {0, 1}}).validate(), DomainError);
}

TEST_CASE("dimension bound examples") {
  std::mt19937_64 rng(7);
  CHECK(limit_series_dimension_bound(random_assignment(5, 2, 1, 2, rng)).total == -1);
  const auto zero = limit_series_dimension_bound(random_assignment(6, 3, 0, 2, rng));
  CHECK(zero.total == 2);
  const auto a = limit_series_dimension_bound(random_assignment(7, 4, 1, 4, rng));
  const auto b = limit_series_dimension_bound(random_assignment(7, 4, 1, 4, rng));
  CHECK(a.total == 1);
  CHECK(b.total == 1);
  CHECK(a.free_tails + a.support_tails + a.first_spine + a.second_spine == a.total);
}

TEST_CASE("dimension bound is invariant under random weights") {
  std::mt19937_64 rng(20261019);
  int samples = 0;
  for (std::int64_t g = 3; g <= 14; ++g) {
    for (std::int64_t e = 1; e < g; ++e) {
      for (std::int64_t f = 0; f <= e; f += 2) {
        for (std::int64_t m : {std::int64_t{0}, e / 2, e}) {
          const auto expect = m - f * (g - 1 - e + f);
          for (int t = 0; t < 100; ++t) {
            const auto w = random_assignment(g, e, f, m, rng);
            REQUIRE(limit_series_dimension_bound(w).total == expect);
          }
          ++samples;
        }
      }
    }
  }
  CHECK(samples > 200);
}

TEST_CASE("weight assignment validation") {
  std::mt19937_64 rng(1);
  auto w = random_assignment(5, 3, 1, 2, rng);
  CHECK_NOTHROW(w.validate());
  auto bad = w;
  bad.alpha_weights[0] += 1;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad = w;
  bad.p_weights.first += 1;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad = w;
  bad.m = 4;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad = w;
  bad.bar_alpha_weights.pop_back();
  CHECK_THROWS_AS((void)limit_series_dimension_bound(bad), DomainError);
  bad = w;
  bad.alpha_weights[1] = -1;
  bad.bar_alpha_weights[1] = w.full_weight() + 1;
  CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("Hurwitz slope") {
  CHECK(hurwitz_slope(23) == Rational(13, 2));
  CHECK(hurwitz_slope(1) == Rational(12));
  CHECK(hurwitz_slope(11) == Rational(7));
  CHECK_THROWS_AS((void)hurwitz_slope(0), DomainError);
}
