#include "prym/brill_noether.hpp"

#include <algorithm>
#include <string>

#include "prym/errors.hpp"

namespace prym {

std::int64_t rho(std::int64_t g, std::int64_t r, std::int64_t d) { return g - (r + 1) * (g - d + r); }

std::int64_t secant_expected_dim(std::int64_t e, std::int64_t f, std::int64_t r) {
  if (f < 0 || f >= e) {
    throw DomainError("secant_expected_dim needs 0 <= f < e, got e=" + std::to_string(e) + " f=" + std::to_string(f));
  }
  return e - f * (r + 1 - e + f);
}

std::int64_t prym_secant_expected_dim(std::int64_t g, std::int64_t e, std::int64_t f) {
  if (f < 0 || f >= e || e >= g) {
    throw DomainError("prym_secant_expected_dim needs 0 <= f < e < g, got g=" + std::to_string(g) +
                      " e=" + std::to_string(e) + " f=" + std::to_string(f));
  }
  return e - f * (g - 1 - e + f);
}

std::vector<std::pair<std::int64_t, std::int64_t>> divisorial_pairs(std::int64_t g) {
  if (g < 3) throw DomainError("divisorial_pairs needs g >= 3, got " + std::to_string(g));
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  // f = e is allowed here: e(g - 2) = 1 gives the single extra pair (1, 1) at g = 3.
  for (std::int64_t f = 0; f <= g - 1; ++f) {
    for (std::int64_t e = std::max<std::int64_t>(f, 1); e <= g - 1; ++e) {
      if (e - f * (g - 1 - e + f) == -1) out.emplace_back(e, f);
    }
  }
  return out;
}

void RamificationSequence::validate() const {
  if (r < 0 || d < r) throw DomainError("ramification sequence needs 0 <= r <= d");
  if (static_cast<std::int64_t>(entries.size()) != r + 1) {
    throw DomainError("ramification sequence of a g^" + std::to_string(r) + " needs " + std::to_string(r + 1) +
                      " entries");
  }
  std::int64_t prev = 0;
  for (auto a : entries) {
    if (a < prev || a > d - r) {
      throw DomainError("ramification entries must satisfy 0 <= a_0 <= ... <= a_r <= d - r");
    }
    prev = a;
  }
}

std::int64_t ram_weight(const RamificationSequence& seq) {
  seq.validate();
  std::int64_t s = 0;
  for (auto a : seq.entries) s += a;
  return s;
}

void WeightAssignment::validate() const {
  if (f < 0 || e < f || m < 0 || m > e || m > g || g < 1) {
    throw DomainError("weight assignment needs 0 <= f <= e, 0 <= m <= min(e, g)");
  }
  const auto gs = static_cast<std::size_t>(g);
  if (alpha_weights.size() != gs || bar_alpha_weights.size() != gs) {
    throw DomainError("weight assignment needs " + std::to_string(g) + " weights on each side");
  }
  const std::int64_t full = full_weight();
  auto in_range = [full](std::int64_t x) { return x >= 0 && x <= full; };
  for (std::size_t j = 0; j < gs; ++j) {
    if (!in_range(alpha_weights[j]) || !in_range(bar_alpha_weights[j])) {
      throw DomainError("weight at x_" + std::to_string(j + 1) + " outside [0, " + std::to_string(full) + "]");
    }
    if (alpha_weights[j] + bar_alpha_weights[j] != full) {
      throw DomainError("weights at x_" + std::to_string(j + 1) + " do not add up to " + std::to_string(full));
    }
  }
  if (!in_range(p_weights.first) || !in_range(p_weights.second) || p_weights.first + p_weights.second != full) {
    throw DomainError("weights at the node p do not add up to " + std::to_string(full));
  }
}

DimensionBound limit_series_dimension_bound(const WeightAssignment& w) {
  w.validate();
  const std::int64_t grass = w.f * (w.e - w.f);
  DimensionBound b;
  for (std::int64_t j = 0; j < w.g; ++j) {
    const auto k = static_cast<std::size_t>(j);
    if (j < w.m) {
      b.support_tails += 1 + grass - w.alpha_weights[k];
    } else {
      b.free_tails += grass - w.alpha_weights[k];
    }
  }
  b.first_spine = w.full_weight() - w.p_weights.first;
  b.second_spine = w.full_weight() - w.p_weights.second;
  for (std::int64_t j = 0; j < w.g; ++j) {
    (j < w.m ? b.first_spine : b.second_spine) -= w.bar_alpha_weights[static_cast<std::size_t>(j)];
  }
  b.total = b.free_tails + b.support_tails + b.first_spine + b.second_spine;
  return b;
}

Rational hurwitz_slope(std::int64_t g) {
  if (g < 1) throw DomainError("hurwitz_slope needs g >= 1");
  return Rational(6) + Rational(12, g + 1);
}

}  // namespace prym
