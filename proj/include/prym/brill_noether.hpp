#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "prym/rational.hpp"

namespace prym {

/// rho(g, r, d) = g - (r + 1)(g - d + r).
std::int64_t rho(std::int64_t g, std::int64_t r, std::int64_t d);

/// Expected dimension e - f(r + 1 - e + f) of the secant locus V_e^{e-f}
/// of an r-dimensional linear system. Needs 0 <= f < e (DomainError).
std::int64_t secant_expected_dim(std::int64_t e, std::int64_t f, std::int64_t r);

/// e - f(g - 1 - e + f), the same count for the Prym-canonical system
/// (r = g - 2). Needs 0 <= f < e < g (DomainError).
std::int64_t prym_secant_expected_dim(std::int64_t g, std::int64_t e, std::int64_t f);

/// Every (e, f) with 0 <= f <= e <= g - 1 and e - f(g - 1 - e + f) = -1,
/// sorted by f, then e. Needs g >= 3 (DomainError).
///
/// The top case e = g - 1 gives g = f^2 exactly; putting e = g instead would
/// give g = f^2 - f - 1, so the search stops at g - 1.
std::vector<std::pair<std::int64_t, std::int64_t>> divisorial_pairs(std::int64_t g);

/// Ramification sequence 0 <= alpha_0 <= ... <= alpha_r <= d - r of a g^r_d.
struct RamificationSequence {
  std::int64_t r = 0;
  std::int64_t d = 0;
  std::vector<std::int64_t> entries;

  /// Throws DomainError when the entries break the ordering or range.
  void validate() const;
};

/// Sum of the entries.
std::int64_t ram_weight(const RamificationSequence& seq);

/// Ramification weights on a flag curve R1 u_p R2 with elliptic tails E_1..E_g;
/// tails 1..m hang off R1 and m+1..g off R2.
struct WeightAssignment {
  std::int64_t g = 0;
  std::int64_t e = 0;
  std::int64_t f = 0;
  std::int64_t m = 0;
  std::vector<std::int64_t> alpha_weights;      // wt(alpha^j) on the tail E_j
  std::vector<std::int64_t> bar_alpha_weights;  // wt at x_j on the spine
  std::pair<std::int64_t, std::int64_t> p_weights;

  /// f(e - f + 1), the weight each compatible pair must add up to.
  [[nodiscard]] std::int64_t full_weight() const { return f * (e - f + 1); }
  /// Throws DomainError on any violated compatibility or range condition.
  void validate() const;
};

struct DimensionBound {
  std::int64_t free_tails = 0;      // sum_{j>m} f(e-f) - wt(alpha^j)
  std::int64_t support_tails = 0;   // sum_{j<=m} 1 + f(e-f) - wt(alpha^j)
  std::int64_t first_spine = 0;     // f(e+1-f) - sum_{j<=m} wt(bar alpha^j) - wt_p(R1)
  std::int64_t second_spine = 0;    // f(e+1-f) - sum_{j>m} wt(bar alpha^j) - wt_p(R2)
  std::int64_t total = 0;
};

/// Adds up the dimension contributions of the limit linear series. The total
/// is m - f(g - 1 - e + f) for every valid assignment.
DimensionBound limit_series_dimension_bound(const WeightAssignment& w);

/// 6 + 12/(g + 1). Needs g >= 1 (DomainError).
Rational hurwitz_slope(std::int64_t g);

}  // namespace prym
