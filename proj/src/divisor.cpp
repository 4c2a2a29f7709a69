#include "prym/divisor.hpp"

#include <algorithm>

#include "prym/errors.hpp"
#include "prym/lattice.hpp"

namespace prym {

namespace {

constexpr std::int64_t kK3Euler = 24;

// Entries of the pencil |C| read off the lattice: the fibre genus fixes
// lambda, the nodal fibres minus the (-2)-curves disjoint from C give
// delta0', and each (-2)-curve disjoint from C adds one to delta0^ram while
// a curve meeting C once adds N^2/2.
TestCurveVector pencil_from_lattice(const LatticeModel& m, const LatticeClass& c, std::string name,
                                    std::int64_t genus) {
  const std::int64_t c2 = m.square(c).to_int64();
  const std::int64_t h = c2 / 2 + 1;
  std::int64_t disjoint = 0;
  Rational ram(0);
  for (const auto& n : m.known_neg2_curves()) {
    const Rational cn = m.pair(c, n);
    if (cn.sign() == 0) {
      ++disjoint;
      ram += Rational(1);
    } else if (cn == Rational(1)) {
      ram += m.square(n) / Rational(2);
    }
  }
  TestCurveVector t;
  t.name = std::move(name);
  t.genus = genus;
  // chi(O_S) = e(S)/12 for a K3, and lambda = chi(O_S) + h - 1.
  t.lambda = Rational(kK3Euler / 12 + h - 1);
  t.d0p = Rational(euler_nodal_count(kK3Euler, c2) - 2 * disjoint);
  t.d0pp = Rational(0);
  t.d0ram = ram;
  return t;
}

}  // namespace

nlohmann::json TestCurveVector::to_json() const {
  return {{"name", name},
          {"genus", genus},
          {"lambda", lambda.str()},
          {"d0p", d0p.str()},
          {"d0pp", d0pp.str()},
          {"d0ram", d0ram.str()}};
}

std::int64_t euler_nodal_count(std::int64_t surface_euler, std::int64_t curve_self_int) {
  if (curve_self_int < 0 || curve_self_int % 2 != 0) {
    throw DomainError("euler_nodal_count needs an even, nonnegative C^2, got " + std::to_string(curve_self_int));
  }
  const std::int64_t h = curve_self_int / 2 + 1;
  return surface_euler + curve_self_int - 2 * (2 - 2 * h);
}

TestCurveVector standard_pencil_vector(std::int64_t g) {
  if (g < 2) throw DomainError("standard_pencil_vector needs g >= 2");
  const auto m = build_model(ModelKind::standard, static_cast<int>(g));
  return pencil_from_lattice(m, m.named("L"), "standard", g);
}

TestCurveVector nonstandard_pencil_vector(std::int64_t g) {
  if (g < 3 || g % 2 == 0) throw DomainError("nonstandard_pencil_vector needs odd g >= 3, got " + std::to_string(g));
  const auto m = build_model(ModelKind::nonstandard, static_cast<int>((g - 1) / 2));
  return pencil_from_lattice(m, m.named("R"), "nonstandard", g);
}

Rational intersect(const PicVector& v, const TestCurveVector& t) {
  return v.lambda * t.lambda + v.d0p * t.d0p + v.d0pp * t.d0pp + v.d0ram * t.d0ram;
}

Rational pullback_delta0(const TestCurveVector& t) { return t.d0p + t.d0pp + Rational(2) * t.d0ram; }

nlohmann::json DifferenceClass::to_json() const {
  nlohmann::json j;
  j["i"] = i;
  j["normalized_class"] = {{"lambda", normalized.lambda.str()},
                           {"d0p", normalized.d0p.str()},
                           {"d0pp", "undetermined"},
                           {"d0ram", normalized.d0ram.str()}};
  j["d0pp_annotation"] = d0pp_annotation.str();
  auto ps = nlohmann::json::array();
  for (const auto& p : pencils) ps.push_back(p.to_json());
  j["pencils"] = std::move(ps);
  auto rs = nlohmann::json::array();
  for (const auto& r : residuals) rs.push_back(r.str());
  j["residuals"] = std::move(rs);
  return j;
}

DifferenceClass solve_difference_class(std::int64_t i) {
  if (i < 1) throw DomainError("solve_difference_class needs i >= 1");
  const std::int64_t g = 2 * i + 1;
  DifferenceClass out;
  out.i = i;
  out.pencils = {standard_pencil_vector(g), nonstandard_pencil_vector(g)};

  // Rows over (lambda, d0p, d0ram); reduce to row echelon form.
  std::vector<std::vector<Rational>> a;
  for (const auto& p : out.pencils) a.push_back({p.lambda, p.d0p, p.d0ram});
  const std::size_t cols = 3;
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < a.size(); ++c) {
    std::size_t piv = row;
    while (piv < a.size() && a[piv][c].sign() == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[row], a[piv]);
    const Rational lead = a[row][c];
    for (auto& x : a[row]) x /= lead;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == row || a[r][c].sign() == 0) continue;
      const Rational factor = a[r][c];
      for (std::size_t k = 0; k < cols; ++k) a[r][k] -= factor * a[row][k];
    }
    pivots.push_back(c);
    ++row;
  }
  if (cols - pivots.size() != 1) {
    throw DegeneracyError("solution space has dimension " + std::to_string(cols - pivots.size()) + ", expected 1");
  }
  std::size_t free_col = 0;
  while (std::find(pivots.begin(), pivots.end(), free_col) != pivots.end()) ++free_col;
  std::vector<Rational> v(cols, Rational(0));
  v[free_col] = Rational(1);
  for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a[r][free_col];
  if (v[0].sign() == 0) throw DegeneracyError("solution has zero lambda-coefficient");
  const Rational scale = Rational(3 * i + 1) / v[0];

  out.normalized = {v[0] * scale, v[1] * scale, Rational(0), v[2] * scale};
  out.d0pp_annotation = Rational(-i, 2);
  for (const auto& p : out.pencils) out.residuals.push_back(intersect(out.normalized, p));
  return out;
}

std::pair<Rational, Rational> srange_coefficients(std::int64_t i) {
  if (i < 1) throw DomainError("srange_coefficients needs i >= 1");
  const auto n = static_cast<unsigned long>(i);
  const Rational top(binomial(4 * n, 2 * n - 1));
  const Rational first = top / Rational(binomial(2 * n, n - 1)) * Rational(i - 1, 4 * i - 1);
  const Rational second = top / Rational(binomial(2 * n, n)) * Rational(3, 4 * i - 1);
  return {first, second};
}

}  // namespace prym
