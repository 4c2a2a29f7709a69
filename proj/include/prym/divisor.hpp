#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "prym/rational.hpp"

namespace prym {

/// Coefficients over the ordered generators (lambda, delta0', delta0'', delta0^ram),
/// with their literal signs.
struct PicVector {
  Rational lambda;
  Rational d0p;
  Rational d0pp;
  Rational d0ram;

  friend bool operator==(const PicVector&, const PicVector&) = default;
};

/// Intersection numbers of a one-parameter family with the four generators.
struct TestCurveVector {
  std::string name;
  std::int64_t genus = 0;
  Rational lambda;
  Rational d0p;
  Rational d0pp;
  Rational d0ram;

  [[nodiscard]] nlohmann::json to_json() const;
};

/// Singular fibres of a Lefschetz pencil |C| on a surface with topological
/// Euler number `surface_euler`, after blowing up the C^2 base points:
/// (e + C^2) - 2(2 - 2h) with h = C^2/2 + 1. DomainError for odd or negative C^2.
std::int64_t euler_nodal_count(std::int64_t surface_euler, std::int64_t curve_self_int);

/// Pencil of Prym curves of genus g cut by |L| on a standard Nikulin surface
/// of genus g: (g + 1, 6g + 2, 0, 8). Needs g >= 2.
TestCurveVector standard_pencil_vector(std::int64_t g);

/// Pencil of Prym curves of genus g in |R| on a non-standard Nikulin surface
/// with L^2 = 16i - 4, g = 2i + 1: (g, 6g, 0, 4). DomainError unless g is odd
/// and g >= 3.
TestCurveVector nonstandard_pencil_vector(std::int64_t g);

Rational intersect(const PicVector& v, const TestCurveVector& t);

/// t.d0p + t.d0pp + 2 t.d0ram, the family's degree on the pulled-back boundary.
Rational pullback_delta0(const TestCurveVector& t);

struct DifferenceClass {
  std::int64_t i = 0;
  /// d0pp is left at 0 and is not part of the answer: both pencils miss it.
  PicVector normalized;
  /// The value -i/2 quoted alongside the computed coefficients.
  Rational d0pp_annotation;
  std::vector<TestCurveVector> pencils;
  std::vector<Rational> residuals;

  [[nodiscard]] nlohmann::json to_json() const;
};

/// Solves intersect(v, pencil) = 0 for both pencils of genus 2i + 1 on the
/// (lambda, delta0', delta0^ram) coordinates, checks the solution line is
/// one-dimensional (DegeneracyError otherwise) and scales it to lambda = 3i + 1.
DifferenceClass solve_difference_class(std::int64_t i);

/// The two multipliers
///   C(4i, 2i-1)/C(2i, i-1) * (i-1)/(4i-1)  and  C(4i, 2i-1)/C(2i, i) * 3/(4i-1).
/// Needs i >= 1 (DomainError).
std::pair<Rational, Rational> srange_coefficients(std::int64_t i);

}  // namespace prym
