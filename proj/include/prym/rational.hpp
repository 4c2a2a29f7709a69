#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace prym {

/// Arbitrary-precision fraction, always in lowest terms with a positive
/// denominator. Text form is "p/q", or "p" when the denominator is 1.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t n);  // NOLINT: implicit from integers is intended
  Rational(std::int64_t num, std::int64_t den);
  explicit Rational(const mpz_class& n);
  explicit Rational(mpq_class q);

  /// Accepts "p", "-p", "p/q". Throws ParseError on anything else or q == 0.
  static Rational parse(std::string_view text);

  [[nodiscard]] mpz_class numerator() const { return value_.get_num(); }
  [[nodiscard]] mpz_class denominator() const { return value_.get_den(); }
  [[nodiscard]] const mpq_class& raw() const { return value_; }

  [[nodiscard]] bool is_integer() const { return value_.get_den() == 1; }
  [[nodiscard]] int sign() const { return sgn(value_); }
  [[nodiscard]] std::string str() const;

  /// Floor / ceiling as integers (exact).
  [[nodiscard]] mpz_class floor() const;
  [[nodiscard]] mpz_class ceil() const;

  /// Narrowing to int64; throws DomainError if the value is not an integer
  /// or does not fit.
  [[nodiscard]] std::int64_t to_int64() const;

  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.value_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.value_, b.value_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class value_{0};
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// Exact binomial coefficient C(n, k); zero outside 0 <= k <= n.
mpz_class binomial(unsigned long n, unsigned long k);

}  // namespace prym
