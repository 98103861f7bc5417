#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace invset {

/// Arbitrary-precision integer. Denominators in the doubling iteration grow
/// as b^(2^k), so fixed-width integers are never used on exact paths.
using Integer = mpz_class;

/**
 * Exact rational number a/b.
 *
 * Always canonical: gcd(|a|, b) = 1 and b > 0. Zero is 0/1. Instances are
 * immutable values; every operation returns a new canonical value.
 */
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long value) : num_(value), den_(1) {}  // NOLINT: implicit by design of literals
  Rational(Integer numerator, Integer denominator);
  explicit Rational(Integer value) : num_(std::move(value)), den_(1) {}

  /// Accepts "p", "p/q" and "m/2^k" (whitespace around tokens allowed).
  static Rational parse(std::string_view text);

  const Integer& numerator() const { return num_; }
  const Integer& denominator() const { return den_; }

  int sign() const { return sgn(num_); }
  bool is_zero() const { return sgn(num_) == 0; }
  bool is_integer() const { return den_ == 1; }

  Rational abs() const;
  Rational reciprocal() const;
  Rational pow(unsigned exponent) const;

  Rational operator-() const;
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  /// Exact rendering "num/den" (integers render as "n/1").
  std::string str() const;
  /// Rounded (half away from zero) decimal rendering with `digits` fractional digits.
  std::string decimal(unsigned digits) const;
  double to_double() const;

 private:
  void canonicalize();

  Integer num_;
  Integer den_;
};

/// True iff the denominator is a power of two (including 2^0).
bool is_dyadic(const Rational& r);

/// k such that the denominator equals 2^k, or empty when r is not dyadic.
std::optional<unsigned> dyadic_exponent(const Rational& r);

/// Value mantissa / 2^exponent in canonical form: mantissa odd whenever
/// exponent > 0; zero is 0 / 2^0.
class Dyadic {
 public:
  Dyadic() : mantissa_(0), exponent_(0) {}
  Dyadic(Integer mantissa, unsigned exponent);

  static std::optional<Dyadic> from_rational(const Rational& r);

  const Integer& mantissa() const { return mantissa_; }
  unsigned exponent() const { return exponent_; }

  Rational to_rational() const;
  /// "m/2^k"
  std::string str() const;

  friend bool operator==(const Dyadic&, const Dyadic&) = default;

 private:
  Integer mantissa_;
  unsigned exponent_;
};

/// n = root^2 * squarefree, found by trial division up to 10^6 followed by a
/// perfect-square test on the remaining cofactor.
struct SquareSplit {
  Integer root;
  Integer squarefree;
};
SquareSplit split_square_factor(const Integer& n);

/**
 * Exact element q0 + q1 * sqrt(radicand) of a real quadratic extension.
 *
 * Canonical form: the radicand is squarefree with square factors moved into
 * q1; a perfect-square radicand is folded into q0. Whenever q1 = 0 the
 * radicand is normalised to 1, so the element is rational iff q1 = 0.
 *
 * Binary operations require compatible radicands (equal, or one operand
 * rational) and throw std::domain_error otherwise.
 */
class QuadExtElement {
 public:
  QuadExtElement() : q0_(0), q1_(0), radicand_(1) {}
  QuadExtElement(Rational q0, Rational q1, Integer radicand);
  QuadExtElement(Rational value)  // NOLINT: rationals embed implicitly
      : q0_(std::move(value)), q1_(0), radicand_(1) {}

  /// Inverse of str(): "q0", "q1*sqrt(d)", "q0 + q1*sqrt(d)", "q0 - q1*sqrt(d)".
  static QuadExtElement parse(std::string_view text);
  /// sqrt(r) for rational r >= 0, as 0 + (1/den) * sqrt(num * den).
  static QuadExtElement sqrt_of(const Rational& r);
  /// sqrt(a * b) for rationals a, b >= 0, splitting each factor separately.
  static QuadExtElement sqrt_of_product(const Rational& a, const Rational& b);

  const Rational& q0() const { return q0_; }
  const Rational& q1() const { return q1_; }
  const Integer& radicand() const { return radicand_; }
  bool is_rational() const { return q1_.is_zero(); }

  /// Exact sign of the real value.
  int sign() const;

  QuadExtElement operator-() const;
  QuadExtElement reciprocal() const;
  friend QuadExtElement operator+(const QuadExtElement& a, const QuadExtElement& b);
  friend QuadExtElement operator-(const QuadExtElement& a, const QuadExtElement& b);
  friend QuadExtElement operator*(const QuadExtElement& a, const QuadExtElement& b);
  friend QuadExtElement operator/(const QuadExtElement& a, const QuadExtElement& b) {
    return a * b.reciprocal();
  }
  friend bool operator==(const QuadExtElement&, const QuadExtElement&) = default;

  /// "q0 + q1*sqrt(d)" or just "q0" when rational.
  std::string str() const;
  /// Rational approximation within 10^-digits, from an integer square root.
  Rational approximate(unsigned digits) const;
  std::string decimal(unsigned digits) const;
  double to_double() const;

 private:
  // Operands already canonical: the radicand is known squarefree.
  struct CanonicalTag {};
  QuadExtElement(CanonicalTag, Rational q0, Rational q1, Integer radicand);

  void canonicalize();

  Rational q0_;
  Rational q1_;
  Integer radicand_;
};

bool radicands_compatible(const QuadExtElement& a, const QuadExtElement& b);

/// The rational value of e, or empty when e is irrational.
std::optional<Rational> quad_ext_classify(const QuadExtElement& e);

}  // namespace invset
