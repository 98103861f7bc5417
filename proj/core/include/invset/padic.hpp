#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "invset/exactnum.hpp"
#include "invset/rng.hpp"

namespace invset {

/// Default truncation depth for p-adic expansions.
inline constexpr unsigned kDefaultPadicDepth = 32;

/// p-adic valuation of x; empty stands for +infinity (x = 0).
std::optional<long> ord_p(const Rational& x, unsigned p);

/// |x|_p = p^(-ord_p x), and 0 for x = 0.
Rational padic_norm(const Rational& x, unsigned p);

/// d_p(a, b) = |a - b|_p. An ultrametric.
Rational padic_dist(const Rational& a, const Rational& b, unsigned p);

bool is_prime(unsigned long n);

/**
 * A p-adic integer truncated to K digits: sum_{k<K} digit_k * p^k.
 *
 * Distances between truncated values depend on the depth: two expansions
 * that agree on all K digits are at distance 0 here, whereas their infinite
 * completions might differ further out.
 */
class PAdicInt {
 public:
  PAdicInt(unsigned p, std::vector<std::uint32_t> digits);

  /// The depth-K expansion of x mod p^K. x must have denominator coprime to p.
  static PAdicInt from_rational(const Rational& x, unsigned p, unsigned depth = kDefaultPadicDepth);

  /// Haar-random point: K independent digits uniform on {0..p-1}.
  static PAdicInt haar_sample(unsigned p, unsigned depth, Rng& rng);

  unsigned prime() const { return p_; }
  unsigned depth() const { return static_cast<unsigned>(digits_.size()); }
  std::span<const std::uint32_t> digits() const { return digits_; }

  /// Non-negative integer sum_{k<K} digit_k * p^k.
  Integer value() const;

  friend bool operator==(const PAdicInt&, const PAdicInt&) = default;

 private:
  unsigned p_;
  std::vector<std::uint32_t> digits_;
};

/// Distance between truncated expansions; throws if the primes differ.
Rational padic_dist(const PAdicInt& a, const PAdicInt& b);

/// Writes K uniform digits in {0..p-1} into `out`. For p = 2 the digits are
/// the bits of 64-bit generator words, least significant first.
void fill_haar_digits(unsigned p, std::span<std::uint32_t> out, Rng& rng);

/// Image of a truncated p-adic integer in the generalised Cantor set C(p).
struct CantorPoint {
  Rational value;
  unsigned p;
  unsigned depth;
};

/// F_p: sum a_k p^k  ->  sum 2 a_k / (2p-1)^(k+1).
CantorPoint cantor_embed(const PAdicInt& z);

/// The depth-K digit sequence whose image is exactly `value`, if any.
/// Decided exactly from the base-(2p-1) expansion of value * (2p-1)^K.
std::optional<PAdicInt> cantor_preimage(const Rational& value, unsigned p, unsigned depth);

/**
 * Distance comparison between two Cantor-set points a, b and an off-set
 * rational c.
 *
 * A rational off C(p) has no preimage in Z_p, so its p-adic distance to any
 * set point is at least p; that bound is what the report carries for c.
 */
struct DistanceComparison {
  Rational cantor_a;
  Rational cantor_b;
  Rational c_value;
  Rational euclid_ab;
  Rational euclid_ac;
  Rational padic_ab;
  Rational padic_ac_lower_bound;
  bool c_on_set = false;
  bool euclid_c_closer = false;  // |a - c| < |a - b|
  bool padic_b_closer = false;   // d_p(a, b) < lower bound for c
};

/// Throws std::invalid_argument if a and b have different primes or depths,
/// or if c lies on the embedded set at that depth.
DistanceComparison compare_cantor_distances(const PAdicInt& a, const PAdicInt& b, const Rational& c_value);

}  // namespace invset
