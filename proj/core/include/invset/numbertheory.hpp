#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "invset/exactnum.hpp"

namespace invset {

/**
 * Angle that is a rational multiple of pi, stored as phi/pi = m/n reduced and
 * normalised into [0, 2). Negation and shifts by 2*pi are absorbed by the
 * normalisation, so every classification is invariant under them.
 */
class PiRational {
 public:
  PiRational() = default;
  explicit PiRational(const Rational& phi_over_pi);
  PiRational(long m, long n) : PiRational(Rational(Integer(m), Integer(n))) {}

  /// Accepts "m/n pi", "m/npi", "pi", "0" and the like.
  static PiRational parse(std::string_view text);

  const Rational& over_pi() const { return value_; }
  const Integer& m() const { return value_.numerator(); }
  const Integer& n() const { return value_.denominator(); }

  PiRational operator-() const { return PiRational(-value_); }
  friend PiRational operator+(const PiRational& a, const PiRational& b) {
    return PiRational(a.value_ + b.value_);
  }
  friend PiRational operator-(const PiRational& a, const PiRational& b) {
    return PiRational(a.value_ - b.value_);
  }
  friend bool operator==(const PiRational&, const PiRational&) = default;

  /// "m/n pi"
  std::string str() const;
  double radians() const;

 private:
  Rational value_;
};

/// Exact cosine value, the alternative way of pinning down an angle.
struct CosineValue {
  Rational value;
  friend bool operator==(const CosineValue&, const CosineValue&) = default;
};

using AngleSpec = std::variant<PiRational, CosineValue>;

/// Parses "m/n pi" (or "m/npi") and "cos=p/q" / "cos=m/2^k".
AngleSpec parse_angle(std::string_view text);
std::string angle_str(const AngleSpec& angle);

/// cos(m pi / n) when rational, i.e. one of 0, +-1/2, +-1; empty otherwise.
std::optional<Rational> cos_rational_classify(const PiRational& angle);

/// x_0 = 2cos(phi), x_{k+1} = x_k^2 - 2; returns x_0 .. x_steps.
std::vector<Rational> doubling_sequence(const Rational& two_cos_phi, unsigned steps);

enum class AngleKind {
  PositionConsistent,  // phi/pi dyadic
  MomentumConsistent,  // cos(phi) dyadic
  Exceptional,         // both: phi in {0, pi/2, pi, 3pi/2}
  Neither,
};

std::string to_string(AngleKind kind);

struct AngleDescriptor {
  AngleKind kind = AngleKind::Neither;
  std::optional<Rational> phi_over_pi;  // empty: phi/pi irrational
  std::optional<Rational> cos_phi;      // empty: cos(phi) irrational
};

/// Cosine inputs use the principal branch phi in [0, pi]. Throws
/// std::invalid_argument for cosines outside [-1, 1].
AngleDescriptor classify_angle(const AngleSpec& angle);

/// Why e^{i phi} cannot be additive on dyadic phases:
/// (e^{i phi1} + e^{i phi2}) / 2 = e^{i (phi1+phi2)/2} cos((phi1-phi2)/2).
struct PhaseSumReport {
  PiRational difference;       // phi1 - phi2
  PiRational half_difference;  // (phi1 - phi2) / 2
  bool difference_dyadic = false;
  std::optional<Rational> cos_half_difference;
  bool exceptional = false;  // cos of the half difference in {0, +-1}
  bool additive_obstruction = false;
};

/// Both phases must be dyadic multiples of pi (std::invalid_argument otherwise).
PhaseSumReport phase_sum_incompatibility(const PiRational& phi1, const PiRational& phi2);

struct PythagoreanReport {
  unsigned k = 0;
  unsigned long long hypotenuse = 0;  // 2^k
  unsigned long long search_bound = 0;
  unsigned long long legs_checked = 0;
  std::vector<std::pair<unsigned long long, unsigned long long>> triples;
};

/// Exhaustive search for a^2 + b^2 = 4^k with 0 < a <= b < search_bound.
/// search_bound defaults to 2^k; 1 <= k <= 31.
PythagoreanReport pythagorean_hypotenuse_check(unsigned k, std::optional<unsigned long long> search_bound = {});

}  // namespace invset
