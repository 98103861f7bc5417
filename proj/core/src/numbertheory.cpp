#include "invset/numbertheory.hpp"

#include <cctype>
#include <numbers>
#include <stdexcept>

namespace invset {

PiRational::PiRational(const Rational& phi_over_pi) {
  // Reduce modulo 2: m/n - 2*floor(m/(2n)).
  Integer q;
  const Integer two_n = 2 * phi_over_pi.denominator();
  mpz_fdiv_q(q.get_mpz_t(), phi_over_pi.numerator().get_mpz_t(), two_n.get_mpz_t());
  value_ = phi_over_pi - Rational(2 * q);
}

PiRational PiRational::parse(std::string_view text) {
  std::string compact;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c)) && c != '*') compact.push_back(c);
  }
  const auto pos = compact.find("pi");
  if (pos == std::string::npos) {
    if (compact == "0") return PiRational(Rational(0));
    throw std::invalid_argument("angle must be a rational multiple of pi: " + std::string(text));
  }
  const std::string before = compact.substr(0, pos);
  const std::string after = compact.substr(pos + 2);
  Rational coeff(1);
  if (before == "-") coeff = Rational(-1);
  else if (!before.empty() && before != "+") coeff = Rational::parse(before);
  if (!after.empty()) {
    if (after.front() != '/') throw std::invalid_argument("malformed angle: " + std::string(text));
    coeff /= Rational::parse(after.substr(1));
  }
  return PiRational(coeff);
}

std::string PiRational::str() const { return value_.str() + " pi"; }

double PiRational::radians() const { return value_.to_double() * std::numbers::pi; }

AngleSpec parse_angle(std::string_view text) {
  std::string_view t = text;
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.remove_prefix(1);
  if (t.starts_with("cos=") || t.starts_with("cos:")) {
    return CosineValue{Rational::parse(t.substr(4))};
  }
  return PiRational::parse(t);
}

std::string angle_str(const AngleSpec& angle) {
  if (const auto* pr = std::get_if<PiRational>(&angle)) return pr->str();
  return "cos=" + std::get<CosineValue>(angle).value.str();
}

std::optional<Rational> cos_rational_classify(const PiRational& angle) {
  const auto& r = angle.over_pi();
  const auto& n = r.denominator();
  const auto& m = r.numerator();
  // Closed classification: only n in {1, 2, 3} gives a rational cosine.
  if (n == 1) return m == 0 ? Rational(1) : Rational(-1);
  if (n == 2) return Rational(0);
  if (n == 3) {
    if (m == 1 || m == 5) return Rational(Integer(1), Integer(2));
    return Rational(Integer(-1), Integer(2));
  }
  return std::nullopt;
}

std::vector<Rational> doubling_sequence(const Rational& two_cos_phi, unsigned steps) {
  if (steps == 0) throw std::invalid_argument("doubling_sequence needs at least one step");
  std::vector<Rational> seq;
  seq.reserve(steps + 1);
  seq.push_back(two_cos_phi);
  for (unsigned k = 0; k < steps; ++k) {
    const auto& x = seq.back();
    seq.push_back(x * x - Rational(2));
  }
  return seq;
}

std::string to_string(AngleKind kind) {
  switch (kind) {
    case AngleKind::PositionConsistent: return "PositionConsistent";
    case AngleKind::MomentumConsistent: return "MomentumConsistent";
    case AngleKind::Exceptional: return "Exceptional";
    case AngleKind::Neither: return "Neither";
  }
  return "?";
}

namespace {

AngleDescriptor classify_pi_rational(const PiRational& angle) {
  AngleDescriptor d;
  d.phi_over_pi = angle.over_pi();
  d.cos_phi = cos_rational_classify(angle);
  const bool position = is_dyadic(angle.over_pi());
  const bool momentum = d.cos_phi && is_dyadic(*d.cos_phi);
  if (position && momentum) d.kind = AngleKind::Exceptional;
  else if (position) d.kind = AngleKind::PositionConsistent;
  else if (momentum) d.kind = AngleKind::MomentumConsistent;
  else d.kind = AngleKind::Neither;
  return d;
}

AngleDescriptor classify_cosine(const Rational& c) {
  if (c < Rational(-1) || c > Rational(1)) {
    throw std::invalid_argument("cosine " + c.str() + " lies outside [-1, 1]");
  }
  const Rational half(Integer(1), Integer(2));
  AngleDescriptor d;
  d.cos_phi = c;
  // Principal branch phi in [0, pi]; phi/pi is rational only at Niven's values.
  if (c == Rational(1)) d.phi_over_pi = Rational(0);
  else if (c == Rational(-1)) d.phi_over_pi = Rational(1);
  else if (c.is_zero()) d.phi_over_pi = half;
  else if (c == half) d.phi_over_pi = Rational(Integer(1), Integer(3));
  else if (c == -half) d.phi_over_pi = Rational(Integer(2), Integer(3));

  const bool momentum = is_dyadic(c);
  const bool position = d.phi_over_pi && is_dyadic(*d.phi_over_pi);
  if (position && momentum) d.kind = AngleKind::Exceptional;
  else if (momentum) d.kind = AngleKind::MomentumConsistent;
  else if (position) d.kind = AngleKind::PositionConsistent;
  else d.kind = AngleKind::Neither;
  return d;
}

}  // namespace

AngleDescriptor classify_angle(const AngleSpec& angle) {
  if (const auto* pr = std::get_if<PiRational>(&angle)) return classify_pi_rational(*pr);
  return classify_cosine(std::get<CosineValue>(angle).value);
}

PhaseSumReport phase_sum_incompatibility(const PiRational& phi1, const PiRational& phi2) {
  if (!is_dyadic(phi1.over_pi()) || !is_dyadic(phi2.over_pi())) {
    throw std::invalid_argument("phase_sum_incompatibility needs dyadic phases");
  }
  PhaseSumReport r;
  const Rational diff = phi1.over_pi() - phi2.over_pi();
  r.difference = PiRational(diff);
  r.half_difference = PiRational(diff / Rational(2));
  r.difference_dyadic = is_dyadic(r.difference.over_pi());
  r.cos_half_difference = cos_rational_classify(r.half_difference);
  r.exceptional = r.cos_half_difference && is_dyadic(*r.cos_half_difference);
  r.additive_obstruction = !r.cos_half_difference || !is_dyadic(*r.cos_half_difference);
  return r;
}

PythagoreanReport pythagorean_hypotenuse_check(unsigned k, std::optional<unsigned long long> search_bound) {
  if (k < 1 || k > 31) throw std::invalid_argument("pythagorean_hypotenuse_check needs 1 <= k <= 31");
  PythagoreanReport r;
  r.k = k;
  r.hypotenuse = 1ull << k;
  r.search_bound = search_bound.value_or(r.hypotenuse);
  const unsigned long long c2 = r.hypotenuse * r.hypotenuse;
  // For each leg a, the only candidate partner is b = isqrt(c^2 - a^2).
  for (unsigned long long a = 1; a < r.search_bound && a * a <= c2; ++a) {
    ++r.legs_checked;
    const unsigned long long rest = c2 - a * a;
    Integer root;
    const Integer big(static_cast<unsigned long>(rest));
    mpz_sqrt(root.get_mpz_t(), big.get_mpz_t());
    const unsigned long long b = root.get_ui();
    if (b >= a && b < r.search_bound && b * b == rest) r.triples.emplace_back(a, b);
  }
  return r;
}

}  // namespace invset
