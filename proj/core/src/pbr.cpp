#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "invset/experiments.hpp"

namespace invset {

namespace {

using Float = boost::multiprecision::cpp_bin_float_100;
using Exact = std::optional<QuadExtElement>;

constexpr unsigned kDecimalDigits = 60;

Float to_float(const Rational& r) {
  return Float(r.numerator().get_str()) / Float(r.denominator().get_str());
}

bool is_zero(const Exact& a) { return a && a->q0().is_zero() && a->q1().is_zero(); }

Exact try_mul(const Exact& a, const Exact& b) {
  if (is_zero(a) || is_zero(b)) return QuadExtElement(Rational(0));
  if (!a || !b) return std::nullopt;
  if (radicands_compatible(*a, *b)) return *a * *b;
  if (a->q0().is_zero() && b->q0().is_zero()) {
    return QuadExtElement(Rational(0), a->q1() * b->q1(), a->radicand() * b->radicand());
  }
  return std::nullopt;
}

Exact try_add(const Exact& a, const Exact& b) {
  if (!a || !b || !radicands_compatible(*a, *b)) return std::nullopt;
  return *a + *b;
}

Exact try_neg(const Exact& a) {
  if (!a) return std::nullopt;
  return -*a;
}

Exact scaled(const Exact& a, const Rational& k) { return try_mul(a, QuadExtElement(k)); }

/// cos and sin of an angle: exact where the value lies in one quadratic
/// extension, always to 100 decimal digits.
struct Trig {
  Exact cos, sin;
  Float cos_f, sin_f;
  bool pi_rational = false;  // cos is irrational unless exact says otherwise
};

// cos(m pi / n) for n <= 6, m in [0, n] (the folded half turn).
Exact cos_pi_table(long m, long n) {
  const Rational half(1, 2);
  const auto sqrt_half = [](long d) { return QuadExtElement(Rational(0), Rational(1, 2), Integer(d)); };
  switch (n) {
    case 1: return QuadExtElement(Rational(m == 0 ? 1 : -1));
    case 2: return QuadExtElement(Rational(0));
    case 3: return QuadExtElement(m == 1 ? half : -half);
    case 4: return m == 1 ? sqrt_half(2) : -sqrt_half(2);
    case 6: return m == 1 ? sqrt_half(3) : -sqrt_half(3);
    case 5: {
      const Rational q(1, 4);
      switch (m) {
        case 1: return QuadExtElement(q, q, Integer(5));
        case 2: return QuadExtElement(-q, q, Integer(5));
        case 3: return QuadExtElement(q, -q, Integer(5));
        default: return QuadExtElement(-q, -q, Integer(5));
      }
    }
    default: return std::nullopt;
  }
}

Exact cos_pi_exact(const PiRational& angle) {
  const Integer& n = angle.n();
  if (n > 6) return std::nullopt;
  long m = angle.m().get_si();
  const long d = n.get_si();
  if (m > d) m = 2 * d - m;  // cos(2 pi - x) = cos x
  return cos_pi_table(m, d);
}

Trig trig_of(const AngleSpec& angle) {
  Trig t;
  if (const auto* pr = std::get_if<PiRational>(&angle)) {
    const Float x = to_float(pr->over_pi()) * boost::math::constants::pi<Float>();
    t.cos_f = cos(x);
    t.sin_f = sin(x);
    t.cos = cos_pi_exact(*pr);
    t.sin = cos_pi_exact(PiRational(Rational(1, 2)) - *pr);
    t.pi_rational = true;
    return t;
  }
  const Rational& c = std::get<CosineValue>(angle).value;
  if (c < Rational(-1) || c > Rational(1)) throw std::invalid_argument("cosine " + c.str() + " outside [-1, 1]");
  const Rational s2 = Rational(1) - c * c;
  t.cos = QuadExtElement(c);
  t.sin = QuadExtElement::sqrt_of(s2);
  t.cos_f = to_float(c);
  t.sin_f = sqrt(to_float(s2));
  return t;
}

Trig trig_sum(const Trig& a, const Trig& b) {
  Trig t;
  t.cos = try_add(try_mul(a.cos, b.cos), try_neg(try_mul(a.sin, b.sin)));
  t.sin = try_add(try_mul(a.sin, b.cos), try_mul(a.cos, b.sin));
  t.cos_f = a.cos_f * b.cos_f - a.sin_f * b.sin_f;
  t.sin_f = a.sin_f * b.cos_f + a.cos_f * b.sin_f;
  return t;
}

Trig trig_neg(Trig t) {
  t.sin = try_neg(t.sin);
  t.sin_f = -t.sin_f;
  return t;
}

struct PbrAtoms {
  Trig theta, delta, alpha_minus_beta, beta;
};

PbrAtoms atoms_of(const PbrAngles& angles) {
  PbrAtoms atoms;
  atoms.theta = trig_of(angles.theta);
  atoms.beta = trig_of(angles.beta);

  const auto* beta_pi = std::get_if<PiRational>(&angles.beta);
  const AngleSpec* offset = angles.alpha_minus_2beta ? &*angles.alpha_minus_2beta : nullptr;
  const auto* offset_pi = offset ? std::get_if<PiRational>(offset) : nullptr;
  const auto* alpha_pi = std::get_if<PiRational>(&angles.alpha);

  if (offset) {
    atoms.delta = trig_of(*offset);
  } else if (alpha_pi && beta_pi) {
    atoms.delta = trig_of(*alpha_pi - *beta_pi - *beta_pi);
  } else {
    atoms.delta = trig_sum(trig_of(angles.alpha), trig_neg(trig_sum(atoms.beta, atoms.beta)));
  }

  if (beta_pi && offset_pi) {
    atoms.alpha_minus_beta = trig_of(*offset_pi + *beta_pi);
  } else if (beta_pi && !offset && alpha_pi) {
    atoms.alpha_minus_beta = trig_of(*alpha_pi - *beta_pi);
  } else if (!offset) {
    atoms.alpha_minus_beta = trig_sum(trig_of(angles.alpha), trig_neg(atoms.beta));
  } else {
    atoms.alpha_minus_beta = trig_sum(atoms.delta, atoms.beta);
  }
  return atoms;
}

std::string float_decimal(const Float& x) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(kDecimalDigits) << x;
  return out.str();
}

PbrValue make_value(const Exact& exact, const Float& numeric) {
  PbrValue v;
  v.exact = exact;
  v.decimal = exact ? exact->decimal(kDecimalDigits) : float_decimal(numeric);
  v.approx = exact ? exact->to_double() : static_cast<double>(numeric);
  return v;
}

DescribedCosine describe(const Trig& t, unsigned order) {
  DescribedCosine d;
  d.exact = t.cos;
  if (t.cos) {
    if (const auto r = quad_ext_classify(*t.cos)) {
      const auto e = dyadic_exponent(*r);
      d.kind = e ? Describability::Dyadic : Describability::RationalNotDyadic;
      d.n_bit = e && *e <= order;
    } else {
      d.kind = Describability::Irrational;
    }
  } else if (t.pi_rational) {
    d.kind = Describability::Irrational;  // Niven: outside the table cos(r pi) is irrational
  }
  return d;
}

bool n_bit_value(const PbrValue& v, unsigned order) {
  if (!v.exact) return false;
  const auto r = quad_ext_classify(*v.exact);
  if (!r) return false;
  const auto e = dyadic_exponent(*r);
  return e && *e <= order;
}

}  // namespace

PbrAngles PbrAngles::from_alpha_beta(AngleSpec theta, AngleSpec alpha, AngleSpec beta) {
  return PbrAngles{std::move(theta), std::move(alpha), std::move(beta), std::nullopt};
}

PbrAngles PbrAngles::from_offset(AngleSpec theta, AngleSpec alpha_minus_2beta, AngleSpec beta) {
  PbrAngles a{std::move(theta), PiRational(), std::move(beta), std::move(alpha_minus_2beta)};
  return a;
}

PbrProbabilities pbr_probabilities(const PbrAngles& angles) {
  const auto atoms = atoms_of(angles);
  const Trig& th = atoms.theta;

  // c2 = cos^2(theta/2), s2 = sin^2(theta/2), cs = cos(theta/2) sin(theta/2)
  const Exact c2 = scaled(try_add(QuadExtElement(Rational(1)), th.cos), Rational(1, 2));
  const Exact s2 = scaled(try_add(QuadExtElement(Rational(1)), try_neg(th.cos)), Rational(1, 2));
  const Exact cs = scaled(th.sin, Rational(1, 2));
  const Float c2f = (1 + th.cos_f) / 2;
  const Float s2f = (1 - th.cos_f) / 2;
  const Float csf = th.sin_f / 2;

  const Exact c2s2 = try_mul(c2, s2);
  const Exact x = try_add(try_add(try_mul(c2, c2), try_mul(s2, s2)), scaled(try_mul(c2s2, atoms.delta.cos), 2));
  const Float xf = c2f * c2f + s2f * s2f + 2 * c2f * s2f * atoms.delta.cos_f;

  Exact z = try_add(x, scaled(c2s2, -4));
  z = try_add(z, scaled(try_mul(try_mul(c2, cs), atoms.alpha_minus_beta.cos), -4));
  z = try_add(z, scaled(try_mul(try_mul(s2, cs), atoms.beta.cos), -4));
  const Float zf = xf - 4 * c2f * s2f - 4 * c2f * csf * atoms.alpha_minus_beta.cos_f - 4 * s2f * csf * atoms.beta.cos_f;

  return PbrProbabilities{make_value(x, xf), make_value(z, zf)};
}

std::pair<double, double> pbr_xz_numeric(double theta, double alpha, double beta) {
  const double c2 = (1 + std::cos(theta)) / 2;
  const double s2 = (1 - std::cos(theta)) / 2;
  const double cs = std::sin(theta) / 2;
  const double x = c2 * c2 + s2 * s2 + 2 * c2 * s2 * std::cos(alpha - 2 * beta);
  const double z = x - 4 * c2 * s2 - 4 * c2 * cs * std::cos(alpha - beta) - 4 * s2 * cs * std::cos(beta);
  return {x, z};
}

std::optional<double> pbr_z_root_alpha(double theta, double beta, double lo, double hi) {
  const auto z = [&](double a) { return pbr_xz_numeric(theta, a, beta).second; };
  double zlo = z(lo);
  if (zlo == 0) return lo;
  if (zlo * z(hi) > 0) return std::nullopt;
  for (int i = 0; i < 200 && hi - lo > 0; ++i) {
    const double mid = lo + (hi - lo) / 2;
    if (mid == lo || mid == hi) break;
    const double zm = z(mid);
    if (zm == 0) return mid;
    if ((zm < 0) == (zlo < 0)) {
      lo = mid;
      zlo = zm;
    } else {
      hi = mid;
    }
  }
  return lo + (hi - lo) / 2;
}

std::string to_string(Describability d) {
  switch (d) {
    case Describability::Dyadic: return "dyadic";
    case Describability::RationalNotDyadic: return "rational-not-dyadic";
    case Describability::Irrational: return "irrational";
    case Describability::Unknown: return "unknown";
  }
  return "unknown";
}

PbrDescribabilityReport pbr_describability_report(const PbrAngles& angles, unsigned order) {
  const auto atoms = atoms_of(angles);
  PbrDescribabilityReport r;
  r.order = order;
  r.cos_alpha_minus_2beta = describe(atoms.delta, order);
  r.cos_alpha_minus_beta = describe(atoms.alpha_minus_beta, order);
  r.cos_beta = describe(atoms.beta, order);

  const auto probs = pbr_probabilities(angles);
  r.x_n_bit = n_bit_value(probs.x, order);
  r.z_n_bit = n_bit_value(probs.z, order);
  r.simultaneous = r.x_n_bit && r.z_n_bit;

  const auto not_dyadic = [](Describability d) {
    return d == Describability::Irrational || d == Describability::RationalNotDyadic;
  };
  r.incompatibility_certified = r.cos_alpha_minus_2beta.kind == Describability::Dyadic &&
                                r.cos_beta.kind == Describability::Dyadic &&
                                not_dyadic(r.cos_alpha_minus_beta.kind);
  return r;
}

}  // namespace invset
