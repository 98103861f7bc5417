#include "invset/exactnum.hpp"

#include <cctype>
#include <stdexcept>
#include <vector>

namespace invset {

namespace {

Integer pow10(unsigned digits) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, digits);
  return r;
}

Integer pow2(unsigned exponent) {
  Integer r = 1;
  r <<= exponent;
  return r;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Integer parse_integer(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw std::invalid_argument("empty integer");
  std::size_t i = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (i == text.size()) throw std::invalid_argument("malformed integer: " + std::string(text));
  for (std::size_t j = i; j < text.size(); ++j) {
    if (!std::isdigit(static_cast<unsigned char>(text[j]))) {
      throw std::invalid_argument("malformed integer: " + std::string(text));
    }
  }
  if (text[0] == '+') text.remove_prefix(1);
  return Integer(std::string(text), 10);
}

}  // namespace

// ---------------------------------------------------------------------------
// Rational

Rational::Rational(Integer numerator, Integer denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  if (den_ == 0) throw std::domain_error("rational with zero denominator");
  canonicalize();
}

void Rational::canonicalize() {
  if (sgn(den_) < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  if (num_ == 0) {
    den_ = 1;
    return;
  }
  Integer g;
  mpz_gcd(g.get_mpz_t(), num_.get_mpz_t(), den_.get_mpz_t());
  if (g != 1) {
    mpz_divexact(num_.get_mpz_t(), num_.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
  }
}

Rational Rational::parse(std::string_view text) {
  text = trim(text);
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  const auto numer = parse_integer(text.substr(0, slash));
  auto rest = trim(text.substr(slash + 1));
  const auto caret = rest.find('^');
  if (caret != std::string_view::npos) {
    if (trim(rest.substr(0, caret)) != "2") {
      throw std::invalid_argument("only powers of two are accepted after '^': " + std::string(text));
    }
    const auto k = parse_integer(rest.substr(caret + 1));
    if (sgn(k) < 0 || !k.fits_uint_p()) throw std::invalid_argument("bad exponent in " + std::string(text));
    return Rational(numer, pow2(static_cast<unsigned>(k.get_ui())));
  }
  const auto denom = parse_integer(rest);
  if (denom == 0) throw std::invalid_argument("zero denominator in " + std::string(text));
  return Rational(numer, denom);
}

Rational Rational::abs() const {
  Rational r = *this;
  r.num_ = ::abs(r.num_);
  return r;
}

Rational Rational::reciprocal() const {
  if (is_zero()) throw std::domain_error("reciprocal of zero");
  return Rational(den_, num_);
}

Rational Rational::pow(unsigned exponent) const {
  Rational r;
  mpz_pow_ui(r.num_.get_mpz_t(), num_.get_mpz_t(), exponent);
  mpz_pow_ui(r.den_.get_mpz_t(), den_.get_mpz_t(), exponent);
  return r;
}

Rational Rational::operator-() const {
  Rational r = *this;
  r.num_ = -r.num_;
  return r;
}

Rational& Rational::operator+=(const Rational& rhs) {
  num_ = num_ * rhs.den_ + rhs.num_ * den_;
  den_ *= rhs.den_;
  canonicalize();
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  num_ = num_ * rhs.den_ - rhs.num_ * den_;
  den_ *= rhs.den_;
  canonicalize();
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  num_ *= rhs.num_;
  den_ *= rhs.den_;
  canonicalize();
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw std::domain_error("division by zero");
  Integer n = num_ * rhs.den_;
  Integer d = den_ * rhs.num_;
  num_ = std::move(n);
  den_ = std::move(d);
  canonicalize();
  return *this;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  const int c = cmp(a.num_ * b.den_, b.num_ * a.den_);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Rational::str() const { return num_.get_str() + "/" + den_.get_str(); }

std::string Rational::decimal(unsigned digits) const {
  const Integer scale = pow10(digits);
  Integer scaled = ::abs(num_) * scale;
  Integer q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), scaled.get_mpz_t(), den_.get_mpz_t());
  if (2 * r >= den_) q += 1;
  std::string body = q.get_str();
  if (digits > 0) {
    if (body.size() <= digits) body.insert(0, digits + 1 - body.size(), '0');
    body.insert(body.size() - digits, ".");
  }
  const bool negative = sign() < 0 && q != 0;
  return negative ? "-" + body : body;
}

double Rational::to_double() const {
  mpq_t q;
  mpq_init(q);
  mpz_set(mpq_numref(q), num_.get_mpz_t());
  mpz_set(mpq_denref(q), den_.get_mpz_t());
  const double d = mpq_get_d(q);
  mpq_clear(q);
  return d;
}

// ---------------------------------------------------------------------------
// Dyadic

std::optional<unsigned> dyadic_exponent(const Rational& r) {
  const auto& d = r.denominator();
  if (mpz_popcount(d.get_mpz_t()) != 1) return std::nullopt;
  return static_cast<unsigned>(mpz_scan1(d.get_mpz_t(), 0));
}

bool is_dyadic(const Rational& r) { return dyadic_exponent(r).has_value(); }

Dyadic::Dyadic(Integer mantissa, unsigned exponent)
    : mantissa_(std::move(mantissa)), exponent_(exponent) {
  if (mantissa_ == 0) {
    exponent_ = 0;
    return;
  }
  const auto twos = static_cast<unsigned>(mpz_scan1(mantissa_.get_mpz_t(), 0));
  const unsigned shift = std::min(twos, exponent_);
  mantissa_ >>= shift;
  exponent_ -= shift;
}

std::optional<Dyadic> Dyadic::from_rational(const Rational& r) {
  const auto k = dyadic_exponent(r);
  if (!k) return std::nullopt;
  return Dyadic(r.numerator(), *k);
}

Rational Dyadic::to_rational() const { return Rational(mantissa_, pow2(exponent_)); }

std::string Dyadic::str() const {
  return mantissa_.get_str() + "/2^" + std::to_string(exponent_);
}

// ---------------------------------------------------------------------------
// Square-free splitting

namespace {

constexpr unsigned long kTrialLimit = 1000000;

const std::vector<unsigned long>& odd_trial_primes() {
  static const std::vector<unsigned long> primes = [] {
    std::vector<bool> composite(kTrialLimit + 1, false);
    std::vector<unsigned long> out;
    for (unsigned long i = 3; i <= kTrialLimit; i += 2) {
      if (composite[i]) continue;
      out.push_back(i);
      for (unsigned long j = i * i; j <= kTrialLimit; j += 2 * i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

}  // namespace

SquareSplit split_square_factor(const Integer& n) {
  if (sgn(n) <= 0) throw std::domain_error("square split of a non-positive integer");
  SquareSplit out{1, 1};
  Integer rest = n;
  auto take = [&](unsigned long p) {
    unsigned multiplicity = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      ++multiplicity;
    }
    for (unsigned i = 0; i + 1 < multiplicity; i += 2) out.root *= p;
    if (multiplicity % 2 == 1) out.squarefree *= p;
  };
  take(2);
  // Once p^3 exceeds the cofactor it has at most two prime factors, so the
  // perfect-square test below is exact. Past the trial limit that holds only
  // for cofactors below 10^18; a larger one may keep a square factor.
  for (const unsigned long p : odd_trial_primes()) {
    if (p * p * p > rest) break;
    take(p);
  }
  if (rest > 1) {
    if (mpz_perfect_square_p(rest.get_mpz_t())) {
      Integer s;
      mpz_sqrt(s.get_mpz_t(), rest.get_mpz_t());
      out.root *= s;
    } else {
      out.squarefree *= rest;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// QuadExtElement

QuadExtElement::QuadExtElement(Rational q0, Rational q1, Integer radicand)
    : q0_(std::move(q0)), q1_(std::move(q1)), radicand_(std::move(radicand)) {
  if (sgn(radicand_) <= 0) throw std::domain_error("radicand must be positive");
  canonicalize();
}

void QuadExtElement::canonicalize() {
  if (q1_.is_zero()) {
    radicand_ = 1;
    return;
  }
  const auto split = split_square_factor(radicand_);
  q1_ *= Rational(split.root);
  radicand_ = split.squarefree;
  if (radicand_ == 1) {
    q0_ += q1_;
    q1_ = Rational(0);
  }
}

QuadExtElement::QuadExtElement(CanonicalTag, Rational q0, Rational q1, Integer radicand)
    : q0_(std::move(q0)), q1_(std::move(q1)), radicand_(std::move(radicand)) {
  if (q1_.is_zero()) radicand_ = 1;
}

QuadExtElement QuadExtElement::sqrt_of_product(const Rational& a, const Rational& b) {
  if (a.sign() < 0 || b.sign() < 0) throw std::domain_error("square root of a negative rational");
  if (a.is_zero() || b.is_zero()) return QuadExtElement();
  // sqrt(a) = sqrt(na*da)/da; split each factor on its own so only small
  // integers are ever trial-divided.
  const auto sa = split_square_factor(a.numerator() * a.denominator());
  const auto sb = split_square_factor(b.numerator() * b.denominator());
  Integer g;
  mpz_gcd(g.get_mpz_t(), sa.squarefree.get_mpz_t(), sb.squarefree.get_mpz_t());
  const Integer d = (sa.squarefree / g) * (sb.squarefree / g);
  Rational coeff = Rational(sa.root * sb.root * g, a.denominator() * b.denominator());
  if (d == 1) return QuadExtElement(coeff);
  return QuadExtElement(CanonicalTag{}, Rational(0), std::move(coeff), d);
}

QuadExtElement QuadExtElement::sqrt_of(const Rational& r) {
  if (r.sign() < 0) throw std::domain_error("square root of a negative rational");
  if (r.is_zero()) return QuadExtElement();
  return QuadExtElement(Rational(0), Rational(Integer(1), r.denominator()),
                        r.numerator() * r.denominator());
}

int QuadExtElement::sign() const {
  const int s0 = q0_.sign();
  const int s1 = q1_.sign();
  if (s1 == 0) return s0;
  if (s0 == 0 || s0 == s1) return s1;
  // Opposite signs: compare q0^2 against q1^2 * d.
  const auto lhs = q0_ * q0_;
  const auto rhs = q1_ * q1_ * Rational(radicand_);
  if (lhs == rhs) return 0;
  return lhs > rhs ? s0 : s1;
}

bool radicands_compatible(const QuadExtElement& a, const QuadExtElement& b) {
  return a.is_rational() || b.is_rational() || a.radicand() == b.radicand();
}

namespace {
const Integer& common_radicand(const QuadExtElement& a, const QuadExtElement& b) {
  if (!radicands_compatible(a, b)) {
    throw std::domain_error("quadratic extensions with radicands " + a.radicand().get_str() +
                            " and " + b.radicand().get_str() + " do not combine");
  }
  return a.is_rational() ? b.radicand() : a.radicand();
}
}  // namespace

QuadExtElement QuadExtElement::operator-() const {
  return QuadExtElement(CanonicalTag{}, -q0_, -q1_, radicand_);
}

QuadExtElement operator+(const QuadExtElement& a, const QuadExtElement& b) {
  const Integer& d = common_radicand(a, b);
  return QuadExtElement(QuadExtElement::CanonicalTag{}, a.q0_ + b.q0_, a.q1_ + b.q1_, d);
}

QuadExtElement operator-(const QuadExtElement& a, const QuadExtElement& b) {
  const Integer& d = common_radicand(a, b);
  return QuadExtElement(QuadExtElement::CanonicalTag{}, a.q0_ - b.q0_, a.q1_ - b.q1_, d);
}

QuadExtElement operator*(const QuadExtElement& a, const QuadExtElement& b) {
  const Integer& d = common_radicand(a, b);
  const Rational rd(d);
  return QuadExtElement(QuadExtElement::CanonicalTag{}, a.q0_ * b.q0_ + a.q1_ * b.q1_ * rd,
                        a.q0_ * b.q1_ + a.q1_ * b.q0_, d);
}

QuadExtElement QuadExtElement::reciprocal() const {
  if (is_rational()) return QuadExtElement(q0_.reciprocal());
  // (a + b√d)^-1 = (a - b√d) / (a² - b²d); the norm is nonzero for squarefree d > 1.
  const Rational norm = q0_ * q0_ - q1_ * q1_ * Rational(radicand_);
  return QuadExtElement(CanonicalTag{}, q0_ / norm, -q1_ / norm, radicand_);
}

QuadExtElement QuadExtElement::parse(std::string_view text) {
  text = trim(text);
  const auto root = text.find("sqrt(");
  if (root == std::string_view::npos) return QuadExtElement(Rational::parse(text));
  const auto close = text.find(')', root);
  if (close == std::string_view::npos || !trim(text.substr(close + 1)).empty()) {
    throw std::invalid_argument("malformed sqrt term in " + std::string(text));
  }
  const auto radicand = parse_integer(text.substr(root + 5, close - root - 5));
  auto coeff = trim(text.substr(0, root));
  if (coeff.empty() || coeff.back() != '*') throw std::invalid_argument("expected q1*sqrt(d) in " + std::string(text));
  coeff = trim(coeff.substr(0, coeff.size() - 1));
  const auto op = coeff.find_last_of("+-");
  if (op == std::string_view::npos || op == 0) return QuadExtElement(Rational(0), Rational::parse(coeff), radicand);
  const Rational q0 = Rational::parse(coeff.substr(0, op));
  Rational q1 = Rational::parse(coeff.substr(op + 1));
  if (coeff[op] == '-') q1 = -q1;
  return QuadExtElement(q0, q1, radicand);
}

std::string QuadExtElement::str() const {
  if (is_rational()) return q0_.str();
  std::string out;
  if (!q0_.is_zero()) out = q0_.str() + (q1_.sign() < 0 ? " - " : " + ");
  else if (q1_.sign() < 0) out = "-";
  out += q1_.abs().str() + "*sqrt(" + radicand_.get_str() + ")";
  return out;
}

Rational QuadExtElement::approximate(unsigned digits) const {
  if (is_rational()) return q0_;
  // Guard digits absorb the scaling by |q1|.
  unsigned extra = 4;
  extra += static_cast<unsigned>(mpz_sizeinbase(q1_.numerator().get_mpz_t(), 10));
  const unsigned g = digits + extra;
  const Integer scale = pow10(g);
  Integer root;
  Integer scaled = radicand_ * scale * scale;
  mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
  return q0_ + q1_ * Rational(root, scale);
}

std::string QuadExtElement::decimal(unsigned digits) const { return approximate(digits + 2).decimal(digits); }

double QuadExtElement::to_double() const { return approximate(20).to_double(); }

std::optional<Rational> quad_ext_classify(const QuadExtElement& e) {
  if (e.is_rational()) return e.q0();
  return std::nullopt;
}

}  // namespace invset
