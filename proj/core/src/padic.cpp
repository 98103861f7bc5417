#include "invset/padic.hpp"

#include <stdexcept>
#include <string>

namespace invset {

namespace {

void require_prime(unsigned p) {
  if (!is_prime(p)) throw std::invalid_argument("p = " + std::to_string(p) + " is not prime");
}

long integer_valuation(const Integer& n, unsigned p) {
  Integer rest;
  const Integer prime(p);
  return static_cast<long>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), prime.get_mpz_t()));
}

Integer ipow(unsigned base, unsigned exponent) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, exponent);
  return r;
}

}  // namespace

bool is_prime(unsigned long n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (unsigned long d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

std::optional<long> ord_p(const Rational& x, unsigned p) {
  require_prime(p);
  if (x.is_zero()) return std::nullopt;
  return integer_valuation(x.numerator(), p) - integer_valuation(x.denominator(), p);
}

Rational padic_norm(const Rational& x, unsigned p) {
  const auto ord = ord_p(x, p);
  if (!ord) return Rational(0);
  const auto magnitude = ipow(p, static_cast<unsigned>(*ord < 0 ? -*ord : *ord));
  return *ord >= 0 ? Rational(Integer(1), magnitude) : Rational(magnitude);
}

Rational padic_dist(const Rational& a, const Rational& b, unsigned p) { return padic_norm(a - b, p); }

// ---------------------------------------------------------------------------

PAdicInt::PAdicInt(unsigned p, std::vector<std::uint32_t> digits) : p_(p), digits_(std::move(digits)) {
  require_prime(p);
  for (auto d : digits_) {
    if (d >= p) throw std::invalid_argument("p-adic digit " + std::to_string(d) + " out of range");
  }
}

PAdicInt PAdicInt::from_rational(const Rational& x, unsigned p, unsigned depth) {
  require_prime(p);
  if (mpz_divisible_ui_p(x.denominator().get_mpz_t(), p)) {
    throw std::invalid_argument(x.str() + " is not a " + std::to_string(p) + "-adic integer");
  }
  const Integer modulus = ipow(p, depth);
  Integer inv;
  mpz_invert(inv.get_mpz_t(), x.denominator().get_mpz_t(), modulus.get_mpz_t());
  if (depth == 0) inv = 0;
  Integer residue = x.numerator() * inv;
  mpz_mod(residue.get_mpz_t(), residue.get_mpz_t(), modulus.get_mpz_t());
  std::vector<std::uint32_t> digits(depth);
  for (unsigned k = 0; k < depth; ++k) {
    digits[k] = static_cast<std::uint32_t>(mpz_fdiv_q_ui(residue.get_mpz_t(), residue.get_mpz_t(), p));
  }
  return PAdicInt(p, std::move(digits));
}

void fill_haar_digits(unsigned p, std::span<std::uint32_t> out, Rng& rng) {
  if (p == 2) {
    std::size_t k = 0;
    while (k < out.size()) {
      std::uint64_t word = rng.next_word();
      for (int bit = 0; bit < 64 && k < out.size(); ++bit, ++k) {
        out[k] = static_cast<std::uint32_t>((word >> bit) & 1u);
      }
    }
    return;
  }
  for (auto& d : out) d = static_cast<std::uint32_t>(rng.below(p));
}

PAdicInt PAdicInt::haar_sample(unsigned p, unsigned depth, Rng& rng) {
  require_prime(p);
  std::vector<std::uint32_t> digits(depth);
  fill_haar_digits(p, digits, rng);
  return PAdicInt(p, std::move(digits));
}

Integer PAdicInt::value() const {
  Integer v = 0;
  for (auto it = digits_.rbegin(); it != digits_.rend(); ++it) {
    v *= p_;
    v += *it;
  }
  return v;
}

Rational padic_dist(const PAdicInt& a, const PAdicInt& b) {
  if (a.prime() != b.prime()) throw std::invalid_argument("p-adic distance between different primes");
  return padic_dist(Rational(a.value()), Rational(b.value()), a.prime());
}

// ---------------------------------------------------------------------------

CantorPoint cantor_embed(const PAdicInt& z) {
  const unsigned base = 2 * z.prime() - 1;
  const unsigned depth = z.depth();
  Integer numer = 0;
  for (auto d : z.digits()) {
    numer *= base;
    numer += 2 * d;
  }
  return CantorPoint{Rational(numer, ipow(base, depth)), z.prime(), depth};
}

std::optional<PAdicInt> cantor_preimage(const Rational& value, unsigned p, unsigned depth) {
  require_prime(p);
  if (value.sign() < 0 || value >= Rational(1)) return std::nullopt;
  const unsigned base = 2 * p - 1;
  Rational scaled = value * Rational(ipow(base, depth));
  if (!scaled.is_integer()) return std::nullopt;
  Integer rest = scaled.numerator();
  std::vector<std::uint32_t> digits(depth);
  for (unsigned i = 0; i < depth; ++i) {
    const auto r = mpz_fdiv_q_ui(rest.get_mpz_t(), rest.get_mpz_t(), base);
    if (r % 2 != 0) return std::nullopt;
    digits[depth - 1 - i] = static_cast<std::uint32_t>(r / 2);
  }
  return PAdicInt(p, std::move(digits));
}

DistanceComparison compare_cantor_distances(const PAdicInt& a, const PAdicInt& b, const Rational& c_value) {
  if (a.prime() != b.prime() || a.depth() != b.depth()) {
    throw std::invalid_argument("set points must share the prime and the depth");
  }
  if (cantor_preimage(c_value, a.prime(), a.depth())) {
    throw std::invalid_argument(c_value.str() + " lies on the embedded set; the comparison needs an off-set point");
  }
  DistanceComparison out;
  out.cantor_a = cantor_embed(a).value;
  out.cantor_b = cantor_embed(b).value;
  out.c_value = c_value;
  out.euclid_ab = (out.cantor_a - out.cantor_b).abs();
  out.euclid_ac = (out.cantor_a - c_value).abs();
  out.padic_ab = padic_dist(a, b);
  out.padic_ac_lower_bound = Rational(static_cast<long>(a.prime()));
  out.c_on_set = false;
  out.euclid_c_closer = out.euclid_ac < out.euclid_ab;
  out.padic_b_closer = out.padic_ab < out.padic_ac_lower_bound;
  return out;
}

}  // namespace invset
