#include "invset/dynamics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>

#include "invset/errors.hpp"
#include "invset/padic.hpp"

namespace invset {

ShiftSeed::ShiftSeed(std::vector<std::uint8_t> digits, std::size_t position)
    : digits_(std::move(digits)), position_(position) {
  if (std::any_of(digits_.begin(), digits_.end(), [](std::uint8_t d) { return d > 1; })) {
    throw std::invalid_argument("shift seed digits must be binary");
  }
  if (position_ > digits_.size()) throw std::invalid_argument("shift seed position past its depth");
}

ShiftSeed ShiftSeed::from_hex(std::string_view hex) {
  if (hex.starts_with("0x") || hex.starts_with("0X")) hex.remove_prefix(2);
  if (hex.empty()) throw std::invalid_argument("empty hex seed");
  std::vector<std::uint8_t> digits;
  digits.reserve(hex.size() * 4);
  for (auto it = hex.rbegin(); it != hex.rend(); ++it) {
    const char c = static_cast<char>(std::tolower(static_cast<unsigned char>(*it)));
    int v;
    if (c >= '0' && c <= '9') v = c - '0';
    else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
    else throw std::invalid_argument("bad hex digit in seed: " + std::string(1, *it));
    for (int b = 0; b < 4; ++b) digits.push_back(static_cast<std::uint8_t>((v >> b) & 1));
  }
  return ShiftSeed(std::move(digits));
}

ShiftSeed ShiftSeed::from_seed(std::uint64_t seed, std::size_t depth) {
  Rng rng(seed);
  std::vector<std::uint8_t> digits(depth);
  std::uint64_t word = 0;
  for (std::size_t i = 0; i < depth; ++i) {
    if (i % 64 == 0) word = rng.next_word();
    digits[i] = static_cast<std::uint8_t>((word >> (i % 64)) & 1);
  }
  return ShiftSeed(std::move(digits));
}

std::uint64_t ShiftSeed::take(unsigned count) {
  if (count > 64) throw std::invalid_argument("at most 64 digits per shift");
  if (count > remaining()) {
    throw SeedExhausted("shift seed exhausted: need " + std::to_string(count) + " digits, " +
                        std::to_string(remaining()) + " left");
  }
  std::uint64_t value = 0;
  for (unsigned k = 0; k < count; ++k) value |= std::uint64_t{digits_[position_ + k]} << k;
  position_ += count;
  return value;
}

Selection shift_select(ShiftSeed& seed, const BitString& s) {
  const auto index = seed.take(s.order());
  return {index, s[index]};
}

// ---------------------------------------------------------------------------

namespace {

RubanReport tally(unsigned p, unsigned depth, std::uint64_t samples, const DigitSampler& sampler) {
  if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
  if (depth == 0) throw std::invalid_argument("depth must be positive");
  if (samples < 1000) throw std::invalid_argument("ruban test needs at least 1000 samples");

  RubanReport r;
  r.p = p;
  r.depth = depth;
  r.samples = samples;
  r.counts.assign(p, 0);
  std::vector<std::uint32_t> digits(depth);
  for (std::uint64_t s = 0; s < samples; ++s) {
    sampler(digits);
    for (auto d : digits) {
      if (d >= p) throw std::invalid_argument("sampler produced digit outside [0, p)");
      ++r.counts[d];
    }
  }
  const double total = static_cast<double>(samples) * depth;
  const double q = 1.0 / p;
  r.sigma = std::sqrt(q * (1 - q) / total);
  for (auto c : r.counts) {
    const double f = static_cast<double>(c) / total;
    r.frequencies.push_back(f);
    r.max_deviation = std::max(r.max_deviation, std::fabs(f - q));
  }
  r.pass = r.max_deviation <= 4 * r.sigma;
  return r;
}

}  // namespace

RubanReport ruban_frequency_test(unsigned p, unsigned depth, std::uint64_t samples, std::uint64_t seed) {
  Rng rng(seed);
  auto r = tally(p, depth, samples, [&](std::span<std::uint32_t> out) { fill_haar_digits(p, out, rng); });
  r.seed = seed;
  return r;
}

RubanReport ruban_frequency_test(unsigned p, unsigned depth, std::uint64_t samples, const DigitSampler& sampler) {
  return tally(p, depth, samples, sampler);
}

// ---------------------------------------------------------------------------

DiracState dirac_evolve(const DiracState& state, long long ticks) {
  const long long period = 1LL << state.pair.upper.order();
  // Reduce before multiplying so large tick counts cannot overflow.
  const long long steps = ((state.rate % period) * (ticks % period)) % period;
  return DiracState{SpinorPair{zeta(state.pair.upper, steps), zeta(state.pair.lower, -steps)}, state.rate,
                    state.tick + ticks};
}

SpinorPair gamma_apply(int axis, const SpinorPair& pair) {
  return SpinorPair{pauli_apply(axis, pair.lower), complement(pauli_apply(axis, pair.upper))};
}

EnergyFrequency energy_frequency(const Rational& mass_energy, unsigned order) {
  if (mass_energy.sign() <= 0) throw std::invalid_argument("mass energy must be positive");
  const Rational scale(Integer(1) << order);
  return EnergyFrequency{mass_energy, Rational(2) / (scale * mass_energy), scale * mass_energy / Rational(2)};
}

}  // namespace invset
