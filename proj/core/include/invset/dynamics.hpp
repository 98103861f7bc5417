#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "invset/exactnum.hpp"
#include "invset/hilbertbits.hpp"
#include "invset/rng.hpp"

namespace invset {

/**
 * Binary digit sequence consumed by the shift map. The position is the
 * number of shifts applied so far; a seed is sequential state and must not be
 * shared between threads.
 */
class ShiftSeed {
 public:
  explicit ShiftSeed(std::vector<std::uint8_t> digits, std::size_t position = 0);

  /// Binary expansion of a hex string, least-significant digit first.
  static ShiftSeed from_hex(std::string_view hex);
  /// `depth` uniform digits drawn from Rng(seed).
  static ShiftSeed from_seed(std::uint64_t seed, std::size_t depth);

  std::span<const std::uint8_t> digits() const { return digits_; }
  std::size_t depth() const { return digits_.size(); }
  std::size_t position() const { return position_; }
  std::size_t remaining() const { return digits_.size() - position_; }

  /// Reads `count` digits least-significant first and shifts past them.
  /// Throws SeedExhausted when fewer remain.
  std::uint64_t take(unsigned count);

 private:
  std::vector<std::uint8_t> digits_;
  std::size_t position_;
};

struct Selection {
  std::uint64_t index = 0;
  Symbol symbol = Symbol::NotA;
};

/// Index from the next N digits of the seed, and the symbol found there.
Selection shift_select(ShiftSeed& seed, const BitString& s);

struct RubanReport {
  unsigned p = 0;
  unsigned depth = 0;
  std::uint64_t samples = 0;
  std::optional<std::uint64_t> seed;
  std::vector<std::uint64_t> counts;  // per digit value, pooled over all digits of all samples
  std::vector<double> frequencies;
  double max_deviation = 0;  // max |f - 1/p|
  double sigma = 0;          // binomial sd of a pooled frequency
  bool pass = false;         // max_deviation <= 4 sigma
};

/// Draws `samples` Haar-uniform depth-K points of Z_p and tallies digit values.
/// Needs samples >= 1000.
RubanReport ruban_frequency_test(unsigned p, unsigned depth, std::uint64_t samples, std::uint64_t seed);

/// Same tally over digits produced by an arbitrary sampler (one call per sample).
using DigitSampler = std::function<void(std::span<std::uint32_t>)>;
RubanReport ruban_frequency_test(unsigned p, unsigned depth, std::uint64_t samples, const DigitSampler& sampler);

// ---------------------------------------------------------------------------
// Rest-frame Dirac evolution

struct DiracState {
  SpinorPair pair;
  long long rate = 1;  // n per tick
  long long tick = 0;
  friend bool operator==(const DiracState&, const DiracState&) = default;
};

/// S_a -> zeta^(rate*ticks) S_a, S_b -> zeta^(-rate*ticks) S_b.
DiracState dirac_evolve(const DiracState& state, long long ticks);

/// gamma_i (S_a, S_b) = (sigma_i S_b, -sigma_i S_a), -1 being the complement.
SpinorPair gamma_apply(int axis, const SpinorPair& pair);

/// hbar = 1. Time step and rate carry pi symbolically:
/// delta_t = delta_t_pi * pi, n(t) = steps_per_unit_over_pi * t / pi.
struct EnergyFrequency {
  Rational omega;
  Rational delta_t_pi;             // 2 / (2^N E)
  Rational steps_per_unit_over_pi; // 2^(N-1) E
};

/// Throws std::invalid_argument unless mass_energy > 0.
EnergyFrequency energy_frequency(const Rational& mass_energy, unsigned order);

}  // namespace invset
