#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace invset {

/**
 * Seeded generator with platform-independent derived draws.
 *
 * The standard distributions are implementation-defined, so bounded integers
 * and unit reals are derived directly from mt19937_64 words. Identical seeds
 * give bit-identical streams on every conforming platform.
 */
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_word() { return engine_(); }
  /// Uniform on [0, bound), bound > 0; rejection sampling, no modulo bias.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform on [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi);
  /// Uniform on [0, 1) with 53 random bits.
  double unit();
  /// Standard normal via Box-Muller on unit().
  double normal();

 private:
  std::mt19937_64 engine_;
};

/// Child seed for stream `index` of a parent seed (splitmix64 finaliser).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Parses "0x1f", "1F" etc. Throws std::invalid_argument on bad input.
std::uint64_t parse_hex_seed(std::string_view text);
std::string format_hex_seed(std::uint64_t seed);

}  // namespace invset
