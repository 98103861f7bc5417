#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "invset/exactnum.hpp"
#include "invset/hilbertbits.hpp"
#include "invset/numbertheory.hpp"

namespace invset {

// ---------------------------------------------------------------------------
// Mach-Zehnder

enum class MzMode {
  Momentum,  // x = 0, UVU: (cos^2(phi/2), sin^2(phi/2))
  Position,  // x = 1, VU: (1/2, 1/2)
};

struct MzConfig {
  MzMode mode = MzMode::Momentum;
  AngleSpec angle;
  unsigned order = 8;  // N
};

struct MzOutcome {
  Rational p_detector_a;
  Rational p_detector_not_a;
  AngleDescriptor angle;
  BitString sample_space;
};

/**
 * Runs the interferometer on its bit-string sample space. Momentum mode
 * needs a dyadic cos(phi); position mode a dyadic phi/pi. Any other pairing
 * throws InconsistentHistory. Throws NotRepresentable when the string weight
 * or rotation is not integral at 2^N.
 */
MzOutcome mach_zehnder(const MzConfig& config);

// ---------------------------------------------------------------------------
// CHSH

/// A pairing (x, y) of Alice's and Bob's settings.
struct Pairing {
  int x = 0;
  int y = 0;
  int parity() const { return (x + y) % 2; }
};

/**
 * One sample space Lambda_z. It carries the two dyadic cosines that are
 * realisable on it: (cos theta00, cos theta11) for z = 0 and
 * (cos theta01, cos theta10) for z = 1, plus the realised sign of each
 * correlation (+1: aligned layout, -1: S_b complemented).
 */
struct ChshConfig {
  unsigned order = 8;
  int parity = 0;  // z
  std::array<Rational, 2> cosines;
  std::array<int, 2> signs{1, 1};
};

/// Index into ChshConfig::cosines for a pairing of matching parity.
int chsh_slot(const Pairing& pairing);

/// Builds the Bell layout realising the configured cosine on its own
/// sub-ensemble and returns its counted correlation (sign * cosine).
/// Throws WrongSampleSpace for a pairing of the other parity,
/// InconsistentHistory for a non-dyadic cosine, NotRepresentable when the
/// layout does not fit 2^N.
Rational chsh_correlation(const ChshConfig& config, const Pairing& pairing);

struct ChshResult {
  std::array<Rational, 4> correlations;  // C00, C01, C10, C11
  Rational statistic;                    // |C00 + C01 + C10 - C11|
  bool violated = false;                 // statistic > 2
};

/// Each correlation is drawn from the config of its own parity.
ChshResult chsh_statistic(const ChshConfig& z0, const ChshConfig& z1);

/// Maximum of |C00 + C01 + C10 - C11| over all 16 deterministic local
/// strategies a(x), b(y) in {-1, +1}.
Rational classical_chsh_bound();

/// cos theta01 = cos theta00 cos alpha + sin theta00 sin alpha cos gamma,
/// as an exact quadratic-extension element (sines on the principal branch).
/// Throws std::invalid_argument for cosines outside [-1, 1].
QuadExtElement spherical_cos_rule(const Rational& cos_theta00, const Rational& cos_alpha, const Rational& cos_gamma);

// ---------------------------------------------------------------------------
// Tsirelson scan (floating point by intent: it checks a bound, not membership)

struct Direction {
  double x = 0, y = 0, z = 0;
};

/// S = |C00 + C01 + C10 - C11| with C(x, y) = -a_x . b_y.
double quantum_chsh_value(const std::array<Direction, 4>& a0_a1_b0_b1);

struct TsirelsonReport {
  double max_statistic = 0;
  std::array<Direction, 4> best{};
  std::uint64_t evaluations = 0;
  unsigned resolution = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
};

/**
 * Planar grid (resolution^3 angle triples, first direction fixed) followed by
 * `trials` seeded random quadruples on the sphere and a seeded local
 * refinement of the best point. Work is split into fixed chunks with derived
 * seeds, so the result does not depend on the thread count.
 */
TsirelsonReport tsirelson_scan(unsigned resolution, std::uint64_t trials, std::uint64_t seed, unsigned threads = 0);

// ---------------------------------------------------------------------------
// PBR

/// Parametrised either by alpha, beta or directly by alpha - 2 beta and beta.
struct PbrAngles {
  AngleSpec theta;
  AngleSpec alpha;
  AngleSpec beta;
  std::optional<AngleSpec> alpha_minus_2beta;  // overrides alpha when set

  static PbrAngles from_alpha_beta(AngleSpec theta, AngleSpec alpha, AngleSpec beta);
  static PbrAngles from_offset(AngleSpec theta, AngleSpec alpha_minus_2beta, AngleSpec beta);
};

/// A probability that is exact when every trigonometric atom lives in one
/// quadratic extension, and otherwise carries a high-precision decimal.
struct PbrValue {
  std::optional<QuadExtElement> exact;
  std::string decimal;  // 60 significant digits
  double approx = 0;
};

struct PbrProbabilities {
  PbrValue x;  // P(Not 01 | prepared 00)
  PbrValue z;  // P(Not 01 | prepared 01)
};

PbrProbabilities pbr_probabilities(const PbrAngles& angles);

/// Double-precision evaluation of X and Z from angles in radians (for root
/// finding and sampling).
std::pair<double, double> pbr_xz_numeric(double theta, double alpha, double beta);

/// Bisection for Z(alpha) = 0 at fixed theta, beta on [lo, hi]; empty when Z
/// does not change sign there.
std::optional<double> pbr_z_root_alpha(double theta, double beta, double lo, double hi);

enum class Describability {
  Dyadic,             // finitely describable
  RationalNotDyadic,
  Irrational,
  Unknown,            // not decided exactly (outside the supported extensions)
};
std::string to_string(Describability d);

struct DescribedCosine {
  std::optional<QuadExtElement> exact;
  Describability kind = Describability::Unknown;
  bool n_bit = false;  // dyadic with denominator dividing 2^N
};

struct PbrDescribabilityReport {
  DescribedCosine cos_alpha_minus_2beta;
  DescribedCosine cos_alpha_minus_beta;
  DescribedCosine cos_beta;
  bool x_n_bit = false;
  bool z_n_bit = false;
  bool simultaneous = false;
  /// cos(alpha - 2beta) and cos(beta) dyadic while cos(alpha - beta) is not.
  bool incompatibility_certified = false;
  unsigned order = 0;
};

PbrDescribabilityReport pbr_describability_report(const PbrAngles& angles, unsigned order);

}  // namespace invset
