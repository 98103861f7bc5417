#include "invset/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <vector>

#include "invset/errors.hpp"
#include "invset/rng.hpp"

namespace invset {

namespace {

Integer two_to(unsigned order) { return Integer(1) << order; }

std::uint64_t integral_count(const Rational& count, const std::string& what) {
  if (!count.is_integer()) throw NotRepresentable(what + " = " + count.str() + " is not an integer");
  return count.numerator().get_ui();
}

}  // namespace

MzOutcome mach_zehnder(const MzConfig& config) {
  const auto desc = classify_angle(config.angle);
  const bool exceptional = desc.kind == AngleKind::Exceptional;
  const Rational scale(two_to(config.order));
  OneQubitSpec spec{config.order, 0, 0};

  if (config.mode == MzMode::Momentum) {
    if (!exceptional && desc.kind != AngleKind::MomentumConsistent) {
      throw InconsistentHistory("momentum measurement at " + angle_str(config.angle) +
                                ": cos(phi) is not finitely describable (kind " + to_string(desc.kind) + ")");
    }
    const Rational weight = (Rational(1) + *desc.cos_phi) / Rational(2);
    spec.weight = integral_count(weight * scale, "cos^2(phi/2) * 2^N");
  } else {
    if (!exceptional && desc.kind != AngleKind::PositionConsistent) {
      throw InconsistentHistory("position measurement at " + angle_str(config.angle) +
                                ": phi/pi is not finitely describable (kind " + to_string(desc.kind) + ")");
    }
    spec.weight = integral_count(scale / Rational(2), "2^(N-1)");
    // n = 2^N phi / (2 pi)
    spec.phase_steps = integral_count(*desc.phi_over_pi * scale / Rational(2), "2^N phi / 2pi");
  }

  auto string = build_one_qubit(spec);
  const Rational p = born_probability(string);
  return MzOutcome{p, Rational(1) - p, desc, std::move(string)};
}

// ---------------------------------------------------------------------------

int chsh_slot(const Pairing& pairing) { return pairing.x; }

Rational chsh_correlation(const ChshConfig& config, const Pairing& pairing) {
  if (pairing.parity() != config.parity) {
    throw WrongSampleSpace("pairing (" + std::to_string(pairing.x) + "," + std::to_string(pairing.y) +
                           ") is not realisable on the z=" + std::to_string(config.parity) + " sample space");
  }
  const auto slot = static_cast<std::size_t>(chsh_slot(pairing));
  const Rational& c = config.cosines[slot];
  if (c < Rational(-1) || c > Rational(1)) throw std::invalid_argument("cosine " + c.str() + " outside [-1, 1]");
  if (!is_dyadic(c)) {
    throw InconsistentHistory("cos theta_" + std::to_string(pairing.x) + std::to_string(pairing.y) + " = " +
                              c.str() + " is not finitely describable");
  }
  auto state = build_bell_layout(config.order, c);
  if (config.signs[slot] < 0) state = anti_correlated(state);
  return correlation(state);
}

ChshResult chsh_statistic(const ChshConfig& z0, const ChshConfig& z1) {
  if (z0.parity != 0 || z1.parity != 1) {
    throw std::invalid_argument("chsh_statistic needs one z=0 and one z=1 sample space");
  }
  ChshResult r;
  r.correlations[0] = chsh_correlation(z0, {0, 0});
  r.correlations[1] = chsh_correlation(z1, {0, 1});
  r.correlations[2] = chsh_correlation(z1, {1, 0});
  r.correlations[3] = chsh_correlation(z0, {1, 1});
  r.statistic = (r.correlations[0] + r.correlations[1] + r.correlations[2] - r.correlations[3]).abs();
  r.violated = r.statistic > Rational(2);
  return r;
}

Rational classical_chsh_bound() {
  long best = 0;
  for (int strategy = 0; strategy < 16; ++strategy) {
    const int a0 = (strategy & 1) ? 1 : -1;
    const int a1 = (strategy & 2) ? 1 : -1;
    const int b0 = (strategy & 4) ? 1 : -1;
    const int b1 = (strategy & 8) ? 1 : -1;
    const long s = std::labs(a0 * b0 + a0 * b1 + a1 * b0 - a1 * b1);
    best = std::max(best, s);
  }
  return Rational(best);
}

QuadExtElement spherical_cos_rule(const Rational& cos_theta00, const Rational& cos_alpha, const Rational& cos_gamma) {
  for (const auto* c : {&cos_theta00, &cos_alpha, &cos_gamma}) {
    if (*c < Rational(-1) || *c > Rational(1)) throw std::invalid_argument("cosine " + c->str() + " outside [-1, 1]");
  }
  const Rational one(1);
  const auto sines = QuadExtElement::sqrt_of_product(one - cos_theta00 * cos_theta00, one - cos_alpha * cos_alpha);
  return QuadExtElement(cos_theta00 * cos_alpha) + QuadExtElement(cos_gamma) * sines;
}

// ---------------------------------------------------------------------------

namespace {

double dot(const Direction& a, const Direction& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

Direction planar(double angle) { return {std::cos(angle), std::sin(angle), 0.0}; }

Direction random_direction(Rng& rng) {
  const double z = 2.0 * rng.unit() - 1.0;
  const double phi = 2.0 * std::numbers::pi * rng.unit();
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {r * std::cos(phi), r * std::sin(phi), z};
}

Direction normalised(Direction d) {
  const double n = std::sqrt(dot(d, d));
  return {d.x / n, d.y / n, d.z / n};
}

struct Candidate {
  double value = -1.0;
  std::array<Direction, 4> dirs{};
};

constexpr std::uint64_t kChunk = 4096;

Candidate scan_chunk(std::uint64_t seed, std::uint64_t chunk, std::uint64_t count) {
  Rng rng(derive_seed(seed, chunk));
  Candidate best;
  for (std::uint64_t i = 0; i < count; ++i) {
    std::array<Direction, 4> d{random_direction(rng), random_direction(rng), random_direction(rng),
                               random_direction(rng)};
    const double s = quantum_chsh_value(d);
    if (s > best.value) best = {s, d};
  }
  return best;
}

}  // namespace

double quantum_chsh_value(const std::array<Direction, 4>& d) {
  const double c00 = -dot(d[0], d[2]);
  const double c01 = -dot(d[0], d[3]);
  const double c10 = -dot(d[1], d[2]);
  const double c11 = -dot(d[1], d[3]);
  return std::fabs(c00 + c01 + c10 - c11);
}

TsirelsonReport tsirelson_scan(unsigned resolution, std::uint64_t trials, std::uint64_t seed, unsigned threads) {
  if (resolution < 8) throw std::invalid_argument("tsirelson_scan needs resolution >= 8");
  TsirelsonReport report;
  report.resolution = resolution;
  report.trials = trials;
  report.seed = seed;

  Candidate best;
  const double step = 2.0 * std::numbers::pi / resolution;
  for (unsigned i = 0; i < resolution; ++i) {
    for (unsigned j = 0; j < resolution; ++j) {
      for (unsigned k = 0; k < resolution; ++k) {
        std::array<Direction, 4> d{planar(0.0), planar(i * step), planar(j * step), planar(k * step)};
        const double s = quantum_chsh_value(d);
        ++report.evaluations;
        if (s > best.value) best = {s, d};
      }
    }
  }

  const std::uint64_t chunks = (trials + kChunk - 1) / kChunk;
  std::vector<Candidate> results(chunks);
  unsigned workers = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, std::max<std::uint64_t>(chunks, 1)));
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::uint64_t c = w; c < chunks; c += workers) {
          const std::uint64_t count = std::min(kChunk, trials - c * kChunk);
          results[c] = scan_chunk(seed, c, count);
        }
      });
    }
  }
  // Reduce in chunk order so ties resolve identically for any schedule.
  for (const auto& r : results) {
    if (r.value > best.value) best = r;
  }
  report.evaluations += trials;

  // Seeded local refinement around the best point with a shrinking step.
  Rng rng(derive_seed(seed, ~std::uint64_t{0}));
  double scale = 0.1;
  for (int iter = 0; iter < 4000; ++iter) {
    auto trial = best.dirs;
    for (auto& d : trial) {
      d = normalised({d.x + scale * rng.normal(), d.y + scale * rng.normal(), d.z + scale * rng.normal()});
    }
    const double s = quantum_chsh_value(trial);
    ++report.evaluations;
    if (s > best.value) best = {s, trial};
    if (iter % 500 == 499) scale *= 0.3;
  }

  report.max_statistic = best.value;
  report.best = best.dirs;
  return report;
}

}  // namespace invset
