#include <algorithm>
#include <cmath>
#include <functional>

#include "invset/dynamics.hpp"
#include "invset/errors.hpp"
#include "invset/experiments.hpp"
#include "invset/padic.hpp"
#include "invset_cli/dispatch.hpp"

namespace invset::cli {

namespace {

Rational random_rational(Rng& rng) {
  const auto num = rng.between(-500, 500);
  const auto den = rng.between(1, 500);
  return Rational(Integer(static_cast<long>(num)), Integer(static_cast<long>(den)));
}

Rational random_dyadic_cosine(Rng& rng, unsigned k) {
  const long den = 1L << k;
  return Rational(Integer(static_cast<long>(rng.between(-den + 1, den - 1))), Integer(den));
}

BitString random_string(Rng& rng, unsigned order) {
  std::vector<Symbol> s(std::size_t{1} << order);
  for (auto& x : s) x = rng.below(2) ? Symbol::A : Symbol::NotA;
  return BitString(order, std::move(s));
}

bool all_dyadic(std::initializer_list<Rational> values) {
  return std::all_of(values.begin(), values.end(), [](const Rational& r) { return is_dyadic(r); });
}

// Random block counts whose form-A and derived form-B weights are all dyadic;
// empty when the draw is not convertible.
std::optional<TwoQubitState> random_formA(Rng& rng) {
  const unsigned N = static_cast<unsigned>(rng.between(1, 7));
  const long L = 1L << N;
  long cut[3] = {rng.between(0, L), rng.between(0, L), rng.between(0, L)};
  std::sort(cut, cut + 3);
  const long n0 = cut[0], n1 = cut[1] - cut[0], n2 = cut[2] - cut[1], n3 = L - cut[2];
  const auto ratio = [](long num, long den) { return den == 0 ? Rational(1) : Rational(Integer(num), Integer(den)); };
  const std::array<Rational, 3> w{ratio(n0 + n1, L), ratio(n0, n0 + n1), ratio(n2, n2 + n3)};
  if (!all_dyadic({w[1], w[2], ratio(n0, n0 + n2), ratio(n1, n1 + n3)})) return std::nullopt;
  const std::array<long long, 3> ph{rng.between(0, L - 1), rng.between(0, L - 1), rng.between(0, L - 1)};
  return build_two_qubit_formA(N, w, ph);
}

struct Check {
  const char* name;
  std::function<bool(Rng&, unsigned, RunRecord&)> run;
};

const std::vector<Check>& checks() {
  static const std::vector<Check> all = {
      {"padic_worked_values",
       [](Rng&, unsigned, RunRecord& rec) {
         const auto d1 = padic_dist(Rational(7), Rational(3), 2);
         const auto d2 = padic_dist(Rational(15), Rational(7), 2);
         rec.result("d_7_3", d1);
         rec.result("d_15_7", d2);
         return d1 == Rational(1, 4) && d2 == Rational(1, 8);
       }},
      {"ultrametric",
       [](Rng& rng, unsigned, RunRecord& rec) {
         long failures = 0;
         for (unsigned p : {2u, 3u, 5u}) {
           for (int i = 0; i < 300; ++i) {
             const auto a = random_rational(rng), b = random_rational(rng), c = random_rational(rng);
             if (padic_dist(a, c, p) > std::max(padic_dist(a, b, p), padic_dist(b, c, p))) ++failures;
           }
         }
         rec.result("failures", Rational(failures));
         return failures == 0;
       }},
      {"niven_small_denominators",
       [](Rng&, unsigned, RunRecord& rec) {
         long rational = 0;
         bool ok = true;
         for (long n = 1; n <= 24; ++n) {
           for (long m = 0; m < 2 * n; ++m) {
             const PiRational angle(m, n);
             if (angle.n() != n) continue;
             const auto c = cos_rational_classify(angle);
             const double numeric = std::cos(angle.radians());
             if (c) {
               ++rational;
               ok = ok && std::fabs(c->to_double() - numeric) < 1e-12 && n <= 3;
             } else {
               ok = ok && n > 3;
             }
           }
         }
         rec.result("rational_verdicts", Rational(rational));
         return ok && rational == 8;
       }},
      {"born_exact",
       [](Rng&, unsigned, RunRecord& rec) {
         long cases = 0;
         for (unsigned N = 1; N <= 5; ++N) {
           const std::uint64_t L = std::uint64_t{1} << N;
           for (std::uint64_t w = 0; w <= L; ++w) {
             for (std::uint64_t n = 0; n < L; ++n) {
               ++cases;
               const auto s = build_one_qubit({N, w, n});
               if (born_probability(s) != Rational(Integer(static_cast<unsigned long>(w)), Integer(1) << N)) return false;
             }
           }
         }
         rec.result("cases", Rational(cases));
         return true;
       }},
      {"form_equivalence",
       [](Rng& rng, unsigned, RunRecord& rec) {
         long converted = 0, attempts = 0;
         while (converted < 60 && attempts < 100000) {
           ++attempts;
           const auto state = random_formA(rng);
           if (!state) continue;
           const auto other = convert_formA_to_formB(*state);
           if (joint_frequencies(*state) != joint_frequencies(other)) return false;
           ++converted;
         }
         rec.result("converted", Rational(converted));
         return converted == 60;
       }},
      {"classical_chsh_bound",
       [](Rng&, unsigned, RunRecord& rec) {
         const auto b = classical_chsh_bound();
         rec.result("bound", b);
         return b == Rational(2);
       }},
      {"model_chsh_violation",
       [](Rng&, unsigned order, RunRecord& rec) {
         const unsigned N = std::max(order, 8u);
         const Rational c(45, 64);
         const auto r = chsh_statistic({N, 0, {c, c}, {1, -1}}, {N, 1, {c, c}, {1, 1}});
         rec.param("N", std::to_string(N));
         rec.result("S", r.statistic);
         bool refused = false;
         try {
           chsh_correlation({N, 1, {c, c}, {1, 1}}, {0, 0});
         } catch (const WrongSampleSpace&) {
           refused = true;
         }
         return r.statistic == Rational(45, 16) && r.violated && refused;
       }},
      {"spherical_rule_genericity",
       [](Rng& rng, unsigned, RunRecord& rec) {
         long dyadic = 0, tried = 0;
         while (tried < 300) {
           const auto c00 = random_dyadic_cosine(rng, 16), ca = random_dyadic_cosine(rng, 16),
                      cg = random_dyadic_cosine(rng, 16);
           if (cg.is_zero() || c00.abs() == ca.abs()) continue;
           ++tried;
           const auto v = quad_ext_classify(spherical_cos_rule(c00, ca, cg));
           if (v && is_dyadic(*v)) ++dyadic;
         }
         rec.result("dyadic_outputs", Rational(dyadic));
         return dyadic == 0;
       }},
      {"dirac_periodicity",
       [](Rng& rng, unsigned, RunRecord& rec) {
         long states = 0;
         for (int i = 0; i < 10; ++i) {
           const unsigned N = static_cast<unsigned>(rng.between(1, 8));
           const DiracState start{SpinorPair{random_string(rng, N), random_string(rng, N)}, 1, 0};
           auto s = start;
           for (long t = 1; t <= (1L << N); ++t) {
             s = dirac_evolve(s, 1);
             if (s.pair.upper.count(Symbol::A) != start.pair.upper.count(Symbol::A)) return false;
             if (s.pair.lower.count(Symbol::A) != start.pair.lower.count(Symbol::A)) return false;
           }
           if (s.pair != start.pair) return false;
           ++states;
         }
         rec.result("states", Rational(states));
         return true;
       }},
      {"ruban_frequency",
       [](Rng& rng, unsigned, RunRecord& rec) {
         const auto r = ruban_frequency_test(2, 64, 4000, rng.next_word());
         rec.result("f0", Rational(Integer(std::to_string(r.counts[0])), Integer(4000 * 64)));
         return r.pass;
       }},
      {"shift_select_replay",
       [](Rng& rng, unsigned order, RunRecord& rec) {
         const std::uint64_t s = rng.next_word();
         const auto string = random_string(rng, std::min(order, 12u));
         auto a = ShiftSeed::from_seed(s, 64 * string.order());
         auto b = ShiftSeed::from_seed(s, 64 * string.order());
         long selections = 0;
         while (a.remaining() >= string.order()) {
           const auto x = shift_select(a, string);
           const auto y = shift_select(b, string);
           if (x.index != y.index || x.symbol != string[x.index]) return false;
           ++selections;
         }
         rec.result("selections", Rational(selections));
         return true;
       }},
  };
  return all;
}

}  // namespace

std::vector<RunRecord> run_selftest(std::uint64_t seed, unsigned order) {
  std::vector<RunRecord> out;
  std::uint64_t index = 0;
  for (const auto& check : checks()) {
    RunRecord rec;
    rec.command = "selftest";
    rec.version = version();
    rec.seed = format_hex_seed(seed);
    rec.param("check", check.name);
    Rng rng(derive_seed(seed, index++));
    bool ok = false;
    try {
      ok = check.run(rng, order, rec);
    } catch (const std::exception& e) {
      rec.param("exception", e.what());
    }
    rec.flag(ok ? "PASS" : "FAIL");
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace invset::cli
