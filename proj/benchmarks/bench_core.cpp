#include <benchmark/benchmark.h>

#include "invset/dynamics.hpp"
#include "invset/experiments.hpp"
#include "invset/padic.hpp"

using namespace invset;

static void BM_QuadExtMultiply(benchmark::State& state) {
  const auto a = QuadExtElement::sqrt_of_product(Rational(Integer(3), Integer(4)), Rational(Integer(7), Integer(16)));
  const QuadExtElement b(Rational(Integer(3), Integer(8)), Rational(Integer(-5), Integer(64)), Integer(21));
  for (auto _ : state) benchmark::DoNotOptimize(a * b + a);
}
BENCHMARK(BM_QuadExtMultiply);

static void BM_SphericalRule(benchmark::State& state) {
  const Rational c00(Integer(45), Integer(64)), ca(Integer(-11), Integer(32)), cg(Integer(5), Integer(16));
  for (auto _ : state) benchmark::DoNotOptimize(spherical_cos_rule(c00, ca, cg));
}
BENCHMARK(BM_SphericalRule);

static void BM_PadicDist(benchmark::State& state) {
  Rng rng(1);
  std::vector<Rational> xs;
  for (int i = 0; i < 256; ++i) {
    xs.emplace_back(Integer(static_cast<long>(rng.between(-100000, 100000))),
                    Integer(static_cast<long>(rng.between(1, 100000))));
  }
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(padic_dist(xs[i % 256], xs[(i + 1) % 256], 3));
    ++i;
  }
}
BENCHMARK(BM_PadicDist);

static void BM_ChshLayout(benchmark::State& state) {
  const auto order = static_cast<unsigned>(state.range(0));
  const Rational c(Integer(45), Integer(64));
  for (auto _ : state) {
    benchmark::DoNotOptimize(chsh_statistic({order, 0, {c, c}, {1, -1}}, {order, 1, {c, c}, {1, 1}}));
  }
}
BENCHMARK(BM_ChshLayout)->Arg(8)->Arg(12)->Arg(16);

static void BM_DiracEvolve(benchmark::State& state) {
  const auto order = static_cast<unsigned>(state.range(0));
  std::vector<Symbol> s(std::size_t{1} << order, Symbol::NotA);
  s[0] = Symbol::A;
  const DiracState start{SpinorPair{BitString(order, s), BitString(order, s)}, 3, 0};
  long long t = 0;
  for (auto _ : state) benchmark::DoNotOptimize(dirac_evolve(start, ++t));
}
BENCHMARK(BM_DiracEvolve)->Arg(8)->Arg(16);

static void BM_PbrProbabilities(benchmark::State& state) {
  const auto angles = PbrAngles::from_offset(PiRational(1, 2), CosineValue{Rational(Integer(1), Integer(2))},
                                             CosineValue{Rational(Integer(3), Integer(4))});
  for (auto _ : state) benchmark::DoNotOptimize(pbr_probabilities(angles));
}
BENCHMARK(BM_PbrProbabilities);

static void BM_RubanFrequency(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(ruban_frequency_test(3, 64, 1000, 11));
}
BENCHMARK(BM_RubanFrequency);
BENCHMARK_MAIN();
