#include <gtest/gtest.h>

#include "generators.hpp"
#include "invset/errors.hpp"
#include "invset/hilbertbits.hpp"

using namespace invset;

namespace {
Rational q(long a, long b) { return Rational(Integer(a), Integer(b)); }
BitString bits(const char* s) { return BitString::parse(s); }
}  // namespace

TEST(BitString, ParseAndRender) {
  const auto s = bits("11101000");
  EXPECT_EQ(s.order(), 3u);
  EXPECT_EQ(s.str(), "11101000");
  EXPECT_EQ(s.count(Symbol::A), 4u);
  EXPECT_EQ(s.run_length(), "1x3,0x1,1x1,0x3");
  EXPECT_THROW(BitString::parse("101"), std::invalid_argument);
  EXPECT_THROW(BitString::parse("10x1"), std::invalid_argument);
}

TEST(Zeta, Examples) {
  EXPECT_EQ(zeta(bits("1100"), 1), bits("0110"));
  EXPECT_EQ(zeta(bits("1100"), -1), bits("1001"));
  EXPECT_EQ(zeta(bits("1000"), 3), bits("0001"));
  EXPECT_EQ(zeta(bits("10110010"), 8), bits("10110010"));
}

TEST(Zeta, GroupLawProperty) {
  Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    const unsigned N = static_cast<unsigned>(rng.between(0, 8));
    const auto s = gen::bit_string(rng, N);
    const long long a = rng.between(-600, 600), b = rng.between(-600, 600);
    EXPECT_EQ(zeta(zeta(s, a), b), zeta(s, a + b));
    EXPECT_EQ(zeta(s, 1LL << N), s);
    EXPECT_EQ(zeta(zeta(s, a), -a), s);
    EXPECT_EQ(zeta(s, a).count(Symbol::A), s.count(Symbol::A));
    EXPECT_EQ(complement(complement(s)), s);
    EXPECT_EQ(zeta(complement(s), a), complement(zeta(s, a)));
  }
}

TEST(SplitConcat, RoundTripProperty) {
  Rng rng(12);
  for (int i = 0; i < 200; ++i) {
    const auto s = gen::bit_string(rng, static_cast<unsigned>(rng.between(1, 8)));
    const auto [h1, h2] = split_halves(s);
    EXPECT_EQ(concat(h1, h2), s);
  }
}

TEST(OneQubit, BuildExamples) {
  EXPECT_EQ(build_one_qubit({3, 3, 0}), bits("11100000"));
  EXPECT_EQ(build_one_qubit({3, 3, 2}), bits("00111000"));
  EXPECT_EQ(build_one_qubit({2, 4, 1}), bits("1111"));
  EXPECT_EQ(born_probability(build_one_qubit({3, 3, 2})), q(3, 8));
}

TEST(OneQubit, BornRuleIsExactAndPhaseInvariantProperty) {
  Rng rng(13);
  for (int i = 0; i < 1000; ++i) {
    const unsigned N = static_cast<unsigned>(rng.between(1, 12));
    const std::uint64_t L = std::uint64_t{1} << N;
    const std::uint64_t w = rng.below(L + 1);
    const std::uint64_t n1 = rng.below(L), n2 = rng.below(L);
    const auto a = build_one_qubit({N, w, n1});
    const auto b = build_one_qubit({N, w, n2});
    EXPECT_EQ(born_probability(a), Rational(Integer(static_cast<unsigned long>(w)), Integer(1) << N));
    EXPECT_EQ(born_probability(a), born_probability(b));
  }
}

TEST(OneQubit, DecodeInvertsBuildProperty) {
  Rng rng(14);
  for (int i = 0; i < 1000; ++i) {
    const unsigned N = static_cast<unsigned>(rng.between(1, 10));
    const std::uint64_t L = std::uint64_t{1} << N;
    const std::uint64_t w = rng.below(L + 1);
    const OneQubitSpec spec{N, w, (w == 0 || w == L) ? 0 : rng.below(L)};
    EXPECT_EQ(decode_one_qubit(build_one_qubit(spec)), spec);
  }
  EXPECT_THROW(decode_one_qubit(bits("1010")), std::invalid_argument);
}

TEST(TwoQubit, FormAWorkedExample) {
  // N = 3, c1 = 1/2, c2 = 3/4, c3 = 1/4
  const auto s = build_two_qubit_formA(3, {q(1, 2), q(3, 4), q(1, 4)});
  EXPECT_EQ(s.sa(), bits("11110000"));
  EXPECT_EQ(s.sb(), bits("11101000"));
  EXPECT_EQ(joint_frequency(s, Symbol::A, Symbol::A), q(3, 8));
  const std::array<Rational, 4> expected{q(3, 8), q(1, 8), q(1, 8), q(3, 8)};
  EXPECT_EQ(joint_frequencies(s), expected);
}

TEST(TwoQubit, FormBMirrorsFormA) {
  const auto a = build_two_qubit_formA(3, {q(1, 2), q(3, 4), q(1, 4)});
  const auto b = build_two_qubit_formB(3, {q(3, 4), q(1, 4), q(1, 2)});
  EXPECT_EQ(b.sb(), bits("11110000"));
  EXPECT_EQ(b.sa(), bits("11101000"));
  EXPECT_EQ(joint_frequencies(a), joint_frequencies(b));
}

TEST(TwoQubit, NotRepresentableBlocks) {
  EXPECT_THROW(build_two_qubit_formA(2, {q(1, 3), q(1, 2), q(1, 2)}), NotRepresentable);
  EXPECT_THROW(build_two_qubit_formA(2, {q(1, 2), q(1, 4), q(1, 2)}), NotRepresentable);
  EXPECT_NO_THROW(build_two_qubit_formA(3, {q(1, 2), q(1, 4), q(1, 2)}));
}

TEST(TwoQubit, JointFrequenciesArePhaseInvariantProperty) {
  Rng rng(15);
  for (int i = 0; i < 500; ++i) {
    const auto c = gen::representable_formA(rng, 8);
    const auto rotated = build_two_qubit_formA(c.order, c.weights, c.phases);
    const auto plain = build_two_qubit_formA(c.order, c.weights);
    EXPECT_EQ(joint_frequencies(rotated), joint_frequencies(plain));
    // the frequencies are the squared amplitudes of the form-A expansion
    const auto& w = c.weights;
    const Rational one(1);
    const std::array<Rational, 4> amp{w[0] * w[1], w[0] * (one - w[1]), (one - w[0]) * w[2],
                                      (one - w[0]) * (one - w[2])};
    EXPECT_EQ(joint_frequencies(plain), amp);
  }
}

TEST(TwoQubit, ConversionPreservesJointFrequenciesProperty) {
  Rng rng(16);
  for (int i = 0; i < 500; ++i) {
    const auto c = gen::convertible_formA(rng, 8);
    const auto a = build_two_qubit_formA(c.order, c.weights, c.phases);
    const auto b = convert_formA_to_formB(a);
    EXPECT_EQ(b.layout().form, TwoQubitForm::B);
    EXPECT_EQ(joint_frequencies(a), joint_frequencies(b));
    EXPECT_EQ(correlation(a), correlation(b));
  }
}

TEST(TwoQubit, ConversionRefusesNonDyadicFormB) {
  // blocks (2, 2, 1, 3) at N = 3: c4 = 2/3
  const auto a = build_two_qubit_formA(3, {q(1, 2), q(1, 2), q(1, 4)});
  EXPECT_EQ(formB_weights_from_formA(a.layout().weights)[0], q(2, 3));
  EXPECT_THROW(convert_formA_to_formB(a), NotRepresentable);
}

TEST(TwoQubit, ProductStatesFactoriseProperty) {
  Rng rng(17);
  for (int i = 0; i < 300; ++i) {
    const unsigned N = static_cast<unsigned>(rng.between(2, 10));
    const unsigned k1 = static_cast<unsigned>(rng.between(0, N / 2)), k2 = N - k1;
    const Rational c1(Integer(static_cast<long>(rng.between(0, 1L << k1))), Integer(1) << k1);
    const Rational c2(Integer(static_cast<long>(rng.between(0, 1L << k2))), Integer(1) << k2);
    const auto s = build_two_qubit_formA(N, {c1, c2, c2});
    const auto pa = born_probability(s.sa()), pb = born_probability(s.sb());
    EXPECT_EQ(pa, c1);
    EXPECT_EQ(pb, c2);
    EXPECT_EQ(joint_frequency(s, Symbol::A, Symbol::A), pa * pb);
    EXPECT_EQ(joint_frequency(s, Symbol::NotA, Symbol::NotA), (Rational(1) - pa) * (Rational(1) - pb));
  }
}

TEST(Bell, LayoutCorrelation) {
  // cos^2(theta2/2) = 3/4
  const auto s = build_bell_layout(3, q(1, 2));
  EXPECT_EQ(s.sa(), bits("11110000"));
  EXPECT_EQ(s.sb(), bits("11101000"));
  EXPECT_EQ(correlation(s), q(1, 2));
  EXPECT_EQ(correlation(anti_correlated(s)), q(-1, 2));
}

TEST(Bell, CorrelationEqualsCosineProperty) {
  Rng rng(18);
  for (int i = 0; i < 500; ++i) {
    const unsigned N = static_cast<unsigned>(rng.between(2, 12));
    const auto c = gen::dyadic_cosine(rng, 0, N - 2);
    const auto s = build_bell_layout(N, c);
    EXPECT_EQ(correlation(s), c);
    EXPECT_EQ(correlation(anti_correlated(s)), -c);
    EXPECT_EQ(born_probability(s.sa()), q(1, 2));
  }
  EXPECT_THROW(build_bell_layout(3, q(1, 8)), NotRepresentable);
}

TEST(Pauli, Examples) {
  const auto s = bits("11000100");
  EXPECT_EQ(pauli_apply(1, s), bits("01001100"));
  EXPECT_EQ(pauli_apply(3, s), bits("11001011"));
  // sigma2 at N = 3: q = 1, h1 = 1100, h2 = 0100
  EXPECT_EQ(pauli_apply(2, s), bits("11010110"));
  EXPECT_THROW(pauli_apply(2, bits("1100")), std::invalid_argument);
  EXPECT_THROW(pauli_apply(4, s), std::invalid_argument);
}

TEST(Pauli, AlgebraProperty) {
  Rng rng(19);
  for (int i = 0; i < 300; ++i) {
    const unsigned N = static_cast<unsigned>(rng.between(3, 10));
    const auto s = gen::bit_string(rng, N);
    EXPECT_EQ(pauli_apply(1, pauli_apply(1, s)), s);
    EXPECT_EQ(pauli_apply(3, pauli_apply(3, s)), s);
    const auto twice = pauli_apply(2, pauli_apply(2, s));
    EXPECT_EQ(pauli_apply(2, pauli_apply(2, twice)), s);
    // sigma2^2 = -1: complement and a half turn of each half string
    const std::size_t half = s.size() / 2;
    const auto minus = complement(rotate_block(rotate_block(s, 0, half, half / 2), half, half, half / 2));
    EXPECT_EQ(twice, minus);
    const SpinorPair pair{s, gen::bit_string(rng, N)};
    EXPECT_EQ(pauli_apply(1, pauli_apply(1, pair)), pair);
  }
}
