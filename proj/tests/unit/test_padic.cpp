#include <gtest/gtest.h>

#include "generators.hpp"
#include "oracles.hpp"
#include "invset/padic.hpp"

using namespace invset;

TEST(Ord, Examples) {
  EXPECT_EQ(ord_p(Rational(12), 2), 2);
  EXPECT_EQ(ord_p(Rational(Integer(3), Integer(8)), 2), -3);
  EXPECT_EQ(ord_p(Rational(0), 5), std::nullopt);
  EXPECT_THROW(ord_p(Rational(3), 4), std::invalid_argument);
}

TEST(Norm, Examples) {
  EXPECT_EQ(padic_norm(Rational(12), 2), Rational(Integer(1), Integer(4)));
  EXPECT_EQ(padic_norm(Rational(0), 3), Rational(0));
  EXPECT_EQ(padic_norm(Rational(Integer(1), Integer(9)), 3), Rational(9));
}

TEST(Dist, WorkedValues) {
  EXPECT_EQ(padic_dist(Rational(1 + 2 + 4), Rational(1 + 2), 2), Rational(Integer(1), Integer(4)));
  EXPECT_EQ(padic_dist(Rational(1 + 2 + 4 + 8), Rational(1 + 2 + 4), 2), Rational(Integer(1), Integer(8)));
  EXPECT_EQ(padic_dist(Rational(7), Rational(7), 2), Rational(0));
  EXPECT_EQ(padic_dist(Rational(Integer(1), Integer(3)), Rational(0), 2), Rational(1));
}

TEST(Dist, AgreesWithNaiveOracleProperty) {
  Rng rng(101);
  for (unsigned p : {2u, 3u, 5u, 7u}) {
    for (int i = 0; i < 1000; ++i) {
      const long long an = rng.between(-999, 999), ad = rng.between(1, 999);
      const long long bn = rng.between(-999, 999), bd = rng.between(1, 999);
      const Rational a(Integer(static_cast<long>(an)), Integer(static_cast<long>(ad)));
      const Rational b(Integer(static_cast<long>(bn)), Integer(static_cast<long>(bd)));
      EXPECT_EQ(padic_dist(a, b, p), oracle::padic_dist_naive(an, ad, bn, bd, p));
    }
  }
}

TEST(Dist, UltrametricProperty) {
  Rng rng(202);
  for (unsigned p : {2u, 3u, 5u}) {
    for (int i = 0; i < 3000; ++i) {
      const auto a = gen::padic_spread(rng, p), b = gen::padic_spread(rng, p), c = gen::padic_spread(rng, p);
      const auto ab = padic_dist(a, b, p), bc = padic_dist(b, c, p), ac = padic_dist(a, c, p);
      ASSERT_LE(ac, std::max(ab, bc)) << a.str() << " " << b.str() << " " << c.str() << " p=" << p;
      // isosceles: the two largest sides agree
      if (ab != bc) EXPECT_EQ(ac, std::max(ab, bc));
      EXPECT_EQ(ab, padic_dist(b, a, p));
    }
  }
}

TEST(Dist, NormIsMultiplicativeProperty) {
  Rng rng(303);
  for (unsigned p : {2u, 3u, 5u}) {
    for (int i = 0; i < 1000; ++i) {
      const auto a = gen::padic_spread(rng, p), b = gen::padic_spread(rng, p);
      EXPECT_EQ(padic_norm(a * b, p), padic_norm(a, p) * padic_norm(b, p));
    }
  }
}

TEST(PAdicInt, FromRationalDigits) {
  // -1 = ...1111 in Z_2
  const auto minus_one = PAdicInt::from_rational(Rational(-1), 2, 8);
  for (auto d : minus_one.digits()) EXPECT_EQ(d, 1u);
  // 1/3 in Z_2: 3 * x = 1 mod 2^K
  const auto third = PAdicInt::from_rational(Rational(Integer(1), Integer(3)), 2, 16);
  EXPECT_EQ((third.value() * 3) % (Integer(1) << 16), 1);
  EXPECT_THROW(PAdicInt::from_rational(Rational(Integer(1), Integer(2)), 2, 8), std::invalid_argument);
}

TEST(PAdicInt, FromRationalCongruenceProperty) {
  Rng rng(404);
  for (unsigned p : {2u, 3u, 5u, 7u}) {
    for (int i = 0; i < 300; ++i) {
      const auto x = gen::rational(rng, 500);
      if (mpz_divisible_ui_p(x.denominator().get_mpz_t(), p)) continue;
      const unsigned K = static_cast<unsigned>(rng.between(1, 40));
      const auto z = PAdicInt::from_rational(x, p, K);
      Integer pk;
      mpz_ui_pow_ui(pk.get_mpz_t(), p, K);
      // value * den == num (mod p^K)
      Integer diff = z.value() * x.denominator() - x.numerator();
      EXPECT_TRUE(mpz_divisible_p(diff.get_mpz_t(), pk.get_mpz_t()));
      for (auto d : z.digits()) EXPECT_LT(d, p);
    }
  }
}

TEST(Haar, DigitFrequencyWithinThreeSigma) {
  for (unsigned p : {2u, 3u, 5u}) {
    Rng rng(505 + p);
    std::vector<std::uint64_t> counts(p, 0);
    const unsigned K = 64, samples = 4000;
    for (unsigned i = 0; i < samples; ++i) {
      const auto z = PAdicInt::haar_sample(p, K, rng);
      for (auto d : z.digits()) ++counts[d];
    }
    const double total = double(K) * samples, q = 1.0 / p;
    const double sigma = std::sqrt(q * (1 - q) / total);
    for (auto c : counts) EXPECT_LT(std::fabs(c / total - q), 3 * sigma);
  }
}

TEST(Cantor, Examples) {
  EXPECT_EQ(cantor_embed(PAdicInt(2, {1, 1})).value, Rational(Integer(8), Integer(9)));
  EXPECT_EQ(cantor_embed(PAdicInt(2, {0, 0, 0})).value, Rational(0));
  EXPECT_EQ(cantor_embed(PAdicInt(3, {2})).value, Rational(Integer(4), Integer(5)));
}

TEST(Cantor, PreimageRoundTripProperty) {
  Rng rng(606);
  for (unsigned p : {2u, 3u, 5u}) {
    for (int i = 0; i < 300; ++i) {
      const unsigned K = static_cast<unsigned>(rng.between(1, 20));
      const auto z = PAdicInt::haar_sample(p, K, rng);
      const auto image = cantor_embed(z);
      const auto back = cantor_preimage(image.value, p, K);
      ASSERT_TRUE(back.has_value());
      EXPECT_EQ(*back, z);
    }
  }
  // odd base-3 digit: off the set
  EXPECT_FALSE(cantor_preimage(Rational(Integer(1), Integer(3)), 2, 1).has_value());
  EXPECT_FALSE(cantor_preimage(Rational(Integer(1), Integer(2)), 2, 5).has_value());
}

TEST(Cantor, EmbeddingIsOrderPreservingOnLeadingDigitProperty) {
  // points that agree in the first j digits are Euclidean-close: |F(a) - F(b)| < (2p-1)^-j
  Rng rng(707);
  for (int i = 0; i < 300; ++i) {
    const unsigned p = 2, K = 12;
    const auto a = PAdicInt::haar_sample(p, K, rng);
    auto digits = std::vector<std::uint32_t>(a.digits().begin(), a.digits().end());
    const unsigned j = static_cast<unsigned>(rng.between(1, K - 1));
    for (unsigned k = j; k < K; ++k) digits[k] = static_cast<std::uint32_t>(rng.below(p));
    const PAdicInt b(p, digits);
    const auto gap = (cantor_embed(a).value - cantor_embed(b).value).abs();
    EXPECT_LT(gap, Rational(Integer(1), Integer(3)).pow(j));
    EXPECT_LE(padic_dist(a, b), Rational(Integer(1), Integer(2)).pow(j));
  }
}

TEST(CantorDistances, AdjacentPointsAndGapMidpoint) {
  // adjacent depth-5 points: last digit differs; c sits in the gap between them
  const PAdicInt a(2, {0, 0, 0, 0, 0});
  const PAdicInt b(2, {0, 0, 0, 0, 1});
  const auto fa = cantor_embed(a).value, fb = cantor_embed(b).value;
  const Rational c = (fa + fb) / Rational(2);
  const auto cmp = compare_cantor_distances(a, b, c);
  EXPECT_FALSE(cmp.c_on_set);
  EXPECT_TRUE(cmp.euclid_c_closer);
  EXPECT_TRUE(cmp.padic_b_closer);
  EXPECT_LE(cmp.padic_ab, Rational(Integer(1), Integer(2)));
}

TEST(CantorDistances, RejectsOnSetPoint) {
  const PAdicInt a(2, {1, 0, 1});
  const PAdicInt b(2, {1, 1, 1});
  EXPECT_THROW(compare_cantor_distances(a, b, cantor_embed(b).value), std::invalid_argument);
  EXPECT_THROW(compare_cantor_distances(a, PAdicInt(3, {1, 1, 1}), Rational(Integer(1), Integer(7))),
               std::invalid_argument);
}

TEST(CantorDistances, RandomDepth8OrderingProperty) {
  Rng rng(808);
  int checked = 0;
  while (checked < 200) {
    const auto a = PAdicInt::haar_sample(2, 8, rng);
    const auto b = PAdicInt::haar_sample(2, 8, rng);
    if (a == b) continue;
    const auto fa = cantor_embed(a).value, fb = cantor_embed(b).value;
    const Rational c = (fa + fb) / Rational(2);
    if (cantor_preimage(c, 2, 8)) continue;
    const auto cmp = compare_cantor_distances(a, b, c);
    EXPECT_TRUE(cmp.euclid_c_closer);
    EXPECT_TRUE(cmp.padic_b_closer);
    ++checked;
  }
}
