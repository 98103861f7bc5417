#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "generators.hpp"
#include "oracles.hpp"
#include "invset/experiments.hpp"

using namespace invset;

namespace {
Rational q(long a, long b) { return Rational(Integer(a), Integer(b)); }

struct FloatXZ {
  oracle::Float x, z;
};

// X and Z straight from the closed forms, 100-digit floats
FloatXZ oracle_xz(const oracle::Float& theta, const oracle::Float& alpha, const oracle::Float& beta) {
  using oracle::Float;
  const Float c = cos(theta / 2), s = sin(theta / 2);
  const Float c2 = c * c, s2 = s * s, cs = c * s;
  const Float x = c2 * c2 + s2 * s2 + 2 * c2 * s2 * cos(alpha - 2 * beta);
  const Float z = x - 4 * c2 * s2 - 4 * c2 * cs * cos(alpha - beta) - 4 * s2 * cs * cos(beta);
  return {x, z};
}

oracle::Float radians(const PiRational& a) { return oracle::to_float(a.over_pi()) * oracle::pi(); }
}  // namespace

TEST(Pbr, XIsOneWhenAlphaIsTwiceBeta) {
  for (long m : {0L, 1L, 3L, 5L}) {
    const PiRational beta(m, 6);
    const auto p = pbr_probabilities(PbrAngles::from_alpha_beta(PiRational(1, 2), beta + beta, beta));
    ASSERT_TRUE(p.x.exact.has_value());
    EXPECT_EQ(*p.x.exact, QuadExtElement(Rational(1)));
  }
}

TEST(Pbr, ThetaZeroGivesCertainty) {
  const auto p = pbr_probabilities(PbrAngles::from_alpha_beta(PiRational(0, 1), PiRational(1, 3), PiRational(1, 4)));
  EXPECT_EQ(p.x.exact, QuadExtElement(Rational(1)));
  EXPECT_EQ(p.z.exact, QuadExtElement(Rational(1)));
}

TEST(Pbr, DyadicOffsetAndBetaWorkedExample) {
  const auto angles = PbrAngles::from_offset(PiRational(1, 2), CosineValue{q(1, 2)}, CosineValue{q(3, 4)});
  const auto p = pbr_probabilities(angles);
  EXPECT_EQ(p.x.exact, QuadExtElement(q(3, 4)));
  ASSERT_TRUE(p.z.exact.has_value());
  EXPECT_EQ(*p.z.exact, QuadExtElement(q(-11, 8), q(1, 8), Integer(21)));

  const auto r = pbr_describability_report(angles, 8);
  ASSERT_TRUE(r.cos_alpha_minus_beta.exact.has_value());
  EXPECT_EQ(r.cos_alpha_minus_beta.exact->radicand(), 21);
  EXPECT_EQ(r.cos_alpha_minus_beta.exact->q0(), q(3, 8));
  EXPECT_EQ(r.cos_alpha_minus_beta.kind, Describability::Irrational);
  EXPECT_EQ(r.cos_alpha_minus_2beta.kind, Describability::Dyadic);
  EXPECT_EQ(r.cos_beta.kind, Describability::Dyadic);
  EXPECT_TRUE(r.x_n_bit);
  EXPECT_FALSE(r.z_n_bit);
  EXPECT_FALSE(r.simultaneous);
  EXPECT_TRUE(r.incompatibility_certified);

  // independent: cos(alpha - beta) = cos(delta + beta) in floats
  const double d = std::acos(0.5), b = std::acos(0.75);
  EXPECT_NEAR(r.cos_alpha_minus_beta.exact->to_double(), std::cos(d + b), 1e-14);
  EXPECT_NEAR(p.z.approx, pbr_xz_numeric(std::numbers::pi / 2, d + 2 * b, b).second, 1e-12);
}

TEST(Pbr, BetaZeroIsDegenerate) {
  const auto angles = PbrAngles::from_alpha_beta(PiRational(1, 2), PiRational(1, 3), PiRational(0, 1));
  const auto r = pbr_describability_report(angles, 8);
  EXPECT_EQ(r.cos_alpha_minus_2beta.kind, Describability::Dyadic);
  EXPECT_EQ(r.cos_alpha_minus_beta.kind, Describability::Dyadic);
  EXPECT_FALSE(r.incompatibility_certified);
  EXPECT_EQ(pbr_probabilities(angles).x.exact, QuadExtElement(q(3, 4)));
}

TEST(Pbr, AlphaBetaZero) {
  // X = 1 and Z = 1 - 2 sin(theta) - sin^2(theta)
  const auto p = pbr_probabilities(PbrAngles::from_alpha_beta(PiRational(1, 3), PiRational(0, 1), PiRational(0, 1)));
  EXPECT_EQ(p.x.exact, QuadExtElement(Rational(1)));
  EXPECT_EQ(p.z.exact, QuadExtElement(q(1, 4), Rational(-1), Integer(3)));
  const auto half = pbr_probabilities(PbrAngles::from_alpha_beta(PiRational(1, 2), PiRational(0, 1), PiRational(0, 1)));
  EXPECT_EQ(half.z.exact, QuadExtElement(Rational(-2)));
}

TEST(Pbr, PiRationalOutsideTableIsIrrational) {
  const auto r = pbr_describability_report(
      PbrAngles::from_alpha_beta(PiRational(1, 2), PiRational(1, 7), PiRational(1, 8)), 8);
  EXPECT_EQ(r.cos_beta.kind, Describability::Irrational);
  EXPECT_FALSE(r.cos_beta.exact.has_value());
  EXPECT_FALSE(r.incompatibility_certified);
}

TEST(Pbr, MatchesHighPrecisionOracleProperty) {
  Rng rng(31);
  int exact_seen = 0;
  for (int i = 0; i < 100; ++i) {
    const auto draw = [&] { return PiRational(rng.between(0, 23), rng.between(1, 12)); };
    const PiRational t = draw(), a = draw(), b = draw();
    const auto p = pbr_probabilities(PbrAngles::from_alpha_beta(t, a, b));
    const auto o = oracle_xz(radians(t), radians(a), radians(b));
    const oracle::Float tol("1e-50");
    EXPECT_LT(abs(oracle::Float(p.x.decimal) - o.x), tol) << t.str() << " " << a.str() << " " << b.str();
    EXPECT_LT(abs(oracle::Float(p.z.decimal) - o.z), tol) << t.str() << " " << a.str() << " " << b.str();
    if (p.x.exact) {
      ++exact_seen;
      EXPECT_NEAR(p.x.exact->to_double(), static_cast<double>(o.x), 1e-12);
    }
    const auto [xd, zd] = pbr_xz_numeric(t.radians(), a.radians(), b.radians());
    EXPECT_NEAR(xd, static_cast<double>(o.x), 1e-12);
    EXPECT_NEAR(zd, static_cast<double>(o.z), 1e-12);
  }
  EXPECT_GT(exact_seen, 0);
}

TEST(Pbr, CosineInputsMatchOracleProperty) {
  Rng rng(32);
  for (int i = 0; i < 100; ++i) {
    const auto ct = gen::dyadic_cosine(rng, 1, 8), cd = gen::dyadic_cosine(rng, 1, 8), cb = gen::dyadic_cosine(rng, 1, 8);
    const auto p = pbr_probabilities(PbrAngles::from_offset(CosineValue{ct}, CosineValue{cd}, CosineValue{cb}));
    const oracle::Float th = acos(oracle::to_float(ct)), d = acos(oracle::to_float(cd)), b = acos(oracle::to_float(cb));
    const auto o = oracle_xz(th, d + 2 * b, b);
    EXPECT_NEAR(p.x.approx, static_cast<double>(o.x), 1e-12);
    EXPECT_NEAR(p.z.approx, static_cast<double>(o.z), 1e-12);
    // X depends only on theta and the offset: always exact here
    EXPECT_TRUE(p.x.exact.has_value());
  }
}

TEST(Pbr, ZRootNearPi) {
  const auto root = pbr_z_root_alpha(std::numbers::pi / 2, std::numbers::pi / 2, 2.5, 4.0);
  ASSERT_TRUE(root.has_value());
  EXPECT_NEAR(*root, std::numbers::pi, 1e-9);
  const auto [x, z] = pbr_xz_numeric(std::numbers::pi / 2, *root, std::numbers::pi / 2);
  EXPECT_NEAR(z, 0.0, 1e-12);
  EXPECT_NEAR(x, 1.0, 1e-12);
  const auto exact = pbr_probabilities(PbrAngles::from_alpha_beta(PiRational(1, 2), PiRational(1, 1), PiRational(1, 2)));
  EXPECT_EQ(exact.z.exact, QuadExtElement(Rational(0)));
  EXPECT_EQ(exact.x.exact, QuadExtElement(Rational(1)));
}

TEST(Pbr, NoRootWithoutSignChange) {
  EXPECT_FALSE(pbr_z_root_alpha(std::numbers::pi / 2, 0.3, 0.0, 2 * std::numbers::pi).has_value());
}
