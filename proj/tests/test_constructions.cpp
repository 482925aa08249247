#include "rr/constructions.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <unordered_set>

using namespace rr;

namespace {
template <class T>
std::size_t distinct(const std::vector<T>& v) {
  return std::set<T>(v.begin(), v.end()).size();
}
}  // namespace

TEST(EBeta, SquarePattern) {
  const auto d = digits_E_beta(2, Rational(1, 2), {}, 20);
  EXPECT_EQ(d[0], 1u);
  EXPECT_EQ(d[3], 2u);
  EXPECT_EQ(d[8], 3u);
  EXPECT_EQ(d[15], 4u);
  for (std::size_t i : {1, 2, 4, 5, 6, 7, 9, 10}) EXPECT_EQ(d[i], 1u) << "position " << i + 1;
}

TEST(EBeta, RangeCount) {
  const auto d = digits_E_beta(2, Rational(1, 2), {}, 10000);
  EXPECT_NEAR(static_cast<double>(distinct(d)), 100.0, 2.0);
}

TEST(EBeta, SeededFillerBounded) {
  const auto d = digits_E_beta(3, Rational(1, 2), {Filler::Kind::seeded, 42}, 10000);
  EXPECT_EQ(validate_E_beta(d, 3, Rational(1, 2)), 0u);
  std::set<std::uint64_t> fill;
  for (std::size_t i = 1; i <= d.size(); ++i) {
    const auto r = static_cast<std::uint64_t>(std::llround(std::sqrt(double(i))));
    if (r * r != i) fill.insert(d[i - 1]);
  }
  EXPECT_EQ(fill, (std::set<std::uint64_t>{1, 2, 3}));
}

TEST(EBeta, ValidatorAcceptsAndRejects) {
  for (auto beta : {Rational(1, 4), Rational(1, 3), Rational(1, 2), Rational(2, 3), Rational(3, 4)}) {
    const auto d = digits_E_beta(2, beta, {}, 5000);
    EXPECT_EQ(validate_E_beta(d, 2, beta), 0u) << beta;
  }
  auto d = digits_E_beta(2, Rational(1, 2), {}, 100);
  d[48] = 6;  // position 49 should carry 7
  EXPECT_EQ(validate_E_beta(d, 2, Rational(1, 2)), 49u);
  d = digits_E_beta(2, Rational(1, 2), {}, 100);
  d[49] = 3;  // filler above B
  EXPECT_EQ(validate_E_beta(d, 2, Rational(1, 2)), 50u);
}

TEST(EBeta, GrowthExponent) {
  for (auto beta : {Rational(1, 4), Rational(1, 2), Rational(3, 4)}) {
    const auto d = digits_E_beta(2, beta, {}, 10000);
    const double e = std::log(static_cast<double>(distinct(d))) / std::log(10000.0);
    EXPECT_NEAR(e, beta.convert_to<double>(), 0.03) << beta;
  }
}

TEST(EBeta, Errors) {
  EXPECT_THROW(EBetaStream(2, Rational(1), {}), std::invalid_argument);
  EXPECT_THROW(EBetaStream(2, Rational(0), {}), std::invalid_argument);
  EXPECT_THROW(EBetaStream(1, Rational(1, 2), {}), std::invalid_argument);
}

TEST(Fc, AllSpecialWhenCIsOne) {
  const auto d = digits_F_c(Rational(1), 10);
  for (std::size_t i = 0; i < d.size(); ++i) EXPECT_EQ(d[i], BigInt(1) << (i + 1));
  EXPECT_EQ(distinct(digits_F_c(Rational(1), 1000)), 1000u);
}

TEST(Fc, DensityOfSpecials) {
  const auto half = digits_F_c(Rational(1, 2), 10000);
  EXPECT_EQ(half[1], BigInt(2));
  EXPECT_EQ(half[3], BigInt(4));
  EXPECT_EQ(half[2], BigInt(1));
  EXPECT_NEAR(distinct(half) / 1e4, 0.5, 0.001);
  EXPECT_NEAR(distinct(digits_F_c(Rational(1, 3), 30000)) / 3e4, 1.0 / 3, 0.001);
  EXPECT_THROW(digits_F_c(Rational(3, 2), 5), std::invalid_argument);
}

TEST(EMinus2, FirstDigits) {
  EXPECT_EQ(digits_e_minus_2(12), (std::vector<std::uint64_t>{1, 2, 1, 1, 4, 1, 1, 6, 1, 1, 8, 1}));
}

TEST(EMinus2, PatternAgreesWithOracle) {
  const Word oracle = e_minus_2_oracle(200);
  ASSERT_EQ(oracle.size(), 200u);
  const auto d = digits_e_minus_2(200);
  for (std::size_t i = 0; i < 200; ++i) EXPECT_EQ(BigInt(d[i]), oracle[i]) << "position " << i + 1;
}

TEST(EMinus2, BracketContainsE) {
  auto [lo, hi] = e_minus_2_bracket(30);
  EXPECT_LT(lo.convert_to<double>(), std::exp(1.0) - 2 + 1e-15);
  EXPECT_GT(hi.convert_to<double>(), std::exp(1.0) - 2 - 1e-15);
  EXPECT_LT(hi - lo, Rational(1, BigInt("1000000000000000000000000000000")));
}

TEST(EMinus2, DistinctCounts) {
  for (std::size_t m : {1, 5, 40}) EXPECT_EQ(distinct(digits_e_minus_2(3 * m + 1)), m + 1);
  EXPECT_NEAR(distinct(digits_e_minus_2(30000)) / 3e4, 1.0 / 3, 0.01);
}

TEST(GoodSigma, TwoByTwoRoot) {
  const double s = good_sigma_n(2, 2, 1e-12);
  EXPECT_NEAR(s, 0.6544985923302193, 1e-10);
  const double sum = 2 * std::pow(9.0, -s) + std::pow(4.0, -s) + std::pow(25.0, -s);
  EXPECT_NEAR(sum, 1.0, 1e-10);
}

TEST(GoodSigma, Oracles) {
  EXPECT_NEAR(good_sigma_n(2, 3, 1e-12), 0.6225458054054917, 1e-10);
  EXPECT_NEAR(good_sigma_n(2, 4, 1e-12), 0.5930143264490958, 1e-10);
  EXPECT_NEAR(good_sigma_n(2, 5, 1e-12), 0.5802280587146418, 1e-10);
  EXPECT_NEAR(good_sigma_n(3, 3, 1e-12), 0.7993405661893229, 1e-10);
  EXPECT_NEAR(good_sigma_n(8, 3, 1e-12), 0.9853719287233942, 1e-10);
}

TEST(GoodSigma, RootIsUniqueBySignChange) {
  const double tol = 1e-9;
  const double s = good_sigma_n(3, 4, tol);
  const auto hist = good_denominators(3, 4);
  EXPECT_LE(std::fabs(static_cast<double>(good_excess(hist, s))), tol);
  EXPECT_GT(good_excess(hist, s - 10 * tol), 0);
  EXPECT_LT(good_excess(hist, s + 10 * tol), 0);
}

TEST(GoodSigma, Monotone) {
  double prev = 0;
  for (std::uint64_t B = 2; B <= 8; ++B) {
    const double s = good_sigma_n(B, 3, 1e-12);
    EXPECT_GT(s, prev) << "B=" << B;
    prev = s;
  }
  prev = 2;
  for (std::size_t n = 2; n <= 5; ++n) {
    const double s = good_sigma_n(2, n, 1e-12);
    EXPECT_LT(s, prev) << "n=" << n;
    prev = s;
  }
}

TEST(GoodSigma, Errors) {
  try {
    good_sigma_n(2, 1, 1e-8);
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_STREQ(e.what(), "no root: degenerate stage");
  }
  try {
    good_sigma_n(101, 4, 1e-8);
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_STREQ(e.what(), "enumeration too large");
  }
}

TEST(Pressure, CountsAndSingleMap) {
  IfsStage s{1, {IfsMap({BigInt(1)}), IfsMap({BigInt(2)})}};
  EXPECT_DOUBLE_EQ(pressure_Zn({s}, 0.0), 2.0);
  IfsMap m({BigInt(7)});
  EXPECT_NEAR(std::exp(m.log_sup_norm()), 1.0 / 49, 1e-18);
  EXPECT_NEAR(pressure_Zn({IfsStage{1, {m}}}, 1.0), 1.0 / 49, 1e-16);
}

TEST(Pressure, TwoGStagesMatchBruteForceComposition) {
  const std::vector<IfsStage> stages{make_G_stage(1), make_G_stage(2)};
  for (double t : {0.3, 0.5, 1.0}) {
    // phi_k(x) = 1/(k + x); (phi_a o phi_b)'(x) = phi_a'(phi_b(x)) phi_b'(x);
    // the sup over [0,1] of a Mobius derivative sits at an endpoint.
    long double brute = 0;
    for (int a = 2; a < 4; ++a) {
      for (int b = 4; b < 8; ++b) {
        long double best = 0;
        for (long double x : {0.0L, 1.0L}) {
          const long double inner = 1 / (b + x);
          const long double d = (1 / ((a + inner) * (a + inner))) * (1 / ((b + x) * (b + x)));
          best = std::max(best, d);
        }
        brute += std::pow(best, static_cast<long double>(t));
      }
    }
    EXPECT_NEAR(pressure_Zn(stages, t), static_cast<double>(brute), 1e-14) << "t=" << t;
  }
}

TEST(Pressure, GapsOfOnesForSmallC) {
  const auto st = make_G_stage(2, Rational(1, 3));  // K_2 - K_1 - 1 = 6 - 3 - 1 = 2
  ASSERT_EQ(st.maps.size(), 4u);
  EXPECT_EQ(st.maps[0].block, (Word{BigInt(1), BigInt(1), BigInt(4)}));
}

TEST(GRates, ConvergeToTwoLogTwo) {
  const double l2 = std::log(2.0);
  for (std::size_t n : {1, 5, 30}) EXPECT_EQ(ifs_rates_G(n).a_n, l2) << "n=" << n;
  const auto r = ifs_rates_G(30);
  EXPECT_NEAR(r.b_min / (2 * l2), 1.0, 0.05);
  EXPECT_NEAR(r.b_max / (2 * l2), 1.0, 0.05);
  EXPECT_NEAR(r.a_n / r.b_min / 0.5, 1.0, 0.05);
  EXPECT_NEAR(r.a_n / r.b_max / 0.5, 1.0, 0.05);
  EXPECT_LT(ifs_rates_G(60).b_max, ifs_rates_G(30).b_max);
}

TEST(GRates, MatchListedStage) {
  const auto st = make_G_stage(6);
  long double lo = 1e9, hi = -1e9;
  for (const auto& m : st.maps) {
    lo = std::min(lo, -m.log_sup_norm() / 6);
    hi = std::max(hi, -m.log_sup_norm() / 6);
  }
  const auto r = ifs_rates_G(6);
  EXPECT_NEAR(r.b_min, static_cast<double>(lo), 1e-15);
  EXPECT_NEAR(r.b_max, static_cast<double>(hi), 1e-15);
}
