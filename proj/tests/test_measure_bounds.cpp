#include "rr/measure_bounds.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace rr;

namespace {
Word W(std::initializer_list<long long> d) {
  Word w;
  for (auto v : d) w.emplace_back(v);
  return w;
}
const double kLn2 = std::log(2.0);
}  // namespace

TEST(QuasiIndependence, OnesPair) {
  EXPECT_NEAR(quasi_independence_ratio({{1}, {1}}), 0.8824248933521042, 1e-13);
}

TEST(QuasiIndependence, Extremes) {
  EXPECT_NEAR(quasi_independence_ratio({{1000}, {1000}}), kLn2, 1e-3);
  EXPECT_NEAR(quasi_independence_ratio({{1000}, {1, 1000}}), 2 * kLn2, 1e-2);
}

TEST(QuasiIndependence, EmptyWordRejected) { EXPECT_THROW(WordPair(Word{}, W({1})), std::invalid_argument); }

TEST(LengthRatio, HandValues) {
  EXPECT_EQ(length_ratio({{1}, {1}}), Rational(2, 3));
  EXPECT_EQ(length_ratio({{2}, {2}}), Rational(36, 35));
}

TEST(LengthRatio, ExtremesApproached) {
  double lo = 10, hi = 0;
  for (long long a : {1, 10, 100, 1000}) {
    for (long long b : {1, 10, 100, 1000}) {
      const double r = length_ratio({{a}, {b}}).convert_to<double>();
      lo = std::min(lo, r);
      hi = std::max(hi, r);
      const double r2 = length_ratio({{a}, {1, b}}).convert_to<double>();
      lo = std::min(lo, r2);
      hi = std::max(hi, r2);
    }
  }
  EXPECT_GE(lo, 0.5);
  EXPECT_LE(hi, 2.0);
  EXPECT_LT(lo, 0.51);
  EXPECT_GT(hi, 1.99);
}

TEST(MultiRatio, Extremes) {
  EXPECT_NEAR(multi_ratio({W({1000}), W({1000}), W({1000})}) / (kLn2 * kLn2), 1.0, 0.01);
  EXPECT_NEAR(multi_ratio({W({1, 1000}), W({1, 1000}), W({1, 1000})}) / (4 * kLn2 * kLn2), 1.0, 0.01);
  EXPECT_DOUBLE_EQ(multi_ratio({W({3, 1}), W({2})}), quasi_independence_ratio({{3, 1}, {2}}));
  EXPECT_THROW(multi_ratio({W({1})}), std::invalid_argument);
}

TEST(Comparison, Examples) {
  EXPECT_TRUE(comparison_check(W({2, 3}), W({1, 1})));
  EXPECT_TRUE(comparison_check(W({4, 1, 7}), W({4, 1, 7})));
  EXPECT_THROW(comparison_check(W({1, 3}), W({2, 1})), std::invalid_argument);
  EXPECT_THROW(comparison_check(W({1}), W({1, 1})), std::invalid_argument);
}

TEST(QRatio, Examples) {
  EXPECT_EQ(q_ratio(W({2, 3}), 1), Rational(7, 3));
  EXPECT_TRUE(q_ratio_within_bounds(W({2, 3}), 1));
  EXPECT_EQ(q_ratio(W({9}), 1), Rational(9));
  EXPECT_TRUE(q_ratio_within_bounds(W({9}), 1));
  EXPECT_THROW(q_ratio(W({1, 2}), 3), std::invalid_argument);
}

TEST(Scans, QRatioAndMultiRatio) {
  const auto q = scan_q_ratio();
  EXPECT_GT(q.cases, 0u);
  EXPECT_EQ(q.violations, 0u);
  const auto m = scan_multi_ratio();
  EXPECT_GT(m.cases, 0u);
  EXPECT_EQ(m.violations, 0u);
}

TEST(Scans, SmallQuasiIndependenceAndComparison) {
  ScanOptions opt;
  opt.max_digit = 12;
  opt.dense_digit = 4;
  opt.random_pairs = 20000;
  opt.comparison_digit = 8;
  opt.comparison_samples = 2000;
  opt.comparison_fuzz = 500;
  auto [mu, len] = scan_quasi_independence(opt);
  EXPECT_EQ(mu.violations, 0u);
  EXPECT_EQ(len.violations, 0u);
  EXPECT_GE(mu.min, kLn2);
  EXPECT_LE(mu.max, 2 * kLn2);
  const auto cmp = scan_comparison(opt);
  EXPECT_GT(cmp.cases, 0u);
  EXPECT_EQ(cmp.violations, 0u);
}

TEST(MixingBracket, LiteralEnumerationInvariants) {
  const auto b = mixing_bracket({{1}, {1}}, 1, 1000);
  EXPECT_LE(b.lower, b.upper);
  EXPECT_NEAR(b.upper - b.lower, b.unenumerated_mass, 1e-15);
  // omitted mass is {a_1 = 1, a_2 > 1000} = (1001/1002, 1)
  EXPECT_NEAR(b.width(), std::log2(2004.0 / 2003.0), 1e-15);
  const auto wide = mixing_bracket({{1}, {1}}, 2, 2);
  EXPECT_LE(wide.lower, wide.upper);
  EXPECT_GT(wide.width(), 0.1 * wide.product);
  EXPECT_THROW(mixing_bracket({{1}, {1}}, 0, 10), std::invalid_argument);
  EXPECT_THROW(mixing_bracket({{1}, {1}}, 1, 1), std::invalid_argument);
  EXPECT_THROW(mixing_bracket({{1}, {1}}, 3, 1000), std::invalid_argument);
}

TEST(MixingBracket, LiteralNestsAsCapGrows) {
  MixingBracket prev = mixing_bracket({{1}, {2}}, 2, 4);
  for (std::uint64_t cap : {8, 16, 64, 256}) {
    const auto b = mixing_bracket({{1}, {2}}, 2, cap);
    EXPECT_TRUE(prev.contains(b)) << "cap " << cap;
    prev = b;
  }
}

TEST(MixingBracket, RefinedWidthAtLevelOne) {
  const auto b = mixing_bracket_refined({{1}, {1}}, 1, 1000);
  EXPECT_LT(b.width(), 1e-3 * Cylinder({1}).gauss_measure());
  // the transfer-operator oracle gives ratio - 1 = 0.03670548 at one separating digit
  EXPECT_LE(b.ratio_lower(), 1.03670548);
  EXPECT_GE(b.ratio_upper(), 1.03670548);
}

TEST(MixingBracket, RefinedContainsOracleValues) {
  const double oracle[] = {0.03670548, -0.011042035, 0.0033634467, -0.0010203025, 3.0993404e-4, -9.4104869e-5};
  for (int L = 1; L <= 6; ++L) {
    const auto b = mixing_bracket_refined({{1}, {1}}, L, 1000);
    EXPECT_LE(b.ratio_lower() - 1, oracle[L - 1] + 1e-9) << "L=" << L;
    EXPECT_GE(b.ratio_upper() - 1, oracle[L - 1] - 1e-9) << "L=" << L;
  }
}

TEST(MixingBracket, RefinedNestsAsCapGrows) {
  for (int L : {1, 3}) {
    MixingBracket prev = mixing_bracket_refined({{1}, {1}}, L, 2);
    for (std::uint64_t cap : {10, 100, 1000}) {
      const auto b = mixing_bracket_refined({{1}, {1}}, L, cap);
      EXPECT_TRUE(prev.contains(b)) << "L=" << L << " cap " << cap;
      prev = b;
    }
  }
}

TEST(MixingBracket, RefinedAgreesWithLiteral) {
  for (int L : {1, 2}) {
    const auto lit = mixing_bracket({{2}, {1, 3}}, L, 300);
    const auto ref = mixing_bracket_refined({{2}, {1, 3}}, L, 300);
    EXPECT_LE(std::max(lit.lower, ref.lower), std::min(lit.upper, ref.upper)) << "L=" << L;
  }
}

TEST(MixingBracket, DecayFromTwoToSix) {
  const auto b2 = mixing_bracket_refined({{1}, {1}}, 2, 1000);
  const auto b6 = mixing_bracket_refined({{1}, {1}}, 6, 1000);
  EXPECT_GE(b2.error_lower(), 5 * b6.error_upper());
  EXPECT_GE(std::abs(b2.ratio_midpoint() - 1), 5 * std::abs(b6.ratio_midpoint() - 1));
}
