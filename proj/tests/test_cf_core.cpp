#include "rr/cf_core.hpp"

#include <gtest/gtest.h>

using namespace rr;

namespace {
Word W(std::initializer_list<long long> d) {
  Word w;
  for (auto v : d) w.emplace_back(v);
  return w;
}
}  // namespace

TEST(Convergents, RecursionMatchesHandValues) {
  auto c = convergents_of(W({2, 3}));
  EXPECT_EQ(c.p_cur, 3);
  EXPECT_EQ(c.q_cur, 7);
  EXPECT_EQ(c.p_prev, 1);
  EXPECT_EQ(c.q_prev, 2);
  EXPECT_EQ(c.depth, 2u);
}

TEST(Convergents, DeterminantAlternates) {
  Word w;
  for (int i = 1; i <= 30; ++i) {
    w.emplace_back(i % 7 + 1);
    const BigInt expected = (w.size() % 2 == 1) ? 1 : -1;
    EXPECT_EQ(determinant(convergents_of(w)), expected) << "depth " << w.size();
  }
}

TEST(Convergents, RejectsZeroDigit) {
  EXPECT_THROW(push_digit(ConvergentState<BigInt>{}, BigInt(0)), std::domain_error);
}

TEST(Convergents, ConcatIsConvergentOfJoinedWord) {
  const Word x = W({3, 1, 4}), y = W({1, 5, 9, 2});
  Word xy = x;
  xy.insert(xy.end(), y.begin(), y.end());
  EXPECT_EQ(concat(convergents_of(x), convergents_of(y)), convergents_of(xy));
}

TEST(Convergents, NativeAndBigAgree) {
  const Word w = W({1, 2, 3, 4, 5, 6, 7});
  auto big = convergents_of<BigInt>(w);
  auto small = convergents_of<std::uint64_t>(std::vector<std::uint64_t>{1, 2, 3, 4, 5, 6, 7});
  EXPECT_EQ(big.q_cur, BigInt(small.q_cur));
  EXPECT_EQ(big.p_cur, BigInt(small.p_cur));
}

TEST(Cylinder, EndpointsOfFirstOrder) {
  auto [lo, hi] = Cylinder({2}).endpoints();
  EXPECT_EQ(lo, Rational(1, 3));
  EXPECT_EQ(hi, Rational(1, 2));
  EXPECT_FALSE(Cylinder({2}).left_closed());
  EXPECT_TRUE(Cylinder({2, 1}).left_closed());
}

TEST(Cylinder, LengthFormula) {
  EXPECT_EQ(Cylinder({1}).length(), Rational(1, 2));
  EXPECT_EQ(Cylinder({1, 1}).length(), Rational(1, 6));
  EXPECT_EQ(Cylinder({2, 2}).length(), Rational(1, 35));
  auto [lo, hi] = Cylinder({3, 1, 4, 1}).endpoints();
  EXPECT_EQ(hi - lo, Cylinder({3, 1, 4, 1}).length());
}

TEST(Cylinder, GaussMeasureOracles) {
  EXPECT_NEAR(Cylinder({1}).gauss_measure(), 0.41503749927884376, 1e-15);
  EXPECT_NEAR(Cylinder({2}).gauss_measure(), 0.16992500144231237, 1e-15);
  EXPECT_NEAR(Cylinder({1, 1}).gauss_measure(), 0.15200309344505006, 1e-15);
}

TEST(Cylinder, DeepCylinderKeepsRelativePrecision) {
  Word w(40, BigInt(1));
  w.push_back(BigInt(1000));
  auto [lo, hi] = Cylinder(w).endpoints();
  const double direct = gauss_measure_interval(lo, hi);
  EXPECT_NEAR(Cylinder(w).gauss_measure() / direct, 1.0, 1e-13);
}

TEST(GaussMeasureInterval, WholeIntervalAndErrors) {
  EXPECT_DOUBLE_EQ(gauss_measure_interval(0, 1), 1.0);
  EXPECT_NEAR(gauss_measure_interval(Rational(1, 3), Rational(1, 2)), 0.16992500144231237, 1e-15);
  EXPECT_THROW(gauss_measure_interval(Rational(1, 2), Rational(1, 3)), std::domain_error);
  EXPECT_THROW(gauss_measure_interval(Rational(-1, 2), Rational(1, 3)), std::domain_error);
}

TEST(Expand, RationalOracle) {
  EXPECT_EQ(expand_rational(BigInt(2), BigInt(3), 100), W({1, 2}));
  EXPECT_EQ(expand_rational(BigInt(355), BigInt(1000), 100), W({2, 1, 4, 2, 6}));
  EXPECT_EQ(expand_rational(BigInt(113), BigInt(355), 100), W({3, 7, 16}));
  EXPECT_EQ(expand_rational(BigInt(113), BigInt(355), 2), W({3, 7}));
  EXPECT_THROW(expand_rational(BigInt(3), BigInt(2), 10), std::domain_error);
}

TEST(Expand, EvaluateRoundTrip) {
  const Word w = W({1, 4, 1, 5, 9, 2, 6});
  const Rational r = evaluate_word(w);
  EXPECT_EQ(expand_rational(r, 100), w);
}

TEST(Expand, PointInsideCylinder) {
  Cylinder cyl({2, 7, 1, 8});
  auto [lo, hi] = cyl.endpoints();
  EXPECT_EQ(expand_point(lo, hi, 3), W({2, 7, 1}));
  try {
    expand_point(lo, hi, 10);
    FAIL() << "expected InsufficientPrecision";
  } catch (const InsufficientPrecision& e) {
    EXPECT_GE(e.obtained().size(), 3u);
  }
}

TEST(Expand, FormatWord) { EXPECT_EQ(format_word(W({1, 2, 30})), "1,2,30"); }
