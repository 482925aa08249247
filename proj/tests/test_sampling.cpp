#include "rr/cf_core.hpp"
#include "rr/sampling.hpp"
#include "rr/theory.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <vector>

using namespace rr;

TEST(IidDigit, ThresholdAtLog2ThreeHalves) {
  const double cut = std::log2(1.5);
  EXPECT_EQ(iid_digit(std::nextafter(cut, 1.0) + 1e-12), 1u);
  EXPECT_EQ(iid_digit(cut - 1e-12), 2u);
  EXPECT_EQ(iid_digit(0.5), 2u);
  EXPECT_EQ(iid_digit(1.0 - 1e-16), 1u);
  EXPECT_THROW(iid_digit(0.0), std::domain_error);
  EXPECT_THROW(iid_digit(1.0), std::domain_error);
}

TEST(GaussSamplePoint, ClosedForms) {
  EXPECT_NEAR(gauss_sample_point(0.5), std::sqrt(2.0) - 1, 4e-16);
  EXPECT_NEAR(gauss_sample_point(std::log2(1.5)), 0.5, 4e-16);
  EXPECT_THROW(gauss_sample_point(1.5), std::domain_error);
}

TEST(GaussSamplePoint, EmpiricalCdf) {
  const StreamKey key = derive_key(7, 0, kind_tag("cdf"));
  constexpr int N = 100000;
  std::vector<double> xs(N);
  for (int i = 0; i < N; ++i) xs[i] = gauss_sample_point(uniform_at(key, i));
  std::sort(xs.begin(), xs.end());
  double sup = 0;
  for (int i = 0; i < N; ++i) {
    const double F = std::log2(1 + xs[i]);
    sup = std::max({sup, std::abs(F - double(i) / N), std::abs(F - double(i + 1) / N)});
  }
  EXPECT_LT(sup, 0.01);
}

TEST(TailParams, StayInUnitSquareAndContract) {
  TailParams tp;
  for (int i = 0; i < 50; ++i) {
    tp = tp.advance(1);
    EXPECT_GT(tp.t, 0);
    EXPECT_LE(tp.t, 1);
    EXPECT_GT(tp.s, 0);
    EXPECT_LE(tp.s, 1);
  }
  EXPECT_NEAR(tp.t, (std::sqrt(5.0) - 1) / 2, 1e-6);
  EXPECT_NEAR(tp.s, (std::sqrt(5.0) - 1) / 2, 1e-6);
}

TEST(TailParams, MatchConvergentRatios) {
  std::vector<std::uint64_t> w{3, 1, 4, 1, 5, 9};
  TailParams tp;
  ConvergentState<BigInt> c;
  for (auto d : w) {
    tp = tp.advance(d);
    c = push_digit(c, BigInt(d));
  }
  EXPECT_NEAR(tp.t, (Rational(c.q_prev, c.q_cur)).convert_to<double>(), 1e-15);
  EXPECT_NEAR(tp.s, (Rational(c.p_prev + c.q_prev, c.p_cur + c.q_cur)).convert_to<double>(), 1e-15);
  EXPECT_NEAR(tp.diff, (Rational(c.q_prev, c.q_cur) - Rational(c.p_prev + c.q_prev, c.p_cur + c.q_cur)).convert_to<double>(),
              1e-15 * std::abs(tp.diff));
}

TEST(TailParams, ConditionalLawIsCylinderRatio) {
  // P(next = j | first digits w) = mu(I(w j)) / mu(I(w))
  const std::vector<long long> w{2, 1, 3};
  TailParams tp;
  for (auto d : w) tp = tp.advance(static_cast<std::uint64_t>(d));
  const double base = Cylinder(w).gauss_measure();
  for (long long j : {1, 2, 5, 40}) {
    auto wj = w;
    wj.push_back(j);
    EXPECT_NEAR(next_digit_probability(tp, static_cast<std::uint64_t>(j)), Cylinder(wj).gauss_measure() / base, 1e-13);
  }
}

TEST(TailCdf, InverseRoundTrip) {
  for (TailParams tp : {TailParams{}, TailParams{}.advance(1).advance(2), TailParams{0.3, 0.3, 0.0}}) {
    for (double x : {0.01, 0.2, 0.5, 0.99}) {
      EXPECT_NEAR(tail_cdf_inverse(tp, tail_cdf(tp, x)), x, 1e-13);
    }
  }
}

TEST(GaussStream, DeterministicPerSeed) {
  GaussDigitStream a(derive_key(5, 1, kind_tag("gauss"))), b(derive_key(5, 1, kind_tag("gauss")));
  GaussDigitStream c(derive_key(6, 1, kind_tag("gauss")));
  bool differs = false;
  for (int i = 0; i < 10000; ++i) {
    const auto da = a.next();
    EXPECT_EQ(da, b.next());
    differs |= da != c.next();
  }
  EXPECT_TRUE(differs);
}

TEST(GaussStream, DigitFrequenciesMatchPi) {
  GaussDigitStream s(derive_key(11, 0, kind_tag("gauss")));
  constexpr int N = 1000000;
  std::array<int, 6> count{};
  for (int i = 0; i < N; ++i) {
    const auto d = s.next();
    if (d <= 5) ++count[d];
  }
  for (int x = 1; x <= 5; ++x) EXPECT_NEAR(double(count[x]) / N, theory::pi_x(x), 0.003) << "x=" << x;
}

namespace {
/// Pearson statistic over cells {1..9, >=10} against pi.
double chi_square(const std::vector<std::uint64_t>& digits) {
  std::array<double, 10> obs{};
  for (auto d : digits) ++obs[d >= 10 ? 9 : d - 1];
  double stat = 0;
  const double n = static_cast<double>(digits.size());
  for (int c = 0; c < 10; ++c) {
    const double p = c < 9 ? theory::pi_x(c + 1) : theory::pi_tail(10);
    stat += (obs[c] - n * p) * (obs[c] - n * p) / (n * p);
  }
  return stat;
}
}  // namespace

TEST(GaussStream, StationaryMarginals) {
  // chi-square with 9 degrees of freedom: p = 0.001 at 27.877
  constexpr int N = 100000;
  std::vector<std::uint64_t> first, twentieth;
  for (int trial = 0; trial < N; ++trial) {
    GaussDigitStream s(derive_key(3, trial, kind_tag("gauss")));
    for (int pos = 1; pos <= 20; ++pos) {
      const auto d = s.next();
      if (pos == 1) first.push_back(d);
      if (pos == 20) twentieth.push_back(d);
    }
  }
  EXPECT_LT(chi_square(first), 27.877);
  EXPECT_LT(chi_square(twentieth), 27.877);
}

TEST(GaussStream, AgreesWithPointExpansion) {
  // One point omega = 2^u - 1 drives both samplers: expand_point reads its
  // digits from a 10^-300 bracket, and the sequential sampler is fed the
  // conditional CDF value of each tail T^m omega.
  using Real = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<1100>>;
  const Rational width(BigInt(1), boost::multiprecision::pow(BigInt(10), 300));
  int compared = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const double u0 = uniform_at(derive_key(99, trial, kind_tag("cross")), 0);
    const Rational omega = gauss_sample_point(Real(u0)).convert_to<Rational>();
    const Word expected = expand_point(omega, omega + width, 100);
    ASSERT_EQ(expected.size(), 100u);
    TailParams tp;
    Rational tail = omega;
    for (std::size_t m = 0; m < expected.size(); ++m) {
      const double u = tail_cdf(tp, tail.convert_to<double>()) / tail_cdf(tp, 1.0);
      const GaussStep step = gauss_next_digit(tp, u);
      ASSERT_EQ(BigInt(step.digit), expected[m]) << "trial " << trial << " position " << m + 1;
      tp = step.params;
      tail = 1 / tail - Rational(expected[m]);
      ++compared;
    }
  }
  EXPECT_EQ(compared, 100 * 100);
}

TEST(IidStream, FrequencyOfOneAndTail) {
  IidDigitStream s(derive_key(21, 0, kind_tag("iid")));
  constexpr int N = 1000000;
  std::vector<int> at_least(102, 0);
  int ones = 0;
  for (int i = 0; i < N; ++i) {
    const auto d = s.next();
    ones += d == 1;
    for (std::uint64_t x = 1; x <= std::min<std::uint64_t>(d, 100); ++x) ++at_least[x];
  }
  EXPECT_NEAR(double(ones) / N, 0.4150, 0.003);
  double worst = 0;
  for (int x = 1; x <= 100; ++x) worst = std::max(worst, std::abs(double(at_least[x]) / N - std::log2(1 + 1.0 / x)));
  EXPECT_LT(worst, 0.003);
}

TEST(DigitOfPoint, SaturatesAtCap) {
  EXPECT_TRUE(digit_of_point(0.0).saturated);
  EXPECT_TRUE(digit_of_point(1e-300).saturated);
  EXPECT_EQ(digit_of_point(1e-300).digit, kDigitCap);
  EXPECT_EQ(digit_of_point(0.25).digit, 4u);
}
