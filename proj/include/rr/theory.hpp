#pragma once

// Closed-form targets: the first-digit law pi_x, the limiting occupancy
// fractions r_k and r_{k+}, and the i.i.d. expectation series.

#include "rr/bigint.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>

namespace rr::theory {

/// sqrt(pi / log 2), the almost-sure limit of R_n / sqrt(n).
inline double limit_constant() { return std::sqrt(std::numbers::pi / std::numbers::ln2); }

/// pi_x = P(a_1 = x) = -log2(1 - 1/(x+1)^2).
inline double pi_x(long long x) {
  if (x < 1) throw std::domain_error("pi_x: x must be >= 1");
  const double y = static_cast<double>(x) + 1.0;
  return -std::log1p(-1.0 / (y * y)) / std::numbers::ln2;
}

/// P(a_1 >= x) = log2(1 + 1/x), the telescoped tail of pi.
inline double pi_tail(long long x) {
  if (x < 1) throw std::domain_error("pi_tail: x must be >= 1");
  return std::log1p(1.0 / static_cast<double>(x)) / std::numbers::ln2;
}

inline BigInt binomial(unsigned long long n, unsigned long long k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt c = 1;
  for (unsigned long long i = 1; i <= k; ++i) {
    c *= n - k + i;
    c /= i;
  }
  return c;
}

/// r_k = C(2k,k) / ((2k-1) 4^k).
inline Rational r_k(long long k) {
  if (k < 1) throw std::domain_error("r_k: k must be >= 1");
  const auto kk = static_cast<unsigned long long>(k);
  BigInt four_k = BigInt(1) << (2 * kk);
  return make_rational(binomial(2 * kk, kk), BigInt(2 * kk - 1) * four_k);
}

/// r_{k+} = prod_{j=1}^{k-1} (1 - 1/(2j)), the limiting fraction of values seen at least k times.
inline Rational r_k_plus(long long k) {
  if (k < 1) throw std::domain_error("r_k_plus: k must be >= 1");
  Rational acc = 1;
  for (long long j = 1; j < k; ++j) acc *= make_rational(BigInt(2 * j - 1), BigInt(2 * j));
  return acc;
}

/// 1/(2k), the limit of R_{n,k} / R_{n,k+}.
inline Rational escape_rate(long long k) {
  if (k < 1) throw std::domain_error("escape_rate: k must be >= 1");
  return make_rational(BigInt(1), BigInt(2 * k));
}

inline constexpr long long kExactRkLimit = 1000;

/// r_k as a double: exact rational up to k = 1000, log-gamma beyond.
inline double r_k_real(long long k) {
  if (k < 1) throw std::domain_error("r_k_real: k must be >= 1");
  if (k <= kExactRkLimit) return r_k(k).convert_to<double>();
  const double kd = static_cast<double>(k);
  const double log_central = std::lgamma(2 * kd + 1) - 2 * std::lgamma(kd + 1) - kd * std::log(4.0);
  return std::exp(log_central) / (2 * kd - 1);
}

inline double r_k_plus_real(long long k) {
  if (k < 1) throw std::domain_error("r_k_plus_real: k must be >= 1");
  if (k <= kExactRkLimit) return r_k_plus(k).convert_to<double>();
  return 2.0 * static_cast<double>(k) * r_k_real(k);
}

/// sqrt(pi n / log 2).
inline double asymptotic_Rn(std::uint64_t n) {
  if (n < 1) throw std::domain_error("asymptotic_Rn: n must be >= 1");
  return std::sqrt(std::numbers::pi * static_cast<double>(n) / std::numbers::ln2);
}

/// Summation cutoff for the expectation series. Beyond X the series is
/// replaced by its first-order tail n * log2(1 + 1/(X+1)); the neglected part
/// is at most C(n,2) sum_{x>X} pi_x^2 <= n^2 / (6 log^2 2 X^3) <= 1e-7.
inline std::uint64_t series_cutoff(std::uint64_t n) {
  const double nd = static_cast<double>(n);
  const double ln2 = std::numbers::ln2;
  const double x = std::cbrt(nd * nd / (6.0 * ln2 * ln2 * 1e-7));
  return std::max<std::uint64_t>(64, static_cast<std::uint64_t>(std::ceil(x)));
}

namespace detail {
struct KahanSum {
  long double sum = 0.0L;
  long double comp = 0.0L;
  void add(long double v) {
    const long double y = v - comp;
    const long double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};
}  // namespace detail

/// E~ R_n = sum_x [1 - (1 - pi_x)^n] under the i.i.d. product measure.
inline double expected_Rn_iid(std::uint64_t n) {
  if (n < 1) throw std::domain_error("expected_Rn_iid: n must be >= 1");
  const std::uint64_t cutoff = series_cutoff(n);
  const long double nd = static_cast<long double>(n);
  detail::KahanSum acc;
  for (std::uint64_t x = 1; x <= cutoff; ++x) {
    const long double p = pi_x(static_cast<long long>(x));
    acc.add(-std::expm1(nd * std::log1p(-p)));
  }
  acc.add(nd * pi_tail(static_cast<long long>(cutoff + 1)));
  return static_cast<double>(acc.sum);
}

/// E~ R_{n,k} = sum_x C(n,k) pi_x^k (1 - pi_x)^{n-k}.
inline double expected_Rnk_iid(std::uint64_t n, std::uint64_t k) {
  if (n < 1 || k < 1 || k > n) throw std::domain_error("expected_Rnk_iid: need 1 <= k <= n");
  const std::uint64_t cutoff = series_cutoff(n);
  const long double nd = static_cast<long double>(n);
  const long double kd = static_cast<long double>(k);
  const long double log_binom = std::lgamma(nd + 1) - std::lgamma(kd + 1) - std::lgamma(nd - kd + 1);
  detail::KahanSum acc;
  for (std::uint64_t x = 1; x <= cutoff; ++x) {
    const long double p = pi_x(static_cast<long long>(x));
    const long double log_term = log_binom + kd * std::log(p) + (nd - kd) * std::log1p(-p);
    acc.add(std::exp(log_term));
  }
  // First-order tail; for k >= 2 the tail is below the contract tolerance.
  if (k == 1) acc.add(nd * pi_tail(static_cast<long long>(cutoff + 1)));
  return static_cast<double>(acc.sum);
}

}  // namespace rr::theory
