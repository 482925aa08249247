#pragma once

// Exact samplers for the partial-quotient process, under the Gauss measure
// (sequential conditional sampling) and under the i.i.d. product of its
// first-digit marginal.

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string_view>

namespace rr {

inline constexpr std::uint64_t kDigitCap = std::numeric_limits<std::int64_t>::max();

// ---------------------------------------------------------------------------
// Counter-based randomness

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// 128-bit key identifying one stream.
struct StreamKey {
  std::uint64_t hi = 0;
  std::uint64_t lo = 0;
  friend bool operator==(const StreamKey&, const StreamKey&) = default;
};

constexpr std::uint64_t kind_tag(std::string_view kind) noexcept {
  std::uint64_t h = 0xCBF29CE484222325ULL;  // FNV-1a
  for (char c : kind) h = (h ^ static_cast<unsigned char>(c)) * 0x100000001B3ULL;
  return h;
}

constexpr StreamKey derive_key(std::uint64_t master, std::uint64_t index, std::uint64_t tag) noexcept {
  const std::uint64_t a = mix64(master ^ mix64(tag));
  const std::uint64_t b = mix64(a ^ mix64(index + 0x632BE59BD9B4E019ULL));
  return {mix64(b ^ 0xA0761D6478BD642FULL), mix64(b + a)};
}

/// Uniform double in the open interval (0,1) at a given stream position.
constexpr double uniform_at(const StreamKey& key, std::uint64_t position) noexcept {
  std::uint64_t h = mix64(key.lo + (position + 1) * 0x9E3779B97F4A7C15ULL);
  h = mix64(h ^ key.hi);
  return (static_cast<double>(h >> 11) + 0.5) * 0x1.0p-53;
}

// ---------------------------------------------------------------------------
// Digit extraction

struct DigitDraw {
  std::uint64_t digit = 1;
  bool saturated = false;
};

/// floor(1/x) for x in (0,1], capped at 2^63 - 1.
inline DigitDraw digit_of_point(double x) {
  if (!(x > 0.0)) return {kDigitCap, true};
  if (x >= 1.0) return {1, false};
  const double inv = 1.0 / x;
  if (inv >= static_cast<double>(kDigitCap)) return {kDigitCap, true};
  return {static_cast<std::uint64_t>(inv), false};
}

/// Inverse CDF of the Gauss measure: the point 2^u - 1.
template <class Real>
Real gauss_sample_point(const Real& u) {
  using std::exp;
  using std::log;
  if (!(u > 0 && u < 1)) throw std::domain_error("gauss_sample_point: u must lie in (0,1)");
  return exp(u * log(Real(2))) - 1;
}

inline double gauss_sample_point(double u) {
  if (!(u > 0.0 && u < 1.0)) throw std::domain_error("gauss_sample_point: u must lie in (0,1)");
  return std::expm1(u * std::numbers::ln2);
}

/// One draw from pi_x = -log2(1 - 1/(x+1)^2): floor(1/(2^u - 1)).
inline std::uint64_t iid_digit(double u) {
  if (!(u > 0.0 && u < 1.0)) throw std::domain_error("iid_digit: u must lie in (0,1)");
  return digit_of_point(std::expm1(u * std::numbers::ln2)).digit;
}

// ---------------------------------------------------------------------------
// Conditional next-digit law

/// Conditional law of T^m(omega) given the first m digits: density proportional
/// to 1/((1 + x t)(1 + x s)) on (0,1) with t = q_{m-1}/q_m and
/// s = (p_{m-1}+q_{m-1})/(p_m+q_m). `diff` carries t - s with full relative
/// precision; it shrinks like 1/q_m^2 and cannot be recovered from t and s.
struct TailParams {
  double t = 0.0;
  double s = 1.0;
  double diff = -1.0;

  TailParams advance(std::uint64_t digit) const noexcept {
    const double j = static_cast<double>(digit);
    return {1.0 / (j + t), 1.0 / (j + s), -diff / ((j + t) * (j + s))};
  }
};

namespace detail {
// Below this |t - s| the limiting closed forms are used; the generic forms are
// already accurate there, this only avoids underflow in c * (t - s).
inline constexpr double kDegenerateDiff = 1e-200;
}  // namespace detail

/// Unnormalized CDF G(x) = ln((1+xt)/(1+xs)) / (t-s), with limit x/(1+xs).
inline double tail_cdf(const TailParams& tp, double x) noexcept {
  const double base = 1.0 + x * tp.s;
  if (std::abs(tp.diff) < detail::kDegenerateDiff) return x / base;
  return std::log1p(x * tp.diff / base) / tp.diff;
}

/// Inverse of tail_cdf: x = (e^{c d} - 1) / (t - s e^{c d}), d = t - s.
inline double tail_cdf_inverse(const TailParams& tp, double c) noexcept {
  double phi = c;
  if (std::abs(tp.diff) >= detail::kDegenerateDiff) phi = std::expm1(c * tp.diff) / tp.diff;
  return phi / (1.0 - tp.s * phi);
}

/// Conditional probability that the next digit equals j.
inline double next_digit_probability(const TailParams& tp, std::uint64_t j) noexcept {
  const double jj = static_cast<double>(j);
  return (tail_cdf(tp, 1.0 / jj) - tail_cdf(tp, 1.0 / (jj + 1.0))) / tail_cdf(tp, 1.0);
}

/// Conditional probability that the next digit exceeds j.
inline double next_digit_tail(const TailParams& tp, std::uint64_t j) noexcept {
  return tail_cdf(tp, 1.0 / (static_cast<double>(j) + 1.0)) / tail_cdf(tp, 1.0);
}

struct GaussStep {
  std::uint64_t digit = 1;
  TailParams params;
  double point = 0.0;  // sampled T^m(omega)
  bool saturated = false;
};

inline GaussStep gauss_next_digit(const TailParams& tp, double u) {
  if (!(u > 0.0 && u < 1.0)) throw std::domain_error("gauss_next_digit: u must lie in (0,1)");
  const double x = tail_cdf_inverse(tp, u * tail_cdf(tp, 1.0));
  const DigitDraw d = digit_of_point(x);
  return {d.digit, tp.advance(d.digit), x, d.saturated};
}

// ---------------------------------------------------------------------------
// Streams

/// Digits of a Gauss-distributed point, one conditional draw per position.
class GaussDigitStream {
 public:
  explicit GaussDigitStream(StreamKey key) : key_(key) {}

  std::uint64_t next() {
    GaussStep step = gauss_next_digit(params_, uniform_at(key_, position_++));
    params_ = step.params;
    saturated_ |= step.saturated;
    return step.digit;
  }

  const TailParams& params() const noexcept { return params_; }
  std::uint64_t position() const noexcept { return position_; }
  bool saturated() const noexcept { return saturated_; }

 private:
  StreamKey key_;
  std::uint64_t position_ = 0;
  TailParams params_;
  bool saturated_ = false;
};

/// Independent draws from pi.
class IidDigitStream {
 public:
  explicit IidDigitStream(StreamKey key) : key_(key) {}

  std::uint64_t next() {
    const DigitDraw d =
        digit_of_point(std::expm1(uniform_at(key_, position_++) * std::numbers::ln2));
    saturated_ |= d.saturated;
    return d.digit;
  }

  std::uint64_t position() const noexcept { return position_; }
  bool saturated() const noexcept { return saturated_; }

 private:
  StreamKey key_;
  std::uint64_t position_ = 0;
  bool saturated_ = false;
};

}  // namespace rr
