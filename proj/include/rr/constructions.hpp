#pragma once

// Special digit sequences (E_B(beta), F_c, e - 2) and the numerical dimension
// machinery: Good's sigma_n, pressure sums of non-autonomous IFS stages, and
// the growth rates of the G system.

#include "rr/bigint.hpp"
#include "rr/cf_core.hpp"
#include "rr/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

namespace rr {

namespace detail {

inline BigInt ipow(const BigInt& base, unsigned long long e) {
  return boost::multiprecision::pow(base, static_cast<unsigned>(e));
}

inline unsigned long long small_uint(const BigInt& v, const char* what) {
  if (v < 1 || v > BigInt(1'000'000'000ULL)) throw std::invalid_argument(std::string(what) + " out of range");
  return v.convert_to<unsigned long long>();
}

/// floor(k^(num/den)) as the largest m with m^den <= k^num.
inline std::uint64_t floor_rational_power(std::uint64_t k, unsigned long long num, unsigned long long den) {
  const BigInt target = ipow(BigInt(k), num);
  const long double guess = std::pow(static_cast<long double>(k), static_cast<long double>(num) / den);
  std::uint64_t m = static_cast<std::uint64_t>(std::max<long double>(1.0L, std::floor(guess)));
  while (m > 1 && ipow(BigInt(m), den) > target) --m;
  while (ipow(BigInt(m + 1), den) <= target) ++m;
  return m;
}

/// log of a positive BigInt without overflowing long double.
inline long double log_big(const BigInt& v) {
  if (v <= 0) throw std::domain_error("log_big: nonpositive argument");
  const std::size_t bits = boost::multiprecision::msb(v) + 1;
  if (bits <= 60) return std::log(v.convert_to<long double>());
  const std::size_t shift = bits - 60;
  const BigInt top = v >> shift;
  return std::log(top.convert_to<long double>()) + static_cast<long double>(shift) * std::numbers::ln2_v<long double>;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// E_B(beta)

struct Filler {
  enum class Kind { ones, seeded };
  Kind kind = Kind::ones;
  std::uint64_t seed = 0;
};

/// Position floor(k^(1/beta)) carries k; other positions carry the filler.
class EBetaStream {
 public:
  EBetaStream(std::uint64_t B, const Rational& beta, Filler filler = {})
      : B_(B), filler_(filler), key_(derive_key(filler.seed, 0, kind_tag("E_beta-filler"))) {
    if (B < 2) throw std::invalid_argument("E_beta: B must be >= 2");
    if (!(beta > 0 && beta < 1)) throw std::invalid_argument("E_beta: beta must lie in (0,1)");
    // gamma = 1/beta = den/num
    num_ = detail::small_uint(boost::multiprecision::denominator(beta), "E_beta: beta denominator");
    den_ = detail::small_uint(boost::multiprecision::numerator(beta), "E_beta: beta numerator");
    next_pos_ = detail::floor_rational_power(next_k_, num_, den_);
  }

  std::uint64_t next() {
    ++pos_;
    if (pos_ == next_pos_) {
      const std::uint64_t d = next_k_++;
      next_pos_ = detail::floor_rational_power(next_k_, num_, den_);
      return d;
    }
    if (filler_.kind == Filler::Kind::ones) return 1;
    return 1 + static_cast<std::uint64_t>(uniform_at(key_, pos_) * static_cast<double>(B_));
  }

 private:
  std::uint64_t B_;
  Filler filler_;
  StreamKey key_;
  unsigned long long num_ = 1, den_ = 1;
  std::uint64_t pos_ = 0;
  std::uint64_t next_k_ = 1;
  std::uint64_t next_pos_ = 0;
};

inline std::vector<std::uint64_t> digits_E_beta(std::uint64_t B, const Rational& beta, Filler filler,
                                                std::size_t n) {
  EBetaStream stream(B, beta, filler);
  std::vector<std::uint64_t> out(n);
  for (auto& d : out) d = stream.next();
  return out;
}

/// Checks each position against the defining constraints of E_B(beta):
/// position i is special for k iff i^p <= k^q < (i+1)^p with beta = p/q.
/// Returns the first offending 1-based position, or 0.
inline std::size_t validate_E_beta(const std::vector<std::uint64_t>& digits, std::uint64_t B, const Rational& beta) {
  const auto p = detail::small_uint(boost::multiprecision::numerator(beta), "beta numerator");
  const auto q = detail::small_uint(boost::multiprecision::denominator(beta), "beta denominator");
  const long double b = beta.convert_to<long double>();
  for (std::size_t i = 1; i <= digits.size(); ++i) {
    const BigInt lo = detail::ipow(BigInt(i), p);
    const BigInt hi = detail::ipow(BigInt(i + 1), p);
    std::uint64_t special = 0;
    const auto k0 = static_cast<std::uint64_t>(std::floor(std::pow(static_cast<long double>(i), b)));
    for (std::uint64_t k = k0 > 1 ? k0 - 1 : 1; k <= k0 + 1; ++k) {
      const BigInt kq = detail::ipow(BigInt(k), q);
      if (lo <= kq && kq < hi) special = k;
    }
    const std::uint64_t d = digits[i - 1];
    if (special ? d != special : (d < 1 || d > B)) return i;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// F_c

/// Position floor(m/c) carries 2^m, every other position carries 1.
class FcStream {
 public:
  explicit FcStream(const Rational& c) : c_(c) {
    if (!(c > 0 && c <= 1)) throw std::invalid_argument("F_c: c must lie in (0,1]");
    advance();
  }

  BigInt next() {
    ++pos_;
    if (pos_ == next_pos_) {
      BigInt d = BigInt(1) << m_;
      advance();
      return d;
    }
    return 1;
  }

 private:
  void advance() {
    ++m_;
    next_pos_ = floor_of(Rational(m_) / c_);
  }

  Rational c_;
  unsigned m_ = 0;
  BigInt pos_ = 0;
  BigInt next_pos_ = 0;
};

inline std::vector<BigInt> digits_F_c(const Rational& c, std::size_t n) {
  FcStream stream(c);
  std::vector<BigInt> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(stream.next());
  return out;
}

// ---------------------------------------------------------------------------
// e - 2

inline std::uint64_t e_minus_2_digit(std::uint64_t i) {
  if (i < 1) throw std::domain_error("e_minus_2_digit: positions start at 1");
  if (i >= 2 && (i - 2) % 3 == 0) return 2 * ((i - 2) / 3 + 1);
  return 1;
}

/// (S_N - 2, S_N - 2 + 2/(N+1)!) with S_N = sum_{i<=N} 1/i!.
inline std::pair<Rational, Rational> e_minus_2_bracket(unsigned N) {
  Rational s = 0;
  BigInt fact = 1;
  for (unsigned i = 0; i <= N; ++i) {
    if (i) fact *= i;
    s += make_rational(BigInt(1), fact);
  }
  fact *= N + 1;
  return {s - 2, s - 2 + make_rational(BigInt(2), fact)};
}

/// The first m digits of e - 2 from the Euclidean oracle.
inline Word e_minus_2_oracle(std::size_t m) {
  for (unsigned N = 64;; N *= 2) {
    auto [lo, hi] = e_minus_2_bracket(N);
    try {
      return expand_point(lo, hi, m);
    } catch (const InsufficientPrecision&) {
      if (N > (1u << 16)) throw;
    }
  }
}

inline constexpr std::size_t kEMinus2Validated = 200;

inline std::vector<std::uint64_t> digits_e_minus_2(std::size_t n) {
  if (n < 1) throw std::invalid_argument("digits_e_minus_2: n must be >= 1");
  static std::once_flag validated;
  std::call_once(validated, [] {
    const Word oracle = e_minus_2_oracle(kEMinus2Validated);
    for (std::size_t i = 0; i < oracle.size(); ++i)
      if (oracle[i] != e_minus_2_digit(i + 1))
        throw std::logic_error("e - 2 pattern disagrees with expansion at position " + std::to_string(i + 1));
  });
  std::vector<std::uint64_t> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = e_minus_2_digit(i + 1);
  return out;
}

// ---------------------------------------------------------------------------
// Good's sigma_n

inline constexpr std::uint64_t kMaxGoodTuples = 100'000'000;

/// Histogram q_n -> number of tuples in {1..B}^n with that denominator.
inline std::unordered_map<std::uint64_t, std::uint64_t> good_denominators(std::uint64_t B, std::size_t n) {
  if (B < 2) throw std::invalid_argument("good_sigma_n: B must be >= 2");
  if (n < 2) throw std::invalid_argument("no root: degenerate stage");
  long double total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= static_cast<long double>(B);
  if (total > static_cast<long double>(kMaxGoodTuples)) throw std::invalid_argument("enumeration too large");

  using Hist = std::unordered_map<std::uint64_t, std::uint64_t>;
  std::vector<Hist> parts(B);
  std::vector<std::thread> workers;
  // one worker per first digit
  for (std::uint64_t a1 = 1; a1 <= B; ++a1) {
    workers.emplace_back([&, a1] {
      Hist& h = parts[a1 - 1];
      std::function<void(std::uint64_t, std::uint64_t, std::size_t)> rec = [&](std::uint64_t qp, std::uint64_t q,
                                                                               std::size_t depth) {
        if (depth == n) {
          ++h[q];
          return;
        }
        for (std::uint64_t a = 1; a <= B; ++a) rec(q, a * q + qp, depth + 1);
      };
      rec(1, a1, 1);
    });
  }
  for (auto& w : workers) w.join();
  Hist out;
  for (const auto& h : parts)
    for (const auto& [q, c] : h) out[q] += c;
  return out;
}

/// sum over the histogram of count * q^(-2s), minus 1.
inline long double good_excess(const std::unordered_map<std::uint64_t, std::uint64_t>& hist, long double s) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> sorted(hist.begin(), hist.end());
  std::sort(sorted.begin(), sorted.end());
  long double acc = 0;
  for (const auto& [q, c] : sorted) acc += static_cast<long double>(c) * std::exp(-2 * s * std::log(static_cast<long double>(q)));
  return acc - 1;
}

inline double good_sigma_n(std::uint64_t B, std::size_t n, double tol) {
  if (!(tol > 0)) throw std::invalid_argument("good_sigma_n: tol must be positive");
  const auto hist = good_denominators(B, n);
  long double lo = 0.2L, hi = 2.0L;
  if (good_excess(hist, lo) <= 0 || good_excess(hist, hi) >= 0)
    throw std::runtime_error("no root: sum does not change sign on [0.2, 2]");
  long double mid = (lo + hi) / 2;
  for (int it = 0; it < 200; ++it) {
    mid = (lo + hi) / 2;
    const long double f = good_excess(hist, mid);
    if (std::fabs(f) <= tol && hi - lo <= tol) break;
    (f > 0 ? lo : hi) = mid;
  }
  return static_cast<double>(mid);
}

// ---------------------------------------------------------------------------
// Non-autonomous IFS of digit-block Mobius maps

/// x -> [b_1, ..., b_{k-1}, b_k + x]. Its derivative is 1/(q_k + x q_{k-1})^2.
struct IfsMap {
  Word block;
  ConvergentState<BigInt> conv;

  explicit IfsMap(Word b) : block(std::move(b)), conv(convergents_of<BigInt>(block)) {
    if (block.empty()) throw std::invalid_argument("IfsMap: empty block");
  }

  /// log of the sup-norm of the derivative on [0,1], attained at x = 0.
  long double log_sup_norm() const { return -2 * detail::log_big(conv.q_cur); }
  long double log_inf_norm() const { return -2 * detail::log_big(conv.q_cur + conv.q_prev); }
};

struct IfsStage {
  std::size_t index = 0;
  std::vector<IfsMap> maps;
};

/// Stage n of G: blocks (1^{K_n - K_{n-1} - 1}, k) for 2^n <= k < 2^{n+1}, K_n = floor(n/c).
inline IfsStage make_G_stage(std::size_t n, const Rational& c = 1) {
  if (n < 1) throw std::invalid_argument("make_G_stage: n must be >= 1");
  if (!(c > 0 && c <= 1)) throw std::invalid_argument("make_G_stage: c must lie in (0,1]");
  if (n > 24) throw std::invalid_argument("make_G_stage: 2^n maps is too many to list");
  const BigInt gap = floor_of(Rational(n) / c) - floor_of(Rational(n - 1) / c) - 1;
  IfsStage stage{n, {}};
  const BigInt lo = BigInt(1) << n;
  for (BigInt k = lo; k < 2 * lo; ++k) {
    Word block(gap.convert_to<std::size_t>(), BigInt(1));
    block.push_back(k);
    stage.maps.emplace_back(std::move(block));
  }
  return stage;
}

inline constexpr std::uint64_t kMaxPressureTerms = 10'000'000;

/// Z_n(t): sum over compositions phi_{i_1} o ... o phi_{i_n} of ||D phi||^t.
inline double pressure_Zn(const std::vector<IfsStage>& stages, double t) {
  if (!(t >= 0)) throw std::invalid_argument("pressure_Zn: t must be >= 0");
  long double terms = 1;
  for (const auto& s : stages) terms *= static_cast<long double>(s.maps.size());
  if (terms > static_cast<long double>(kMaxPressureTerms)) throw std::invalid_argument("enumeration too large");

  long double acc = 0;
  std::function<void(const ConvergentState<BigInt>&, std::size_t)> rec = [&](const ConvergentState<BigInt>& conv,
                                                                             std::size_t depth) {
    if (depth == stages.size()) {
      acc += conv.depth == 0 ? 1.0L : std::exp(-2 * static_cast<long double>(t) * detail::log_big(conv.q_cur));
      return;
    }
    for (const auto& m : stages[depth].maps) rec(concat(conv, m.conv), depth + 1);
  };
  rec(ConvergentState<BigInt>{}, 0);
  return static_cast<double>(acc);
}

struct GRates {
  double a_n = 0;
  double b_min = 0;
  double b_max = 0;
};

/// a_n = (1/n) log #I^(n); b_n = (1/n) log(1/||D phi_j^(n)||) over the stage-n maps.
/// The stage-n maps are not listed: their norms are monotone in the last digit.
inline GRates ifs_rates_G(std::size_t n, const Rational& c = 1) {
  if (n < 1) throw std::invalid_argument("ifs_rates_G: n must be >= 1");
  if (!(c > 0 && c <= 1)) throw std::invalid_argument("ifs_rates_G: c must lie in (0,1]");
  const BigInt gap = floor_of(Rational(n) / c) - floor_of(Rational(n - 1) / c) - 1;
  auto map_for = [&](const BigInt& k) {
    Word block(gap.convert_to<std::size_t>(), BigInt(1));
    block.push_back(k);
    return IfsMap(std::move(block));
  };
  const BigInt lo = BigInt(1) << n;
  const IfsMap smallest = map_for(lo);
  const IfsMap largest = map_for(2 * lo - 1);
  const long double nd = static_cast<long double>(n);
  GRates r;
  // #I^(n) = 2^n, so log #I^(n) = msb(2^n) log 2 with no rounding in the count
  const BigInt count = BigInt(1) << n;
  r.a_n = static_cast<double>(boost::multiprecision::msb(count)) / static_cast<double>(n) * std::numbers::ln2;
  r.b_min = static_cast<double>(-smallest.log_sup_norm() / nd);
  r.b_max = static_cast<double>(-largest.log_sup_norm() / nd);
  return r;
}

}  // namespace rr
