#pragma once

// Quasi-independence and comparison bounds for cylinder measures, the
// q-ratio bounds under digit deletion, and rigorous brackets for the measure
// of I(x) ∩ T^{-(m+L)} I(y).

#include "rr/bigint.hpp"
#include "rr/cf_core.hpp"
#include "rr/sampling.hpp"

#include <boost/math/special_functions/trigamma.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace rr {

/// Two nonempty digit words.
struct WordPair {
  Word x;
  Word y;

  WordPair(Word x_word, Word y_word) : x(std::move(x_word)), y(std::move(y_word)) {
    if (x.empty() || y.empty()) throw std::invalid_argument("WordPair: words must be nonempty");
  }
  WordPair(std::initializer_list<long long> x_word, std::initializer_list<long long> y_word)
      : WordPair(to_word(x_word), to_word(y_word)) {}

 private:
  static Word to_word(std::initializer_list<long long> digits) {
    Word w;
    for (long long d : digits) w.emplace_back(d);
    return w;
  }
};

inline double ln2() { return std::numbers::ln2; }

// ---------------------------------------------------------------------------
// Pointwise ratios

/// mu(I(xy)) / (mu(I(x)) mu(I(y))).
inline double quasi_independence_ratio(const WordPair& pair) {
  const auto cx = convergents_of(pair.x);
  const auto cy = convergents_of(pair.y);
  return cylinder_measure(concat(cx, cy)) / (cylinder_measure(cx) * cylinder_measure(cy));
}

/// |I(xy)| / (|I(x)| |I(y)|), exact.
inline Rational length_ratio(const WordPair& pair) {
  const auto cx = convergents_of(pair.x);
  const auto cy = convergents_of(pair.y);
  const auto cxy = concat(cx, cy);
  auto span = [](const ConvergentState<BigInt>& c) { return BigInt(c.q_cur * (c.q_cur + c.q_prev)); };
  return make_rational(span(cx) * span(cy), span(cxy));
}

/// mu(I(w_1 ... w_r)) / prod mu(I(w_i)).
inline double multi_ratio(const std::vector<Word>& words) {
  if (words.size() < 2) throw std::invalid_argument("multi_ratio: need at least two words");
  ConvergentState<BigInt> joined;
  double product = 1.0;
  for (const auto& w : words) {
    if (w.empty()) throw std::invalid_argument("multi_ratio: empty word");
    const auto c = convergents_of(w);
    product *= cylinder_measure(c);
    joined = concat(joined, c);
  }
  return cylinder_measure(joined) / product;
}

/// For x dominating y componentwise, whether mu(I(x)) <= mu(I(y)).
inline bool comparison_check(const Word& x, const Word& y) {
  if (x.size() != y.size() || x.empty())
    throw std::invalid_argument("comparison_check: words must be nonempty and of equal length");
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] < y[i])
      throw std::invalid_argument("comparison_check: x does not dominate y at position " + std::to_string(i + 1));
  return Cylinder(x).gauss_measure() <= Cylinder(y).gauss_measure();
}

/// q_n(a_1..a_n) / q_{n-1}(word with a_k deleted), k is 1-based.
inline Rational q_ratio(const Word& word, std::size_t k) {
  if (k < 1 || k > word.size()) throw std::invalid_argument("q_ratio: need 1 <= k <= n");
  Word deleted;
  deleted.reserve(word.size() - 1);
  for (std::size_t i = 0; i < word.size(); ++i)
    if (i + 1 != k) deleted.push_back(word[i]);
  return make_rational(convergents_of(word).q_cur, convergents_of(deleted).q_cur);
}

inline bool q_ratio_within_bounds(const Word& word, std::size_t k) {
  const Rational r = q_ratio(word, k);
  const BigInt& a = word.at(k - 1);
  return Rational(a + 1) / 2 <= r && r <= Rational(a + 1);
}

// ---------------------------------------------------------------------------
// Mixing brackets

struct MixingBracket {
  double lower = 0.0;  // bounds on mu(I(x) ∩ T^{-(m+L)} I(y))
  double upper = 0.0;
  double product = 0.0;  // mu(I(x)) mu(I(y))
  double unenumerated_mass = 0.0;  // literal enumeration only

  double width() const { return upper - lower; }
  double ratio_lower() const { return lower / product; }
  double ratio_upper() const { return upper / product; }
  double ratio_midpoint() const { return 0.5 * (ratio_lower() + ratio_upper()); }
  /// Largest |ratio - 1| consistent with the bracket.
  double error_upper() const { return std::max(std::abs(ratio_lower() - 1), std::abs(ratio_upper() - 1)); }
  /// Smallest |ratio - 1| consistent with the bracket.
  double error_lower() const {
    if (ratio_lower() <= 1 && 1 <= ratio_upper()) return 0.0;
    return std::min(std::abs(ratio_lower() - 1), std::abs(ratio_upper() - 1));
  }
  bool contains(const MixingBracket& inner) const { return lower <= inner.lower && inner.upper <= upper; }
};

namespace detail {

struct Interval {
  long double lo = 0.0L;
  long double hi = 0.0L;

  static Interval point(long double v) { return {v, v}; }
  Interval operator+(const Interval& o) const { return {lo + o.lo, hi + o.hi}; }
  Interval operator*(const Interval& o) const {
    const long double c[] = {lo * o.lo, lo * o.hi, hi * o.lo, hi * o.hi};
    return {*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
  }
  Interval times(long double k) const { return k >= 0 ? Interval{lo * k, hi * k} : Interval{hi * k, lo * k}; }
  Interval widened(long double e) const { return {lo - e, hi + e}; }
  Interval intersect(const Interval& o) const { return {std::max(lo, o.lo), std::min(hi, o.hi)}; }
};

/// Range of (x - 1/2)^k over x in [a, b].
inline Interval centered_power(long double a, long double b, int k) {
  const long double pa = std::pow(a - 0.5L, k), pb = std::pow(b - 0.5L, k);
  Interval r{std::min(pa, pb), std::max(pa, pb)};
  if (k % 2 == 0 && k > 0 && a < 0.5L && 0.5L < b) r.lo = 0;
  return r;
}

inline TailParams state_after(const Word& word) {
  TailParams tp;
  for (const auto& d : word) tp = tp.advance(static_cast<std::uint64_t>(d));
  return tp;
}

inline std::pair<long double, long double> cylinder_bounds(const Word& y) {
  auto [a, b] = Cylinder(y).endpoints();
  return {a.convert_to<long double>(), b.convert_to<long double>()};
}

// Moments C_k(E) = int_E (x - 1/2)^k dx, k = 0..K, of a subset E of (0,1).
using MomentVector = std::vector<Interval>;

inline constexpr int kMomentOrder = 60;

inline MomentVector cylinder_moments(long double a, long double b) {
  MomentVector c(kMomentOrder + 1);
  for (int k = 0; k <= kMomentOrder; ++k) {
    // (beta^{k+1} - alpha^{k+1}) / (k+1) as (b - a) times a divided difference.
    const long double alpha = a - 0.5L, beta = b - 0.5L;
    long double dd = 0, ap = 1;
    for (int i = 0; i <= k; ++i) {
      dd += ap * std::pow(beta, k - i);
      ap *= alpha;
    }
    const long double v = (b - a) * dd / (k + 1);
    c[k] = Interval::point(v);
  }
  return c;
}

using Series = std::vector<long double>;  // coefficients of z^0..z^K

inline Series series_mul(const Series& f, const Series& g) {
  Series h(f.size(), 0.0L);
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = 0; i + j < f.size(); ++j) h[i + j] += f[i] * g[j];
  return h;
}

/// Taylor data of phi_k(u) = w^2 (w - 1/2)^k, w = 1/(j+u), about u = 1/2:
/// coefficients in z = u - 1/2 and a bound on the truncation error for |z| <= 1/2.
struct DigitTransfer {
  std::vector<Series> coeff;           // coeff[k][m]
  std::vector<long double> remainder;  // per k

  explicit DigitTransfer(std::uint64_t j) : coeff(kMomentOrder + 1), remainder(kMomentOrder + 1) {
    const int K = kMomentOrder;
    const long double A = static_cast<long double>(j) + 0.5L;
    Series w(K + 1), wabs(K + 1);
    long double p = 1 / A;
    for (int m = 0; m <= K; ++m) {
      w[m] = (m % 2 == 0) ? p : -p;
      wabs[m] = p;
      p /= A;
    }
    Series shifted = w, shifted_abs = wabs;
    shifted[0] -= 0.5L;
    shifted_abs[0] = std::abs(shifted[0]);
    // Majorant values at |z| = 1/2: sum |w_m| 2^{-m} = 1/j.
    const long double w_hat = 1.0L / static_cast<long double>(j);
    const long double shifted_hat = shifted_abs[0] + (w_hat - 1 / A);
    Series cur = series_mul(w, w), cur_abs = series_mul(wabs, wabs);
    long double hat = w_hat * w_hat;
    for (int k = 0; k <= K; ++k) {
      coeff[k] = cur;
      long double partial = 0, z = 1;
      for (int m = 0; m <= K; ++m) {
        partial += cur_abs[m] * z;
        z /= 2;
      }
      remainder[k] = std::max(0.0L, hat - partial) + 1e-18L * hat;
      cur = series_mul(cur, shifted);
      cur_abs = series_mul(cur_abs, shifted_abs);
      hat *= shifted_hat;
    }
  }
};

/// Transfer tables for digits 1..cap, built once per cap.
inline const std::vector<DigitTransfer>& transfers_up_to(std::uint64_t cap) {
  static std::mutex guard;
  static std::map<std::uint64_t, std::vector<DigitTransfer>> cache;
  std::lock_guard lock(guard);
  auto it = cache.find(cap);
  if (it == cache.end()) {
    std::vector<DigitTransfer> built;
    built.reserve(cap);
    for (std::uint64_t j = 1; j <= cap; ++j) built.emplace_back(j);
    it = cache.emplace(cap, std::move(built)).first;
  }
  return it->second;
}

/// Moments of E' = {x : T x in E} from those of E, for digits up to `cap`
/// through the change of variables x = 1/(j+u) and a trigamma-bounded tail.
inline MomentVector pull_back(const MomentVector& c, const std::vector<DigitTransfer>& transfers) {
  const int K = kMomentOrder;
  const std::uint64_t cap = transfers.size();
  const long double mass_hi = c[0].hi;
  MomentVector out(K + 1, Interval{});
  for (std::uint64_t j = 1; j <= cap; ++j) {
    const DigitTransfer& T = transfers[j - 1];
    const long double jj = static_cast<long double>(j);
    const Interval mass_j{c[0].lo / ((jj + 1) * (jj + 1)), c[0].hi / (jj * jj)};
    for (int k = 0; k <= K; ++k) {
      Interval v{};
      for (int m = 0; m <= K; ++m) v = v + c[m].times(T.coeff[k][m]);
      v = v.widened(T.remainder[k] * mass_hi);
      // Trivial enclosure: the mass of the j-branch times the range of (x - 1/2)^k on I(j).
      const Interval trivial = mass_j * centered_power(1 / (jj + 1), 1 / jj, k);
      out[k] = out[k] + v.intersect(trivial);
    }
  }
  const long double J = static_cast<long double>(cap);
  const Interval tail_mass{c[0].lo * boost::math::trigamma(J + 2), c[0].hi * boost::math::trigamma(J + 1)};
  for (int k = 0; k <= K; ++k) out[k] = out[k] + tail_mass * centered_power(0, 1 / (J + 1), k);
  return out;
}

/// Bracket of P(E) under the conditional density (1+xt)^{-1}(1+xs)^{-1}/g.
/// With v_t = t/(1+t/2), the density expands about 1/2 as
///   sum_k (-1)^k (v_t^{k+1} - v_s^{k+1})/(t - s) (x - 1/2)^k,
/// a series whose terms are at most (k+1) (max v / 2)^k for |x - 1/2| <= 1/2.
inline Interval conditional_probability(const TailParams& tp, const MomentVector& c) {
  const int K = kMomentOrder;
  const long double t = tp.t, s = tp.s;
  const long double at = 1 + t / 2, as = 1 + s / 2;
  const long double vt = t / at, vs = s / as;
  const long double pre = 1 / (at * as);
  Interval n{};
  long double S = 1, vs_pow = 1;  // S_k = sum_{i<=k} vt^i vs^{k-i}
  for (int k = 0; k <= K; ++k) {
    const long double ck = ((k % 2 == 0) ? 1 : -1) * pre * S;
    n = n + c[k].times(ck);
    vs_pow *= vs;
    S = vt * S + vs_pow;
  }
  const long double q = std::max(vt, vs) / 2;
  const long double rem = pre * c[0].hi * std::pow(q, K + 1) * ((K + 2) - (K + 1) * q) / ((1 - q) * (1 - q));
  const long double g = tail_cdf(tp, 1.0);
  Interval out = n.widened(rem).times(1 / g);
  out.lo = std::max(out.lo, 0.0L);
  out.hi = std::min(out.hi, 1.0L);
  return out;
}

inline void check_mixing_args(int L, std::uint64_t cap) {
  if (L < 1) throw std::invalid_argument("mixing_bracket: L must be >= 1");
  if (cap < 2) throw std::invalid_argument("mixing_bracket: digit_cap must be >= 2");
}

/// Literal enumeration over the free middle digits, depth first.
class MiddleWordEnumerator {
 public:
  MiddleWordEnumerator(const Word& y, std::uint64_t cap) : cap_(cap) {
    std::tie(lo_, hi_) = cylinder_bounds(y);
  }

  long double lumped() const { return lumped_; }

  /// Adds sum over w of P(w y | start) to `acc`, and the mass of branches with a digit above cap to lumped().
  void run(const TailParams& tp, int free_digits, long double weight, long double& acc) {
    if (free_digits == 0) {
      acc += weight * std::clamp<long double>((tail_cdf(tp, hi_) - tail_cdf(tp, lo_)) / tail_cdf(tp, 1.0), 0, 1);
      return;
    }
    for (std::uint64_t j = 1; j <= cap_; ++j)
      run(tp.advance(j), free_digits - 1, weight * next_digit_probability(tp, j), acc);
    lumped_ += weight * next_digit_tail(tp, cap_);
  }

 private:
  std::uint64_t cap_;
  double lo_ = 0, hi_ = 1;
  long double lumped_ = 0;
};

}  // namespace detail

inline constexpr double kMaxMixingWords = 1e8;

/// Enumerates every middle word in {1..cap}^L. The upper end adds the mass
/// of x-cylinder points whose middle block has some digit above cap.
inline MixingBracket mixing_bracket(const WordPair& pair, int L, std::uint64_t digit_cap) {
  detail::check_mixing_args(L, digit_cap);
  if (std::pow(static_cast<double>(digit_cap), L) > kMaxMixingWords)
    throw std::invalid_argument("mixing_bracket: digit_cap^L exceeds the enumeration limit");
  detail::MiddleWordEnumerator en(pair.y, digit_cap);
  long double rel = 0;
  en.run(detail::state_after(pair.x), L, 1.0L, rel);
  const double mx = Cylinder(pair.x).gauss_measure();
  MixingBracket b;
  b.lower = static_cast<double>(mx * rel);
  b.upper = static_cast<double>(mx * (rel + en.lumped()));
  b.product = mx * Cylinder(pair.y).gauss_measure();
  b.unenumerated_mass = static_cast<double>(mx * en.lumped());
  return b;
}

/// Same quantity through moments. E_r, the set of points whose digits r+1..
/// spell y, has its moments int (x-1/2)^k dx carried from E_{r-1} digit by
/// digit up to digit_cap, with the remaining digits enclosed in a tail term.
/// The conditional probability of E_L given I(x) is a linear functional of
/// those moments. Cost is linear in L and digit_cap; brackets are nested as
/// digit_cap grows.
inline constexpr std::uint64_t kMaxRefinedCap = 4000;

inline MixingBracket mixing_bracket_refined(const WordPair& pair, int L, std::uint64_t digit_cap) {
  detail::check_mixing_args(L, digit_cap);
  if (digit_cap > kMaxRefinedCap) throw std::invalid_argument("mixing_bracket_refined: digit_cap above 4000");
  const auto& transfers = detail::transfers_up_to(digit_cap);
  auto [a, b] = detail::cylinder_bounds(pair.y);
  detail::MomentVector c = detail::cylinder_moments(a, b);
  for (int r = 0; r < L; ++r) c = detail::pull_back(c, transfers);
  const detail::Interval rel = detail::conditional_probability(detail::state_after(pair.x), c);
  const double mx = Cylinder(pair.x).gauss_measure();
  MixingBracket out;
  out.lower = static_cast<double>(mx * rel.lo);
  out.upper = static_cast<double>(mx * rel.hi);
  out.product = mx * Cylinder(pair.y).gauss_measure();
  return out;
}

// ---------------------------------------------------------------------------
// Scans

/// Observed range of one ratio family against its claimed bounds.
struct BoundFamily {
  std::string name;
  double bound_lo = 0.0;
  double bound_hi = 0.0;
  double min = std::numeric_limits<double>::infinity();
  double max = -std::numeric_limits<double>::infinity();
  std::uint64_t cases = 0;
  std::uint64_t violations = 0;

  void record(double value, bool violated) {
    min = std::min(min, value);
    max = std::max(max, value);
    ++cases;
    violations += violated ? 1 : 0;
  }
  void record(double value) { record(value, !(bound_lo <= value && value <= bound_hi)); }
};

struct ScanOptions {
  std::uint64_t max_digit = 50;         // alphabet of the exhaustive and random pair scans
  std::uint64_t dense_digit = 10;       // alphabet of the all-pairs length <= 3 scan
  std::uint64_t random_pairs = 1'000'000;
  std::uint64_t comparison_digit = 20;
  std::uint64_t comparison_samples = 100'000;  // per length 4..6
  std::uint64_t comparison_fuzz = 10'000;
  std::uint64_t seed = 1;
};

namespace detail {

using U64State = ConvergentState<std::uint64_t>;

struct WordEntry {
  U64State conv;
  double mu = 0.0;
  unsigned __int128 span = 0;  // q (q + q'), the reciprocal length
};

inline unsigned __int128 span_of(const U64State& c) {
  return static_cast<unsigned __int128>(c.q_cur) * (c.q_cur + c.q_prev);
}

inline WordEntry make_entry(const U64State& c) { return {c, cylinder_measure(c), span_of(c)}; }

/// Every word of length `len` over {1..digit}, in lexicographic order.
inline std::vector<WordEntry> all_entries(std::size_t len, std::uint64_t digit) {
  std::vector<WordEntry> level{make_entry(U64State{})};
  for (std::size_t i = 0; i < len; ++i) {
    std::vector<WordEntry> next;
    next.reserve(level.size() * digit);
    for (const auto& e : level)
      for (std::uint64_t d = 1; d <= digit; ++d) next.push_back(make_entry(push_digit(e.conv, d)));
    level = std::move(next);
  }
  return level;
}

inline void record_pair(const WordEntry& x, const WordEntry& y, BoundFamily& mu_family, BoundFamily& len_family) {
  const U64State xy = concat(x.conv, y.conv);
  mu_family.record(cylinder_measure(xy) / (x.mu * y.mu));
  // |I(xy)| / (|I(x)||I(y)|) = span(x) span(y) / span(xy), compared exactly.
  const unsigned __int128 num = x.span * y.span;
  const unsigned __int128 den = span_of(xy);
  const bool ok = den <= 2 * num && num <= 2 * den;
  len_family.record(static_cast<double>(static_cast<long double>(num) / static_cast<long double>(den)), !ok);
}

}  // namespace detail

/// Ratio and length-ratio scan: all pairs with |x| + |y| <= 4 over
/// {1..max_digit}, all pairs with |x|, |y| <= 3 over {1..dense_digit}, and
/// random pairs with |x|, |y| <= 3 over {1..max_digit}.
inline std::pair<BoundFamily, BoundFamily> scan_quasi_independence(const ScanOptions& opt) {
  BoundFamily mu{"quasi_independence", ln2(), 2 * ln2()};
  BoundFamily len{"length_ratio", 0.5, 2.0};
  std::vector<std::vector<detail::WordEntry>> wide(4), dense(4);
  for (std::size_t l = 1; l <= 3; ++l) {
    wide[l] = detail::all_entries(l, opt.max_digit);
    dense[l] = detail::all_entries(l, opt.dense_digit);
  }
  for (std::size_t lx = 1; lx <= 3; ++lx)
    for (std::size_t ly = 1; lx + ly <= 4; ++ly)
      for (const auto& x : wide[lx])
        for (const auto& y : wide[ly]) detail::record_pair(x, y, mu, len);
  for (std::size_t lx = 1; lx <= 3; ++lx)
    for (std::size_t ly = 1; ly <= 3; ++ly) {
      if (lx + ly <= 4 && opt.dense_digit <= opt.max_digit) continue;  // already covered above
      for (const auto& x : dense[lx])
        for (const auto& y : dense[ly]) detail::record_pair(x, y, mu, len);
    }
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<std::size_t> pick_len(1, 3);
  for (std::uint64_t i = 0; i < opt.random_pairs; ++i) {
    const auto& xs = wide[pick_len(rng)];
    const auto& ys = wide[pick_len(rng)];
    std::uniform_int_distribution<std::size_t> px(0, xs.size() - 1), py(0, ys.size() - 1);
    detail::record_pair(xs[px(rng)], ys[py(rng)], mu, len);
  }
  return {mu, len};
}

/// Comparison-lemma scan. Exhaustive for lengths <= 3 over {1..comparison_digit};
/// random dominated pairs for lengths 4..6; fuzzed pairs with large digits.
inline BoundFamily scan_comparison(const ScanOptions& opt) {
  BoundFamily fam{"comparison", 0.0, 1.0};  // records mu(x)/mu(y), which must be <= 1
  const std::uint64_t D = opt.comparison_digit;
  for (std::size_t len = 1; len <= 3; ++len) {
    const auto words = detail::all_entries(len, D);
    // Index of a word in lexicographic order over {1..D}.
    auto index_of = [&](const std::vector<std::uint64_t>& w) {
      std::size_t idx = 0;
      for (auto d : w) idx = idx * D + (d - 1);
      return idx;
    };
    std::vector<std::uint64_t> x(len, 1), y(len, 1);
    for (std::size_t xi = 0; xi < words.size(); ++xi) {
      std::size_t rest = xi;
      for (std::size_t p = len; p-- > 0;) {
        x[p] = rest % D + 1;
        rest /= D;
      }
      std::fill(y.begin(), y.end(), 1);
      while (true) {
        const auto& wy = words[index_of(y)];
        const double r = words[xi].mu / wy.mu;
        fam.record(r, words[xi].mu > wy.mu);
        std::size_t p = len;
        while (p > 0 && y[p - 1] == x[p - 1]) y[--p] = 1;
        if (p == 0) break;
        ++y[p - 1];
      }
    }
  }
  std::mt19937_64 rng(opt.seed ^ 0x5bd1e995ULL);
  auto sample_pair = [&](std::size_t len, std::uint64_t max_digit, Word& xw, Word& yw) {
    std::uniform_int_distribution<std::uint64_t> dx(1, max_digit);
    xw.assign(len, 0);
    yw.assign(len, 0);
    for (std::size_t p = 0; p < len; ++p) {
      const std::uint64_t a = dx(rng);
      std::uniform_int_distribution<std::uint64_t> dy(1, a);
      xw[p] = a;
      yw[p] = dy(rng);
    }
  };
  Word xw, yw;
  for (std::size_t len = 4; len <= 6; ++len) {
    for (std::uint64_t i = 0; i < opt.comparison_samples; ++i) {
      sample_pair(len, D, xw, yw);
      const double mx = cylinder_measure(convergents_of<std::uint64_t>(xw));
      const double my = cylinder_measure(convergents_of<std::uint64_t>(yw));
      fam.record(mx / my, mx > my);
    }
  }
  std::uniform_int_distribution<std::size_t> flen(1, 12);
  std::uniform_int_distribution<int> fexp(0, 6);
  for (std::uint64_t i = 0; i < opt.comparison_fuzz; ++i) {
    sample_pair(flen(rng), static_cast<std::uint64_t>(std::pow(10, fexp(rng))) + 1, xw, yw);
    const double mx = Cylinder(xw).gauss_measure();
    const double my = Cylinder(yw).gauss_measure();
    fam.record(mx / my, !comparison_check(xw, yw));
  }
  return fam;
}

/// Exhaustive q-ratio scan over words of length <= max_len with digits <= max_digit.
/// Records the ratio normalized by a_k + 1, which must lie in [1/2, 1].
inline BoundFamily scan_q_ratio(std::size_t max_len = 5, std::uint64_t max_digit = 6) {
  BoundFamily fam{"q_ratio", 0.5, 1.0};
  for (std::size_t len = 1; len <= max_len; ++len) {
    Word w(len, BigInt(1));
    while (true) {
      for (std::size_t k = 1; k <= len; ++k) {
        const Rational r = q_ratio(w, k) / Rational(w[k - 1] + 1);
        fam.record(r.convert_to<double>(), !(Rational(1, 2) <= r && r <= 1));
      }
      std::size_t p = len;
      while (p > 0 && w[p - 1] == max_digit) w[--p] = 1;
      if (p == 0) break;
      ++w[p - 1];
    }
  }
  return fam;
}

/// r-fold ratio over all triples of words with length <= 2 over {1..max_digit}.
inline BoundFamily scan_multi_ratio(std::uint64_t max_digit = 8) {
  BoundFamily fam{"multi_ratio_r3", ln2() * ln2(), 4 * ln2() * ln2()};
  std::vector<detail::WordEntry> words = detail::all_entries(1, max_digit);
  const auto two = detail::all_entries(2, max_digit);
  words.insert(words.end(), two.begin(), two.end());
  for (const auto& a : words)
    for (const auto& b : words) {
      const auto ab = concat(a.conv, b.conv);
      for (const auto& c : words) fam.record(cylinder_measure(concat(ab, c.conv)) / (a.mu * b.mu * c.mu));
    }
  return fam;
}

}  // namespace rr
