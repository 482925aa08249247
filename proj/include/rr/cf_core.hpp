#pragma once

// Exact continued-fraction arithmetic: convergents, cylinders, Gauss measure.

#include "rr/bigint.hpp"

#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace rr {

using Word = std::vector<BigInt>;

/// Thrown by expand_point when the bracket cannot resolve the requested digits.
class InsufficientPrecision : public std::runtime_error {
 public:
  explicit InsufficientPrecision(Word obtained)
      : std::runtime_error("insufficient precision: bracket resolved " +
                           std::to_string(obtained.size()) + " digit(s)"),
        obtained_(std::move(obtained)) {}

  const Word& obtained() const noexcept { return obtained_; }

 private:
  Word obtained_;
};

/// Rolling window (p_{n-1}, p_n, q_{n-1}, q_n) of the convergent recursion.
/// `Int` is BigInt by default; a native unsigned type may be used where the
/// caller knows the convergents fit.
template <class Int = BigInt>
struct ConvergentState {
  Int p_prev{1};
  Int p_cur{0};
  Int q_prev{0};
  Int q_cur{1};
  std::size_t depth = 0;

  friend bool operator==(const ConvergentState&, const ConvergentState&) = default;
};

template <class Int>
ConvergentState<Int> push_digit(const ConvergentState<Int>& conv, const Int& d) {
  if (d < 1) throw std::domain_error("partial quotient must be >= 1");
  ConvergentState<Int> next;
  next.p_prev = conv.p_cur;
  next.q_prev = conv.q_cur;
  next.p_cur = d * conv.p_cur + conv.p_prev;
  next.q_cur = d * conv.q_cur + conv.q_prev;
  next.depth = conv.depth + 1;
  return next;
}

template <class Int = BigInt, class Range>
ConvergentState<Int> convergents_of(const Range& word) {
  ConvergentState<Int> conv;
  for (const auto& d : word) conv = push_digit(conv, static_cast<Int>(d));
  return conv;
}

/// Convergent window of the concatenated word xy: the product of the two
/// 2x2 matrices [[p_{n-1}, p_n], [q_{n-1}, q_n]].
template <class Int>
ConvergentState<Int> concat(const ConvergentState<Int>& x, const ConvergentState<Int>& y) {
  ConvergentState<Int> out;
  out.p_prev = x.p_prev * y.p_prev + x.p_cur * y.q_prev;
  out.p_cur = x.p_prev * y.p_cur + x.p_cur * y.q_cur;
  out.q_prev = x.q_prev * y.p_prev + x.q_cur * y.q_prev;
  out.q_cur = x.q_prev * y.p_cur + x.q_cur * y.q_cur;
  out.depth = x.depth + y.depth;
  return out;
}

/// p_n q_{n-1} - p_{n-1} q_n, which equals (-1)^{n-1} after at least one digit.
inline BigInt determinant(const ConvergentState<BigInt>& c) {
  return c.p_cur * c.q_prev - c.p_prev * c.q_cur;
}

/// Gauss measure of the cylinder whose convergent window is `c`.
///
/// With lo the left endpoint, mu = log2(1 + |I| / (1 + lo)) and |I| / (1 + lo)
/// reduces to 1/D with an integer D, so only one rounding enters before log1p.
template <class Int>
double cylinder_measure(const ConvergentState<Int>& c) {
  if (c.depth == 0) return 1.0;
  const long double q = to_long_double(c.q_cur);
  const long double qp = to_long_double(c.q_prev);
  const long double p = to_long_double(c.p_cur);
  const long double pp = to_long_double(c.p_prev);
  const long double denom = (c.depth % 2 == 0) ? (q + qp) * (q + p) : q * (q + qp + p + pp);
  return static_cast<double>(std::log1p(1.0L / denom) / std::numbers::ln2_v<long double>);
}

/// Gauss measure of an interval with exact rational endpoints.
inline double gauss_measure_interval(const Rational& lo, const Rational& hi) {
  if (!(lo < hi)) throw std::domain_error("gauss_measure_interval: need lo < hi");
  if (lo < 0 || hi > 1) throw std::domain_error("gauss_measure_interval: endpoints outside [0,1]");
  const Rational rel = (hi - lo) / (1 + lo);
  return static_cast<double>(std::log1p(rel.convert_to<long double>()) /
                             std::numbers::ln2_v<long double>);
}

/// An n-th order cylinder I(a_1, ..., a_n).
class Cylinder {
 public:
  Cylinder() = default;

  template <class Range>
  explicit Cylinder(const Range& digits) {
    for (const auto& d : digits) {
      BigInt v(d);
      conv_ = push_digit(conv_, v);
      word_.push_back(std::move(v));
    }
  }

  Cylinder(std::initializer_list<long long> digits) : Cylinder(std::vector<long long>(digits)) {}

  const Word& word() const noexcept { return word_; }
  const ConvergentState<BigInt>& convergents() const noexcept { return conv_; }
  std::size_t depth() const noexcept { return conv_.depth; }

  /// Even depth: [p_n/q_n, ...). Odd depth: (..., p_n/q_n].
  bool left_closed() const noexcept { return depth() % 2 == 0; }

  /// Ordered endpoints lo < hi.
  std::pair<Rational, Rational> endpoints() const {
    if (depth() == 0) throw std::domain_error("empty cylinder");
    Rational a = make_rational(conv_.p_cur, conv_.q_cur);
    Rational b = make_rational(conv_.p_cur + conv_.p_prev, conv_.q_cur + conv_.q_prev);
    if (left_closed()) return {std::move(a), std::move(b)};
    return {std::move(b), std::move(a)};
  }

  /// 1 / (q_n (q_n + q_{n-1})).
  Rational length() const {
    if (depth() == 0) throw std::domain_error("empty cylinder");
    return make_rational(BigInt(1), conv_.q_cur * (conv_.q_cur + conv_.q_prev));
  }

  double gauss_measure() const {
    if (depth() == 0) throw std::domain_error("empty cylinder");
    return cylinder_measure(conv_);
  }

 private:
  Word word_;
  ConvergentState<BigInt> conv_;
};

/// p_n / q_n of a nonempty word.
template <class Range>
Rational evaluate_word(const Range& word) {
  auto conv = convergents_of<BigInt>(word);
  if (conv.depth == 0) throw std::domain_error("evaluate_word: empty word");
  return make_rational(conv.p_cur, conv.q_cur);
}

/// Euclidean expansion of num/den in (0,1). The expansion of a rational
/// ends with a digit >= 2, which makes it the canonical one.
inline Word expand_rational(const BigInt& num, const BigInt& den, std::size_t max_digits) {
  if (den <= 0 || num <= 0 || num >= den)
    throw std::domain_error("expand_rational: num/den must lie in (0,1)");
  Word digits;
  BigInt a = den, b = num;  // current value is b/a, we need floor(a/b)
  while (b != 0 && digits.size() < max_digits) {
    BigInt quot = a / b;
    BigInt rem = a - quot * b;
    digits.push_back(std::move(quot));
    a = std::move(b);
    b = std::move(rem);
  }
  return digits;
}

inline Word expand_rational(const Rational& r, std::size_t max_digits) {
  return expand_rational(boost::multiprecision::numerator(r), boost::multiprecision::denominator(r),
                         max_digits);
}

/// First n partial quotients shared by every point of the open interval (lo, hi).
///
/// Each step maps the bracket through the Gauss map. A digit is emitted only
/// when floor(1/x) is the same for every x in the bracket.
inline Word expand_point(Rational lo, Rational hi, std::size_t n) {
  if (!(lo < hi) || lo < 0 || hi > 1)
    throw std::domain_error("expand_point: bracket must satisfy 0 <= lo < hi <= 1");
  Word digits;
  while (digits.size() < n) {
    if (lo == 0) throw InsufficientPrecision(std::move(digits));
    Rational inv_hi = 1 / hi;
    Rational inv_lo = 1 / lo;
    BigInt a_min = floor_of(inv_hi);
    BigInt a_max = ceil_of(inv_lo) - 1;
    if (a_min != a_max) throw InsufficientPrecision(std::move(digits));
    Rational next_lo = inv_hi - a_min;
    Rational next_hi = inv_lo - a_min;
    lo = std::move(next_lo);
    hi = std::move(next_hi);
    digits.push_back(std::move(a_min));
  }
  return digits;
}

inline std::string format_word(const Word& word) {
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i) out += ',';
    out += word[i].str();
  }
  return out;
}

}  // namespace rr
