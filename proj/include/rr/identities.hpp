#pragma once

// Brute-force checks of the inclusion-exclusion identities for counts of
// events, on explicit finite probability spaces.
//
// Every check returns both sides. The left side always comes from a direct
// pass over the outcomes; the right side is the alternating sum, whose
// intersection probabilities P(A_I), P(A_I B_J) come from superset sums of
// the per-outcome event patterns.

#include "rr/bigint.hpp"
#include "rr/cf_core.hpp"
#include "rr/sampling.hpp"
#include "rr/theory.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace rr::identities {

using Outcome = std::vector<int>;
using Event = std::function<bool(const Outcome&)>;
using EventFamily = std::vector<Event>;

inline constexpr std::size_t kMaxSingleFamily = 12;
inline constexpr std::size_t kMaxPairedFamily = 10;

/// Tolerance for floating weights; exact weights compare with ==.
inline constexpr long double kFloatTolerance = 1e-15L;

template <class W>
bool weights_equal(const W& a, const W& b) {
  if constexpr (std::is_floating_point_v<W>) {
    using std::abs;
    return abs(a - b) <= kFloatTolerance;
  } else {
    return a == b;
  }
}

template <class W>
std::string weight_string(const W& w) {
  if constexpr (std::is_floating_point_v<W>) {
    std::ostringstream os;
    os.precision(21);
    os << w;
    return os.str();
  } else {
    return rr::to_string(w);
  }
}

template <class W>
W binomial_weight(unsigned long long n, unsigned long long k) {
  if constexpr (std::is_floating_point_v<W>) {
    return static_cast<W>(theory::binomial(n, k).template convert_to<long double>());
  } else {
    return W(theory::binomial(n, k));
  }
}

/// Explicit outcome list with weights summing to one.
template <class W>
class FiniteProbSpace {
 public:
  FiniteProbSpace(std::vector<Outcome> outcomes, std::vector<W> weights)
      : outcomes_(std::move(outcomes)), weights_(std::move(weights)) {
    if (outcomes_.size() != weights_.size())
      throw std::invalid_argument("FiniteProbSpace: outcome/weight size mismatch");
    W total = 0;
    for (const auto& w : weights_) {
      if (w < 0) throw std::invalid_argument("FiniteProbSpace: negative weight");
      total += w;
    }
    if (!weights_equal(total, W(1))) throw std::invalid_argument("FiniteProbSpace: weights do not sum to 1");
    if constexpr (std::is_same_v<W, Rational>) {
      denom_ = 1;
      for (const auto& w : weights_) denom_ = boost::multiprecision::lcm(denom_, boost::multiprecision::denominator(w));
      raw_.reserve(weights_.size());
      for (const auto& w : weights_)
        raw_.push_back(boost::multiprecision::numerator(w) * (denom_ / boost::multiprecision::denominator(w)));
    }
  }

  /// Weights over a common denominator, so sums of weights are integer sums.
  using Raw = std::conditional_t<std::is_same_v<W, Rational>, BigInt, W>;
  const Raw& raw(std::size_t i) const {
    if constexpr (std::is_same_v<W, Rational>) return raw_[i]; else return weights_[i];
  }
  W finish(const Raw& v) const {
    if constexpr (std::is_same_v<W, Rational>) return make_rational(v, denom_); else return v;
  }

  std::size_t size() const noexcept { return outcomes_.size(); }
  const Outcome& outcome(std::size_t i) const { return outcomes_[i]; }
  const W& weight(std::size_t i) const { return weights_[i]; }

 private:
  std::vector<Outcome> outcomes_;
  std::vector<W> weights_;
  std::vector<BigInt> raw_;
  BigInt denom_;
};

template <class W>
struct IdentityCheck {
  W lhs{};
  W rhs{};
  bool holds() const { return weights_equal(lhs, rhs); }
};

namespace detail {

inline void check_family_size(std::size_t n, std::size_t cap) {
  if (n == 0) throw std::invalid_argument("event family is empty");
  if (n > cap) throw std::invalid_argument("event family too large for enumeration (n = " + std::to_string(n) + ")");
}

inline std::uint32_t pattern(const Outcome& o, const EventFamily& family) {
  std::uint32_t mask = 0;
  for (std::size_t i = 0; i < family.size(); ++i)
    if (family[i](o)) mask |= 1u << i;
  return mask;
}

/// S_r = sum over |I| = r of P(A_I), for r = 0..n.
template <class W>
std::vector<W> single_sums(const FiniteProbSpace<W>& space, const EventFamily& A) {
  using Raw = typename FiniteProbSpace<W>::Raw;
  const std::size_t n = A.size();
  std::vector<Raw> f(std::size_t{1} << n, Raw(0));
  for (std::size_t i = 0; i < space.size(); ++i) f[pattern(space.outcome(i), A)] += space.raw(i);
  // f[S] <- sum over supersets of S, which is P(A_S).
  for (std::size_t b = 0; b < n; ++b)
    for (std::size_t mask = 0; mask < f.size(); ++mask)
      if (!(mask & (std::size_t{1} << b))) f[mask] += f[mask | (std::size_t{1} << b)];
  std::vector<Raw> raw_sums(n + 1, Raw(0));
  for (std::size_t mask = 0; mask < f.size(); ++mask) raw_sums[std::popcount(mask)] += f[mask];
  std::vector<W> sums;
  for (const auto& v : raw_sums) sums.push_back(space.finish(v));
  return sums;
}

inline void check_disjoint(const Outcome& o, const EventFamily& A, const EventFamily& B) {
  for (std::size_t i = 0; i < A.size(); ++i)
    if (A[i](o) && B[i](o))
      throw std::invalid_argument("paired families violate A_i and B_i disjointness at index " + std::to_string(i + 1));
}

/// S_{a,b} = sum over disjoint I, J with |I| = a, |J| = b of P(A_I B_J).
template <class W>
std::vector<std::vector<W>> paired_sums(const FiniteProbSpace<W>& space, const EventFamily& A, const EventFamily& B) {
  const std::size_t n = A.size();
  std::size_t states = 1;
  std::vector<std::size_t> pow3(n + 1, 1);
  for (std::size_t i = 1; i <= n; ++i) pow3[i] = pow3[i - 1] * 3;
  states = pow3[n];
  // Ternary digit per index: 0 neither, 1 in A_i, 2 in B_i.
  using Raw = typename FiniteProbSpace<W>::Raw;
  std::vector<Raw> g(states, Raw(0));
  for (std::size_t i = 0; i < space.size(); ++i) {
    const Outcome& o = space.outcome(i);
    check_disjoint(o, A, B);
    std::size_t code = 0;
    for (std::size_t j = 0; j < n; ++j) code += pow3[j] * (A[j](o) ? 1 : (B[j](o) ? 2 : 0));
    g[code] += space.raw(i);
  }
  // Query digit 0 means "unconstrained": fold the three states into it.
  for (std::size_t b = 0; b < n; ++b)
    for (std::size_t code = 0; code < states; ++code)
      if ((code / pow3[b]) % 3 == 0) g[code] += g[code + pow3[b]] + g[code + 2 * pow3[b]];
  std::vector<std::vector<Raw>> raw_sums(n + 1, std::vector<Raw>(n + 1, Raw(0)));
  for (std::size_t code = 0; code < states; ++code) {
    std::size_t a = 0, bcount = 0;
    for (std::size_t c = code; c; c /= 3) {
      a += (c % 3 == 1);
      bcount += (c % 3 == 2);
    }
    raw_sums[a][bcount] += g[code];
  }
  std::vector<std::vector<W>> sums(n + 1, std::vector<W>(n + 1, W(0)));
  for (std::size_t a = 0; a <= n; ++a)
    for (std::size_t b = 0; b <= n; ++b) sums[a][b] = space.finish(raw_sums[a][b]);
  return sums;
}

}  // namespace detail

/// P(N_A >= k) against sum_{r=k}^n (-1)^{r-k} C(r-1,k-1) sum_{|I|=r} P(A_I).
template <class W>
IdentityCheck<W> ie_at_least_k(const FiniteProbSpace<W>& space, const EventFamily& A, std::size_t k) {
  detail::check_family_size(A.size(), kMaxSingleFamily);
  const std::size_t n = A.size();
  if (k < 1 || k > n) throw std::invalid_argument("ie_at_least_k: need 1 <= k <= n");
  IdentityCheck<W> out;
  typename FiniteProbSpace<W>::Raw lhs(0);
  for (std::size_t i = 0; i < space.size(); ++i) {
    std::size_t count = 0;
    for (const auto& event : A) count += event(space.outcome(i)) ? 1 : 0;
    if (count >= k) lhs += space.raw(i);
  }
  out.lhs = space.finish(lhs);
  const auto sums = detail::single_sums(space, A);
  for (std::size_t r = k; r <= n; ++r) {
    W term = binomial_weight<W>(r - 1, k - 1) * sums[r];
    if ((r - k) % 2 == 0) out.rhs += term; else out.rhs -= term;
  }
  return out;
}

/// P(union A_i) against the alternating sum of intersection probabilities.
template <class W>
IdentityCheck<W> ie_at_least_one(const FiniteProbSpace<W>& space, const EventFamily& A) {
  detail::check_family_size(A.size(), kMaxSingleFamily);
  IdentityCheck<W> out;
  typename FiniteProbSpace<W>::Raw lhs(0);
  for (std::size_t i = 0; i < space.size(); ++i) {
    for (const auto& event : A) {
      if (event(space.outcome(i))) {
        lhs += space.raw(i);
        break;
      }
    }
  }
  out.lhs = space.finish(lhs);
  const auto sums = detail::single_sums(space, A);
  for (std::size_t r = 1; r < sums.size(); ++r) {
    if (r % 2 == 1) out.rhs += sums[r]; else out.rhs -= sums[r];
  }
  return out;
}

/// Partial sums sum_{r<=m} (-1)^{r-1} S_r for m = 1..n. Odd m over-estimate
/// P(N_A >= 1), even m under-estimate it.
template <class W>
std::vector<W> bonferroni_partial_sums(const FiniteProbSpace<W>& space, const EventFamily& A) {
  detail::check_family_size(A.size(), kMaxSingleFamily);
  const auto sums = detail::single_sums(space, A);
  std::vector<W> partial;
  W acc = 0;
  for (std::size_t r = 1; r < sums.size(); ++r) {
    if (r % 2 == 1) acc += sums[r]; else acc -= sums[r];
    partial.push_back(acc);
  }
  return partial;
}

/// P(N_A >= k, N_B >= k) against the double alternating sum. k = 1 is the
/// two-family identity for P(N_A >= 1, N_B >= 1).
template <class W>
IdentityCheck<W> ie_pair_at_least_k(const FiniteProbSpace<W>& space, const EventFamily& A, const EventFamily& B,
                                    std::size_t k) {
  detail::check_family_size(A.size(), kMaxPairedFamily);
  if (B.size() != A.size()) throw std::invalid_argument("paired families must have equal length");
  const std::size_t n = A.size();
  if (k < 1) throw std::invalid_argument("ie_pair_at_least_k: k must be >= 1");
  IdentityCheck<W> out;
  const auto sums = detail::paired_sums(space, A, B);  // also validates disjointness
  typename FiniteProbSpace<W>::Raw lhs(0);
  for (std::size_t i = 0; i < space.size(); ++i) {
    std::size_t na = 0, nb = 0;
    for (std::size_t j = 0; j < n; ++j) {
      na += A[j](space.outcome(i)) ? 1 : 0;
      nb += B[j](space.outcome(i)) ? 1 : 0;
    }
    if (na >= k && nb >= k) lhs += space.raw(i);
  }
  out.lhs = space.finish(lhs);
  for (std::size_t r = 2 * k; r <= n; ++r) {
    W inner = 0;
    for (std::size_t a = k; a + k <= r; ++a) {
      const std::size_t b = r - a;
      inner += binomial_weight<W>(a - 1, k - 1) * binomial_weight<W>(b - 1, k - 1) * sums[a][b];
    }
    if (r % 2 == 0) out.rhs += inner; else out.rhs -= inner;
  }
  return out;
}

template <class W>
IdentityCheck<W> ie_pair(const FiniteProbSpace<W>& space, const EventFamily& A, const EventFamily& B) {
  return ie_pair_at_least_k(space, A, B, 1);
}

/// Pointwise 1{N_A >= 1} = sum over nonempty I of (-1)^{|I|-1} 1{A_I}.
inline bool indicator_identity(const Outcome& outcome, const EventFamily& A) {
  detail::check_family_size(A.size(), kMaxSingleFamily);
  const std::uint32_t hit = detail::pattern(outcome, A);
  const long long lhs = hit != 0 ? 1 : 0;
  long long rhs = 0;
  for (std::uint32_t subset = 1; subset < (1u << A.size()); ++subset) {
    if ((subset & hit) != subset) continue;
    rhs += (std::popcount(subset) % 2 == 1) ? 1 : -1;
  }
  return lhs == rhs;
}

// ---------------------------------------------------------------------------
// Space and family builders

inline std::vector<Outcome> all_words(int alphabet, std::size_t length) {
  std::vector<Outcome> out;
  Outcome w(length, 1);
  while (true) {
    out.push_back(w);
    std::size_t pos = length;
    while (pos > 0) {
      --pos;
      if (w[pos] < alphabet) {
        ++w[pos];
        break;
      }
      w[pos] = 1;
      if (pos == 0) return out;
    }
    if (length == 0) return out;
  }
}

/// Product space over {1..m}^length with the given marginal (index 0 is digit 1).
template <class W>
FiniteProbSpace<W> product_space(const std::vector<W>& marginal, std::size_t length) {
  const int m = static_cast<int>(marginal.size());
  auto words = all_words(m, length);
  std::vector<W> weights;
  weights.reserve(words.size());
  // Consecutive words share prefixes; reuse the running prefix products.
  std::vector<W> prefix(length + 1, W(1));
  Outcome last(length, 0);
  for (const auto& w : words) {
    std::size_t same = 0;
    while (same < length && w[same] == last[same]) ++same;
    for (std::size_t i = same; i < length; ++i) prefix[i + 1] = prefix[i] * marginal[w[i] - 1];
    weights.push_back(prefix[length]);
    last = w;
  }
  return FiniteProbSpace<W>(std::move(words), std::move(weights));
}

template <class W>
std::vector<W> normalized(std::vector<W> raw) {
  W total = 0;
  for (const auto& v : raw) total += v;
  for (auto& v : raw) v /= total;
  return raw;
}

/// pi restricted to {1..m} and renormalized; each pi_x enters as the exact
/// rational value of its binary64 rounding.
inline std::vector<Rational> truncated_pi_marginal(int m) {
  std::vector<Rational> raw;
  for (int x = 1; x <= m; ++x) {
    int exp2 = 0;
    const double mant = std::frexp(theory::pi_x(x), &exp2);
    const auto scaled = static_cast<long long>(std::ldexp(mant, 53));
    Rational v(scaled);
    if (exp2 - 53 >= 0) v *= Rational(BigInt(1) << (exp2 - 53));
    else v /= Rational(BigInt(1) << (53 - exp2));
    raw.push_back(v);
  }
  return normalized(std::move(raw));
}

inline std::vector<Rational> random_rational_marginal(int m, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dist(1, 1000);
  std::vector<Rational> raw;
  for (int x = 0; x < m; ++x) raw.emplace_back(dist(rng));
  return normalized(std::move(raw));
}

/// Words of {1..m}^length weighted by cylinder length, renormalized (exact).
inline FiniteProbSpace<Rational> cylinder_length_space(int m, std::size_t length) {
  auto words = all_words(m, length);
  std::vector<Rational> weights;
  weights.reserve(words.size());
  for (const auto& w : words) weights.push_back(Cylinder(w).length());
  return FiniteProbSpace<Rational>(std::move(words), normalized(std::move(weights)));
}

/// Words of {1..m}^length weighted by Gauss measure, renormalized.
inline FiniteProbSpace<long double> cylinder_gauss_space(int m, std::size_t length) {
  auto words = all_words(m, length);
  std::vector<long double> weights;
  weights.reserve(words.size());
  for (const auto& w : words) weights.push_back(cylinder_measure(convergents_of<std::uint64_t>(w)));
  return FiniteProbSpace<long double>(std::move(words), normalized(std::move(weights)));
}

/// A_i = {a_i in values}.
inline EventFamily coordinate_family(std::size_t n, std::vector<int> values) {
  EventFamily family;
  for (std::size_t i = 0; i < n; ++i) {
    family.push_back([i, values](const Outcome& o) {
      if (i >= o.size()) return false;
      for (int v : values)
        if (o[i] == v) return true;
      return false;
    });
  }
  return family;
}

namespace detail {
inline std::uint64_t outcome_hash(const Outcome& o, std::uint64_t salt) {
  std::uint64_t h = mix64(salt);
  for (int v : o) h = mix64(h ^ static_cast<std::uint64_t>(v));
  return h;
}
}  // namespace detail

/// Pseudo-random events: outcome o lies in A_i with probability about `density`.
inline EventFamily hashed_family(std::size_t n, std::uint64_t seed, double density) {
  EventFamily family;
  const auto threshold = static_cast<std::uint64_t>(density * 18446744073709551615.0);
  for (std::size_t i = 0; i < n; ++i) {
    family.push_back([=](const Outcome& o) { return detail::outcome_hash(o, seed * 1315423911ULL + i) < threshold; });
  }
  return family;
}

/// Pseudo-random B_i drawn inside the complement of A_i.
inline EventFamily hashed_complement_family(const EventFamily& A, std::uint64_t seed, double density) {
  EventFamily family;
  const auto threshold = static_cast<std::uint64_t>(density * 18446744073709551615.0);
  for (std::size_t i = 0; i < A.size(); ++i) {
    Event a = A[i];
    family.push_back([=](const Outcome& o) {
      return !a(o) && detail::outcome_hash(o, seed * 2654435761ULL + i + 7777) < threshold;
    });
  }
  return family;
}

// ---------------------------------------------------------------------------
// Suites

struct Failure {
  std::string inputs;
  std::string lhs;
  std::string rhs;
};

struct SuiteReport {
  std::string suite;
  std::size_t cases = 0;
  std::vector<Failure> failures;
  bool passed() const noexcept { return failures.empty(); }
};

namespace detail {

template <class W>
void record(SuiteReport& report, const IdentityCheck<W>& check, const std::string& inputs) {
  ++report.cases;
  if (!check.holds()) report.failures.push_back({inputs, weight_string(check.lhs), weight_string(check.rhs)});
}

struct SuiteSet {
  SuiteReport at_least_one{"at_least_one", 0, {}};
  SuiteReport pair{"pair", 0, {}};
  SuiteReport at_least_k{"at_least_k", 0, {}};
  SuiteReport pair_at_least_k{"pair_at_least_k", 0, {}};
  SuiteReport indicator{"indicator", 0, {}};
  SuiteReport bonferroni{"bonferroni", 0, {}};
};

template <class W>
void run_single(SuiteSet& out, const FiniteProbSpace<W>& space, const EventFamily& A, const std::string& label) {
  const std::size_t n = A.size();
  const auto one = ie_at_least_one(space, A);
  record(out.at_least_one, one, label);
  for (std::size_t k = 1; k <= n; ++k)
    record(out.at_least_k, ie_at_least_k(space, A, k), label + " k=" + std::to_string(k));

  const auto partial = bonferroni_partial_sums(space, A);
  for (std::size_t m = 0; m < partial.size(); ++m) {
    // odd truncation orders (m even here) bound from above
    const bool ok = (m % 2 == 0) ? !(partial[m] < one.lhs) : !(one.lhs < partial[m]);
    ++out.bonferroni.cases;
    if (!ok && !weights_equal(partial[m], one.lhs))
      out.bonferroni.failures.push_back(
          {label + " order=" + std::to_string(m + 1), weight_string(one.lhs), weight_string(partial[m])});
  }

  for (std::size_t i = 0; i < space.size(); ++i) {
    ++out.indicator.cases;
    if (!indicator_identity(space.outcome(i), A))
      out.indicator.failures.push_back({label + " outcome=" + std::to_string(i), "", ""});
  }
}

template <class W>
void run_paired(SuiteSet& out, const FiniteProbSpace<W>& space, const EventFamily& A, const EventFamily& B,
                const std::string& label) {
  record(out.pair, ie_pair(space, A, B), label);
  for (std::size_t k = 1; 2 * k <= A.size(); ++k)
    record(out.pair_at_least_k, ie_pair_at_least_k(space, A, B, k), label + " k=" + std::to_string(k));
}

template <class W>
void run_space(SuiteSet& out, const FiniteProbSpace<W>& space, std::size_t length, const std::string& name,
               std::uint64_t seed) {
  const std::size_t coord = std::min(length, kMaxSingleFamily);
  run_single(out, space, coordinate_family(coord, {1}), name + " A=coord{1} n=" + std::to_string(coord));
  for (std::size_t n : {1, 3, 6, 9, 12}) {
    const double density = 0.25 + 0.05 * static_cast<double>(n % 4);
    run_single(out, space, hashed_family(n, seed + n, density), name + " A=hashed n=" + std::to_string(n));
  }
  const std::size_t pcoord = std::min(length, kMaxPairedFamily);
  run_paired(out, space, coordinate_family(pcoord, {1}), coordinate_family(pcoord, {2}),
             name + " A=coord{1} B=coord{2} n=" + std::to_string(pcoord));
  for (std::size_t n : {2, 4, 7, 10}) {
    const auto A = hashed_family(n, seed + 100 + n, 0.35);
    run_paired(out, space, A, hashed_complement_family(A, seed + 200 + n, 0.45),
               name + " A,B=hashed n=" + std::to_string(n));
  }
}

}  // namespace detail

/// Runs every identity over product spaces with the truncated pi marginal
/// and a random marginal, and over length- and Gauss-weighted cylinder spaces,
/// all over alphabets of at most five digits.
inline std::vector<SuiteReport> run_identity_suites(std::uint64_t seed = 1) {
  detail::SuiteSet out;
  const std::vector<std::pair<int, std::size_t>> shapes = {{2, 12}, {3, 7}, {4, 5}, {5, 5}};
  for (auto [m, len] : shapes) {
    const std::string name = "pi" + std::to_string(m) + "^" + std::to_string(len);
    detail::run_space(out, product_space(truncated_pi_marginal(m), len), len, name, seed);
  }
  std::mt19937_64 rng(seed);
  detail::run_space(out, product_space(random_rational_marginal(4, rng), 5), 5, "random4^5", seed);
  detail::run_space(out, cylinder_length_space(5, 4), 4, "length5^4", seed);
  detail::run_space(out, cylinder_length_space(2, 10), 10, "length2^10", seed);
  detail::run_space(out, cylinder_gauss_space(5, 4), 4, "gauss5^4", seed);
  detail::run_space(out, cylinder_gauss_space(3, 6), 6, "gauss3^6", seed);
  return {out.at_least_one, out.pair, out.at_least_k, out.pair_at_least_k, out.indicator, out.bonferroni};
}

}  // namespace rr::identities
