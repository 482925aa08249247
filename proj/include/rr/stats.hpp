#pragma once

// Streaming visiting numbers N_n(x) and range-renewal counts R_n, R_{n,k},
// R_{n,k+}.

#include "rr/bigint.hpp"

#include <boost/functional/hash.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <unordered_map>
#include <vector>

namespace rr {

namespace detail {
template <class Key>
struct KeyHash {
  std::size_t operator()(const Key& k) const {
    if constexpr (std::is_integral_v<Key>) {
      return std::hash<Key>{}(k);
    } else {
      return boost::hash<Key>{}(k);
    }
  }
};
}  // namespace detail

/// Multiplicity table plus its occupancy histogram: occupancy[k] is the
/// number of digit values seen exactly k times.
template <class Key = std::uint64_t>
class RangeRenewalState {
 public:
  void observe(const Key& digit) {
    std::uint64_t& c = counts_[digit];
    if (c == 0) {
      ++distinct_;
    } else {
      --occupancy_[c];
    }
    ++c;
    if (occupancy_.size() <= c) occupancy_.resize(c + 1, 0);
    ++occupancy_[c];
    ++n_;
  }

  std::uint64_t n() const noexcept { return n_; }
  std::uint64_t r_n() const noexcept { return distinct_; }

  std::uint64_t r_nk(std::uint64_t k) const {
    if (k < 1) throw std::domain_error("r_nk: k must be >= 1");
    return k < occupancy_.size() ? occupancy_[k] : 0;
  }

  /// R_{n,k+} = R_n - sum_{l<k} R_{n,l}.
  std::uint64_t r_nk_plus(std::uint64_t k) const {
    if (k < 1) throw std::domain_error("r_nk_plus: k must be >= 1");
    std::uint64_t below = 0;
    for (std::uint64_t l = 1; l < k && l < occupancy_.size(); ++l) below += occupancy_[l];
    return distinct_ - below;
  }

  /// N_n(x).
  std::uint64_t visits(const Key& digit) const {
    auto it = counts_.find(digit);
    return it == counts_.end() ? 0 : it->second;
  }

  std::uint64_t max_multiplicity() const noexcept {
    return occupancy_.empty() ? 0 : occupancy_.size() - 1;
  }

  const std::unordered_map<Key, std::uint64_t, detail::KeyHash<Key>>& counts() const noexcept {
    return counts_;
  }

 private:
  std::unordered_map<Key, std::uint64_t, detail::KeyHash<Key>> counts_;
  std::vector<std::uint64_t> occupancy_;
  std::uint64_t distinct_ = 0;
  std::uint64_t n_ = 0;
};

struct TrajectoryRow {
  std::uint64_t n = 0;
  std::uint64_t r_n = 0;
  std::vector<std::uint64_t> r_nk;       // aligned with the requested ks
  std::vector<std::uint64_t> r_nk_plus;  // aligned with the requested ks
};

/// Feeds digits from `next_digit` (returning std::optional<Key>, empty at end
/// of stream) and snapshots the counts at each checkpoint.
template <class Key, class Source>
std::vector<TrajectoryRow> trajectory(Source&& next_digit, const std::vector<std::uint64_t>& checkpoints,
                                      const std::vector<std::uint64_t>& ks) {
  for (std::size_t i = 1; i < checkpoints.size(); ++i)
    if (checkpoints[i] <= checkpoints[i - 1])
      throw std::invalid_argument("trajectory: checkpoints must be strictly ascending");
  for (auto k : ks)
    if (k < 1) throw std::invalid_argument("trajectory: k must be >= 1");

  RangeRenewalState<Key> state;
  std::vector<TrajectoryRow> rows;
  rows.reserve(checkpoints.size());
  for (std::uint64_t cp : checkpoints) {
    while (state.n() < cp) {
      std::optional<Key> d = next_digit();
      if (!d) {
        throw std::runtime_error("stream ended after " + std::to_string(state.n()) +
                                 " digits, before checkpoint " + std::to_string(cp));
      }
      state.observe(*d);
    }
    TrajectoryRow row{state.n(), state.r_n(), {}, {}};
    for (auto k : ks) {
      row.r_nk.push_back(state.r_nk(k));
      row.r_nk_plus.push_back(state.r_nk_plus(k));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

inline std::string trajectory_csv(const std::vector<TrajectoryRow>& rows, const std::vector<std::uint64_t>& ks) {
  std::string out = "n,R_n";
  for (auto k : ks) out += ",R_n_" + std::to_string(k) + ",R_n_" + std::to_string(k) + "_plus";
  out += '\n';
  for (const auto& row : rows) {
    out += std::to_string(row.n) + ',' + std::to_string(row.r_n);
    for (std::size_t i = 0; i < ks.size(); ++i)
      out += ',' + std::to_string(row.r_nk[i]) + ',' + std::to_string(row.r_nk_plus[i]);
    out += '\n';
  }
  return out;
}

}  // namespace rr
