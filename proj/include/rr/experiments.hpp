#pragma once

// Stream specifications, configuration, the deterministic parallel Monte
// Carlo driver and report emission.

#include "rr/bigint.hpp"
#include "rr/constructions.hpp"
#include "rr/identities.hpp"
#include "rr/measure_bounds.hpp"
#include "rr/sampling.hpp"
#include "rr/stats.hpp"
#include "rr/theory.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <fstream>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace rr {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Stream specs

struct ConstructionSpec {
  enum class Kind { E_beta, F_c, e_minus_2 };
  Kind kind = Kind::e_minus_2;
  std::uint64_t B = 2;
  Rational beta{1, 2};
  Filler filler;
  Rational c{1};
};

struct DigitStreamSpec {
  enum class Kind { gauss, iid, construction, file };
  Kind kind = Kind::gauss;
  std::uint64_t seed = 1;
  ConstructionSpec construction;
  std::string path;
};

inline std::string kind_name(DigitStreamSpec::Kind k) {
  switch (k) {
    case DigitStreamSpec::Kind::gauss: return "gauss";
    case DigitStreamSpec::Kind::iid: return "iid";
    case DigitStreamSpec::Kind::construction: return "construction";
    case DigitStreamSpec::Kind::file: return "file";
  }
  return "?";
}

inline DigitStreamSpec::Kind parse_stream_kind(const std::string& s) {
  if (s == "gauss") return DigitStreamSpec::Kind::gauss;
  if (s == "iid") return DigitStreamSpec::Kind::iid;
  if (s == "construction") return DigitStreamSpec::Kind::construction;
  if (s == "file") return DigitStreamSpec::Kind::file;
  throw std::invalid_argument("unknown stream kind '" + s + "'");
}

inline ConstructionSpec::Kind parse_construction_kind(const std::string& s) {
  if (s == "E_beta") return ConstructionSpec::Kind::E_beta;
  if (s == "F_c") return ConstructionSpec::Kind::F_c;
  if (s == "e_minus_2") return ConstructionSpec::Kind::e_minus_2;
  throw std::invalid_argument("unknown construction '" + s + "'");
}

/// Whitespace- or comma-separated positive decimal digits.
inline std::vector<BigInt> parse_digits(const std::string& text) {
  std::vector<BigInt> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char ch = text[i];
    if (std::isspace(static_cast<unsigned char>(ch)) || ch == ',') {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])) && text[j] != ',') ++j;
    const std::string token = text.substr(i, j - i);
    const std::string where = "digit " + std::to_string(out.size() + 1) + " (byte " + std::to_string(i) + ")";
    for (char t : token)
      if (!std::isdigit(static_cast<unsigned char>(t)))
        throw std::invalid_argument("malformed " + where + ": '" + token + "'");
    BigInt v(token);
    if (v < 1) throw std::invalid_argument("malformed " + where + ": partial quotients are >= 1");
    out.push_back(std::move(v));
    i = j;
  }
  return out;
}

inline std::vector<BigInt> read_digit_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open digit file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_digits(buf.str());
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

/// Calls f with a source returning std::optional<Key>. Key is uint64 for
/// bounded-value streams and BigInt for F_c and file streams.
template <class F>
decltype(auto) with_digit_source(const DigitStreamSpec& spec, std::uint64_t index, F&& f) {
  const StreamKey key = derive_key(spec.seed, index, kind_tag(kind_name(spec.kind)));
  switch (spec.kind) {
    case DigitStreamSpec::Kind::gauss: {
      GaussDigitStream s(key);
      return f([s]() mutable { return std::optional<std::uint64_t>(s.next()); });
    }
    case DigitStreamSpec::Kind::iid: {
      IidDigitStream s(key);
      return f([s]() mutable { return std::optional<std::uint64_t>(s.next()); });
    }
    case DigitStreamSpec::Kind::file: {
      auto digits = std::make_shared<std::vector<BigInt>>(read_digit_file(spec.path));
      return f([digits, pos = std::size_t{0}]() mutable {
        return pos < digits->size() ? std::optional<BigInt>((*digits)[pos++]) : std::nullopt;
      });
    }
    case DigitStreamSpec::Kind::construction: break;
  }
  const ConstructionSpec& c = spec.construction;
  switch (c.kind) {
    case ConstructionSpec::Kind::E_beta: {
      EBetaStream s(c.B, c.beta, c.filler);
      return f([s]() mutable { return std::optional<std::uint64_t>(s.next()); });
    }
    case ConstructionSpec::Kind::F_c: {
      FcStream s(c.c);
      return f([s]() mutable { return std::optional<BigInt>(s.next()); });
    }
    case ConstructionSpec::Kind::e_minus_2:
      digits_e_minus_2(1);  // runs the one-time pattern validation
      return f([i = std::uint64_t{0}]() mutable { return std::optional<std::uint64_t>(e_minus_2_digit(++i)); });
  }
  throw std::logic_error("unreachable stream kind");
}

inline std::vector<TrajectoryRow> stream_trajectory(const DigitStreamSpec& spec, std::uint64_t index,
                                                    const std::vector<std::uint64_t>& checkpoints,
                                                    const std::vector<std::uint64_t>& ks) {
  return with_digit_source(spec, index, [&](auto source) {
    using Key = typename decltype(source())::value_type;
    return trajectory<Key>(source, checkpoints, ks);
  });
}

/// First n digits of stream `index`, as decimal strings.
inline std::vector<std::string> sample_digits(const DigitStreamSpec& spec, std::uint64_t index, std::uint64_t n) {
  return with_digit_source(spec, index, [&](auto source) {
    std::vector<std::string> out;
    for (std::uint64_t i = 0; i < n; ++i) {
      auto d = source();
      if (!d) break;
      if constexpr (std::is_integral_v<std::remove_cvref_t<decltype(*d)>>) out.push_back(std::to_string(*d));
      else out.push_back(d->str());
    }
    return out;
  });
}

// ---------------------------------------------------------------------------
// Configuration

struct ExperimentConfig {
  DigitStreamSpec stream;
  std::vector<std::uint64_t> checkpoints{100, 1000, 10000, 100000};
  std::uint64_t trials = 1;
  std::vector<std::uint64_t> ks{1, 2, 3, 4};
  std::string out;
  unsigned workers = 1;

  void validate() const {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (workers < 1) throw std::invalid_argument("workers must be >= 1");
    if (checkpoints.empty()) throw std::invalid_argument("at least one checkpoint is required");
    for (std::size_t i = 0; i < checkpoints.size(); ++i) {
      if (checkpoints[i] < 1) throw std::invalid_argument("checkpoints must be >= 1");
      if (i && checkpoints[i] <= checkpoints[i - 1])
        throw std::invalid_argument("checkpoints must be strictly ascending");
    }
    for (auto k : ks)
      if (k < 1) throw std::invalid_argument("k must be >= 1");
  }
};

inline Rational json_rational(const json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long long>());
  throw std::invalid_argument("expected a rational as \"p/q\" or an integer");
}

/// Reads the recognised keys of a config object into `cfg`; other keys are an error.
inline void apply_config_json(ExperimentConfig& cfg, const json& j) {
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  static const std::vector<std::string> known = {"kind", "n",    "trials", "ks",   "seed",         "out",
                                                 "workers", "construction", "B", "beta", "filler", "filler_seed",
                                                 "c",    "path"};
  for (const auto& [key, _] : j.items())
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw std::invalid_argument("unknown config key '" + key + "'");
  try {
    if (j.contains("kind")) cfg.stream.kind = parse_stream_kind(j["kind"].get<std::string>());
    if (j.contains("n")) {
      cfg.checkpoints = j["n"].is_array() ? j["n"].get<std::vector<std::uint64_t>>()
                                          : std::vector<std::uint64_t>{j["n"].get<std::uint64_t>()};
    }
    if (j.contains("trials")) cfg.trials = j["trials"].get<std::uint64_t>();
    if (j.contains("ks")) cfg.ks = j["ks"].get<std::vector<std::uint64_t>>();
    if (j.contains("seed")) cfg.stream.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("out")) cfg.out = j["out"].get<std::string>();
    if (j.contains("workers")) cfg.workers = j["workers"].get<unsigned>();
    if (j.contains("path")) cfg.stream.path = j["path"].get<std::string>();
    auto& c = cfg.stream.construction;
    if (j.contains("construction")) c.kind = parse_construction_kind(j["construction"].get<std::string>());
    if (j.contains("B")) c.B = j["B"].get<std::uint64_t>();
    if (j.contains("beta")) c.beta = json_rational(j["beta"]);
    if (j.contains("c")) c.c = json_rational(j["c"]);
    if (j.contains("filler")) {
      const auto f = j["filler"].get<std::string>();
      if (f == "ones") c.filler.kind = Filler::Kind::ones;
      else if (f == "seeded") c.filler.kind = Filler::Kind::seeded;
      else throw std::invalid_argument("filler must be 'ones' or 'seeded'");
    }
    if (j.contains("filler_seed")) c.filler.seed = j["filler_seed"].get<std::uint64_t>();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
}

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
  ExperimentConfig cfg;
  apply_config_json(cfg, j);
  return cfg;
}

// ---------------------------------------------------------------------------
// Monte Carlo

struct SummaryRow {
  std::uint64_t n = 0;
  std::string stat;  // "R_n/sqrt(n)", "R_nk/R_n" or "R_nk/R_nk+"
  std::uint64_t k = 0;  // 0 for R_n/sqrt(n)
  double mean = 0;
  double stderr_ = 0;
  double theory = 0;
};

namespace detail {

/// Per-trial statistics in the order of the summary rows.
inline std::vector<double> trial_values(const std::vector<TrajectoryRow>& rows, const std::vector<std::uint64_t>& ks) {
  std::vector<double> v;
  for (const auto& row : rows) {
    const double rn = static_cast<double>(row.r_n);
    v.push_back(rn / std::sqrt(static_cast<double>(row.n)));
    for (std::size_t i = 0; i < ks.size(); ++i) v.push_back(rn > 0 ? static_cast<double>(row.r_nk[i]) / rn : 0.0);
    for (std::size_t i = 0; i < ks.size(); ++i) {
      const double plus = static_cast<double>(row.r_nk_plus[i]);
      v.push_back(plus > 0 ? static_cast<double>(row.r_nk[i]) / plus : 0.0);
    }
  }
  return v;
}

}  // namespace detail

/// Trials run on `workers` threads; the reduction walks trials in index
/// order, so the result does not depend on the worker count.
inline std::vector<SummaryRow> run_montecarlo(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<std::vector<double>> per_trial(cfg.trials);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::uint64_t t = next++; t < cfg.trials; t = next++) {
      try {
        per_trial[t] = detail::trial_values(stream_trajectory(cfg.stream, t, cfg.checkpoints, cfg.ks), cfg.ks);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = cfg.trials;
      }
    }
  };
  const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(cfg.workers, cfg.trials));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);

  std::vector<SummaryRow> rows;
  std::size_t col = 0;
  const double T = static_cast<double>(cfg.trials);
  auto summarize = [&](std::uint64_t n, std::string stat, std::uint64_t k, double theory) {
    double sum = 0;
    for (const auto& v : per_trial) sum += v[col];
    const double mean = sum / T;
    double ss = 0;
    for (const auto& v : per_trial) ss += (v[col] - mean) * (v[col] - mean);
    const double se = cfg.trials > 1 ? std::sqrt(ss / (T - 1) / T) : 0.0;
    rows.push_back({n, std::move(stat), k, mean, se, theory});
    ++col;
  };
  for (auto n : cfg.checkpoints) {
    summarize(n, "R_n/sqrt(n)", 0, theory::limit_constant());
    for (auto k : cfg.ks) summarize(n, "R_nk/R_n", k, theory::r_k_real(static_cast<long long>(k)));
    for (auto k : cfg.ks)
      summarize(n, "R_nk/R_nk+", k, theory::escape_rate(static_cast<long long>(k)).convert_to<double>());
  }
  return rows;
}

inline std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string summary_csv(const std::vector<SummaryRow>& rows) {
  std::string out = "n,stat,k,mean,stderr,theory\n";
  for (const auto& r : rows) {
    out += std::to_string(r.n) + ',' + r.stat + ',' + (r.k ? std::to_string(r.k) : std::string()) + ',' +
           format_real(r.mean) + ',' + format_real(r.stderr_) + ',' + format_real(r.theory) + '\n';
  }
  return out;
}

inline json summary_json(const std::vector<SummaryRow>& rows) {
  json arr = json::array();
  for (const auto& r : rows) {
    json row = {{"n", r.n}, {"stat", r.stat}, {"mean", r.mean}, {"stderr", r.stderr_}, {"theory", r.theory}};
    if (r.k) row["k"] = r.k;
    arr.push_back(std::move(row));
  }
  return arr;
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

// ---------------------------------------------------------------------------
// Reports

inline json suite_json(const identities::SuiteReport& r) {
  json failures = json::array();
  for (const auto& f : r.failures) failures.push_back({{"inputs", f.inputs}, {"lhs", f.lhs}, {"rhs", f.rhs}});
  return {{"suite", r.suite}, {"cases", r.cases}, {"failures", failures}};
}

inline json bound_family_json(const BoundFamily& f) {
  return {{"family", f.name}, {"bound_lo", f.bound_lo}, {"bound_hi", f.bound_hi}, {"min", f.min},
          {"max", f.max},     {"cases", f.cases},       {"violations", f.violations}};
}

/// Every bound scan with its observed extremes.
inline std::vector<BoundFamily> run_bound_scans(const ScanOptions& opt = {}) {
  auto [mu, len] = scan_quasi_independence(opt);
  return {mu, len, scan_comparison(opt), scan_q_ratio(), scan_multi_ratio()};
}

}  // namespace rr
