// rrcli: command-line front end for the range-renewal library.

#include "rr/rr.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

struct StreamOptions {
  std::string kind;
  std::string construction;
  std::uint64_t B = 2;
  std::string beta;
  std::string c;
  std::string filler;
  std::uint64_t filler_seed = 0;
  std::string path;
};

void add_stream_options(CLI::App* sub, StreamOptions& o) {
  sub->add_option("--kind", o.kind, "stream kind")->check(CLI::IsMember({"gauss", "iid", "construction", "file"}));
  sub->add_option("--construction", o.construction, "construction kind")
      ->check(CLI::IsMember({"E_beta", "F_c", "e_minus_2"}));
  sub->add_option("--B", o.B, "digit bound for E_beta");
  sub->add_option("--beta", o.beta, "beta for E_beta, as p/q");
  sub->add_option("--c", o.c, "c for F_c, as p/q");
  sub->add_option("--filler", o.filler, "E_beta filler")->check(CLI::IsMember({"ones", "seeded"}));
  sub->add_option("--filler-seed", o.filler_seed, "seed of the seeded filler");
  sub->add_option("--path", o.path, "digit file for kind=file");
}

/// Flags given on the command line override the config file.
void apply_stream_options(const CLI::App* sub, const StreamOptions& o, rr::DigitStreamSpec& spec) {
  if (sub->count("--kind")) spec.kind = rr::parse_stream_kind(o.kind);
  auto& c = spec.construction;
  if (sub->count("--construction")) c.kind = rr::parse_construction_kind(o.construction);
  if (sub->count("--B")) c.B = o.B;
  if (sub->count("--beta")) c.beta = rr::parse_rational(o.beta);
  if (sub->count("--c")) c.c = rr::parse_rational(o.c);
  if (sub->count("--filler")) c.filler.kind = o.filler == "seeded" ? rr::Filler::Kind::seeded : rr::Filler::Kind::ones;
  if (sub->count("--filler-seed")) c.filler.seed = o.filler_seed;
  if (sub->count("--path")) spec.path = o.path;
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) std::cout << text;
  else rr::write_text(out, text);
}

std::string join(const std::vector<std::string>& parts, char sep) {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) s += sep;
    s += parts[i];
  }
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Range-renewal statistics of continued-fraction digits"};
  app.require_subcommand(1);

  std::uint64_t seed = 1;
  std::string config_path;
  std::string out;
  std::string format = "csv";
  app.add_option("--seed", seed, "master seed");
  app.add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
  app.add_option("--out", out, "output path (default stdout)");
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json"}));

  // expand
  auto* expand = app.add_subcommand("expand", "continued-fraction digits of a rational or a bracket");
  std::string rational, lo, hi;
  std::size_t max_digits = 1000;
  auto* rational_opt = expand->add_option("--rational", rational, "p/q in (0,1)");
  auto* lo_opt = expand->add_option("--lo", lo, "bracket lower end p/q");
  expand->add_option("--hi", hi, "bracket upper end p/q")->needs(lo_opt);
  lo_opt->needs(expand->get_option("--hi"));
  rational_opt->excludes(lo_opt);
  expand->add_option("--digits", max_digits, "number of digits");

  // sample
  auto* sample = app.add_subcommand("sample", "first n digits of a stream");
  StreamOptions sample_stream;
  std::uint64_t sample_n = 20, sample_index = 0;
  add_stream_options(sample, sample_stream);
  sample->add_option("--n", sample_n, "number of digits");
  sample->add_option("--index", sample_index, "stream index under the master seed");

  // stats
  auto* stats = app.add_subcommand("stats", "trajectory of R_n, R_{n,k}, R_{n,k+}");
  StreamOptions stats_stream;
  std::vector<std::uint64_t> stats_n{100, 1000, 10000};
  std::vector<std::uint64_t> stats_ks{1, 2, 3, 4};
  std::uint64_t stats_index = 0;
  add_stream_options(stats, stats_stream);
  stats->add_option("--n", stats_n, "checkpoints");
  stats->add_option("--ks", stats_ks, "occupancy levels k");
  stats->add_option("--index", stats_index, "stream index under the master seed");

  // theory
  auto* theory = app.add_subcommand("theory", "limiting constants");
  long long k_max = 10;
  std::vector<std::uint64_t> expect_n;
  theory->add_option("--k-max", k_max, "largest k")->check(CLI::PositiveNumber);
  theory->add_option("--expect-n", expect_n, "also tabulate the i.i.d. expectation of R_n at these n");

  // verify, verify-bounds
  auto* verify = app.add_subcommand("verify", "inclusion-exclusion identity suites");
  auto* verify_bounds = app.add_subcommand("verify-bounds", "quasi-independence and comparison scans");
  rr::ScanOptions scan;
  verify_bounds->add_option("--max-digit", scan.max_digit, "alphabet of the pair scans");
  verify_bounds->add_option("--random-pairs", scan.random_pairs, "random pairs in the quasi-independence scan");
  verify_bounds->add_option("--comparison-samples", scan.comparison_samples, "dominated pairs per length 4..6");
  verify_bounds->add_option("--comparison-fuzz", scan.comparison_fuzz, "fuzzed comparison pairs");

  // dimension
  auto* dimension = app.add_subcommand("dimension", "Good's sigma_n table");
  std::vector<std::uint64_t> dim_B{2};
  std::vector<std::size_t> dim_n{2, 3, 4, 5};
  double dim_tol = 1e-10;
  dimension->add_option("--B", dim_B, "digit bounds");
  dimension->add_option("--n", dim_n, "stage depths");
  dimension->add_option("--tol", dim_tol, "bisection tolerance")->check(CLI::PositiveNumber);

  // montecarlo
  auto* mc = app.add_subcommand("montecarlo", "Monte Carlo summary of the range-renewal ratios");
  StreamOptions mc_stream;
  std::vector<std::uint64_t> mc_n, mc_ks;
  std::uint64_t mc_trials = 0;
  unsigned mc_workers = 0;
  add_stream_options(mc, mc_stream);
  mc->add_option("--n", mc_n, "checkpoints");
  mc->add_option("--ks", mc_ks, "occupancy levels k");
  mc->add_option("--trials", mc_trials, "number of trials");
  mc->add_option("--workers", mc_workers, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const bool as_json = format == "json";
  try {
    rr::ExperimentConfig cfg;
    if (!config_path.empty()) cfg = rr::load_config(config_path);
    if (app.count("--seed") || config_path.empty()) cfg.stream.seed = seed;
    if (!out.empty()) cfg.out = out;

    if (*expand) {
      rr::Word digits;
      if (!rational.empty()) {
        digits = rr::expand_rational(rr::parse_rational(rational), max_digits);
      } else if (!lo.empty()) {
        try {
          digits = rr::expand_point(rr::parse_rational(lo), rr::parse_rational(hi), max_digits);
        } catch (const rr::InsufficientPrecision& e) {
          digits = e.obtained();
          std::cerr << "warning: " << e.what() << '\n';
        }
      } else {
        throw std::invalid_argument("expand needs --rational or --lo/--hi");
      }
      std::vector<std::string> parts;
      for (const auto& d : digits) parts.push_back(d.str());
      emit(as_json ? rr::json(parts).dump() + "\n" : join(parts, ',') + "\n", cfg.out);
      return kExitOk;
    }

    if (*sample) {
      apply_stream_options(sample, sample_stream, cfg.stream);
      const auto digits = rr::sample_digits(cfg.stream, sample_index, sample_n);
      emit(as_json ? rr::json(digits).dump() + "\n" : join(digits, ',') + "\n", cfg.out);
      return kExitOk;
    }

    if (*stats) {
      apply_stream_options(stats, stats_stream, cfg.stream);
      if (stats->count("--n") || config_path.empty()) cfg.checkpoints = stats_n;
      if (stats->count("--ks") || config_path.empty()) cfg.ks = stats_ks;
      cfg.validate();
      const auto rows = rr::stream_trajectory(cfg.stream, stats_index, cfg.checkpoints, cfg.ks);
      if (as_json) {
        rr::json arr = rr::json::array();
        for (const auto& r : rows)
          arr.push_back({{"n", r.n}, {"R_n", r.r_n}, {"R_nk", r.r_nk}, {"R_nk_plus", r.r_nk_plus}, {"ks", cfg.ks}});
        emit(arr.dump(2) + "\n", cfg.out);
      } else {
        emit(rr::trajectory_csv(rows, cfg.ks), cfg.out);
      }
      return kExitOk;
    }

    if (*theory) {
      std::string text;
      rr::json arr = rr::json::array();
      text = "k,r_k,r_k_plus,escape_rate\n";
      for (long long k = 1; k <= k_max; ++k) {
        const auto rk = rr::to_string(rr::theory::r_k(k));
        const auto rkp = rr::to_string(rr::theory::r_k_plus(k));
        const auto esc = rr::to_string(rr::theory::escape_rate(k));
        text += std::to_string(k) + ',' + rk + ',' + rkp + ',' + esc + '\n';
        arr.push_back({{"k", k}, {"r_k", rk}, {"r_k_plus", rkp}, {"escape_rate", esc}});
      }
      rr::json expect = rr::json::array();
      if (!expect_n.empty()) text += "\nn,expected_R_n_iid,asymptotic_R_n\n";
      for (auto n : expect_n) {
        const double e = rr::theory::expected_Rn_iid(n), a = rr::theory::asymptotic_Rn(n);
        text += std::to_string(n) + ',' + rr::format_real(e) + ',' + rr::format_real(a) + '\n';
        expect.push_back({{"n", n}, {"expected_R_n_iid", e}, {"asymptotic_R_n", a}});
      }
      if (as_json) {
        rr::json j = {{"limit_constant", rr::theory::limit_constant()}, {"table", arr}};
        if (!expect_n.empty()) j["expectations"] = expect;
        emit(j.dump(2) + "\n", cfg.out);
      } else {
        emit(text, cfg.out);
      }
      return kExitOk;
    }

    if (*verify) {
      const auto reports = rr::identities::run_identity_suites(cfg.stream.seed);
      rr::json arr = rr::json::array();
      bool ok = true;
      for (const auto& r : reports) {
        arr.push_back(rr::suite_json(r));
        ok = ok && r.passed();
      }
      emit(arr.dump(2) + "\n", cfg.out);
      return ok ? kExitOk : kExitVerifyFailed;
    }

    if (*verify_bounds) {
      scan.seed = cfg.stream.seed;
      const auto families = rr::run_bound_scans(scan);
      rr::json arr = rr::json::array();
      bool ok = true;
      for (const auto& f : families) {
        arr.push_back(rr::bound_family_json(f));
        ok = ok && f.violations == 0;
      }
      emit(arr.dump(2) + "\n", cfg.out);
      return ok ? kExitOk : kExitVerifyFailed;
    }

    if (*dimension) {
      std::string text = "B,n,sigma_n\n";
      rr::json arr = rr::json::array();
      for (auto B : dim_B) {
        for (auto n : dim_n) {
          const double s = rr::good_sigma_n(B, n, dim_tol);
          text += std::to_string(B) + ',' + std::to_string(n) + ',' + rr::format_real(s) + '\n';
          arr.push_back({{"B", B}, {"n", n}, {"sigma_n", s}});
        }
      }
      emit(as_json ? arr.dump(2) + "\n" : text, cfg.out);
      return kExitOk;
    }

    if (*mc) {
      apply_stream_options(mc, mc_stream, cfg.stream);
      if (mc->count("--n")) cfg.checkpoints = mc_n;
      if (mc->count("--ks")) cfg.ks = mc_ks;
      if (mc->count("--trials")) cfg.trials = mc_trials;
      if (mc->count("--workers")) cfg.workers = mc_workers;
      const auto rows = rr::run_montecarlo(cfg);
      emit(as_json ? rr::summary_json(rows).dump(2) + "\n" : rr::summary_csv(rows), cfg.out);
      return kExitOk;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
