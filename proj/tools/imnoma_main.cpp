// Copyright 2026 The imnoma Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <iomanip>
#include <iostream>

#include <CLI11.hpp>

#include "imnoma/imnoma.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 1;
constexpr int kExitRuntimeError = 2;

struct Options {
  std::string config_path;
  std::string out_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  std::optional<std::string> snr;
  std::optional<double> alpha;
  std::optional<std::uint64_t> trials;
};

imnoma::ExperimentConfig load_with_overrides(const Options& opt) {
  if (opt.config_path.empty()) throw imnoma::ConfigError("--config is required for this command");
  imnoma::ExperimentConfig cfg = imnoma::load_config(opt.config_path);
  if (opt.seed) cfg.seed = *opt.seed;
  if (opt.workers) cfg.workers = *opt.workers;
  if (opt.snr) cfg.snr_grid_db = imnoma::detail::parse_list(*opt.snr, "--snr");
  if (opt.alpha) cfg.alpha = *opt.alpha;
  if (opt.trials) cfg.stopping.max_blocks = *opt.trials;
  cfg.validate();
  return cfg;
}

void print_records(const std::vector<imnoma::BerRecord>& records) {
  std::cout << std::left << std::setw(8) << "user" << std::setw(10) << "snr_db" << std::setw(8)
            << "alpha" << std::setw(12) << "bits" << std::setw(10) << "errors" << std::setw(14)
            << "ber" << std::setw(14) << "theory" << "stopped_on\n";
  for (const auto& r : records) {
    std::cout << std::left << std::setw(8) << r.user << std::setw(10)
              << imnoma::format_g6(r.snr_db) << std::setw(8) << imnoma::format_g6(r.alpha)
              << std::setw(12) << r.bits << std::setw(10) << r.errors << std::setw(14)
              << imnoma::format_g6(r.ber) << std::setw(14)
              << (r.theory ? imnoma::format_g6(*r.theory) : std::string{"-"})
              << (r.bits == 0 ? "-" : (r.reached_min_errors ? "errors" : "block-cap")) << "\n";
  }
}

void maybe_write(const Options& opt, const std::vector<imnoma::BerRecord>& records) {
  if (!opt.out_path.empty()) {
    imnoma::write_csv_file(opt.out_path, records);
    std::cout << "wrote " << records.size() << " rows to " << opt.out_path << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-user downlink NOMA link simulator with index-modulated OFDM subcarriers"};
  app.require_subcommand(1);
  app.fallthrough();  // accept global flags after the verb as well

  Options opt;
  app.add_option("--config", opt.config_path, "experiment configuration file");
  app.add_option("--out", opt.out_path, "CSV output path");
  app.add_option("--seed", opt.seed, "override the RNG seed");
  app.add_option("--workers", opt.workers, "override the worker-thread count");
  app.add_option("--snr", opt.snr, "override the SNR grid (list or start:step:stop, dB)");
  app.add_option("--alpha", opt.alpha, "override the power-allocation factor");
  app.add_option("--trials", opt.trials, "override the block budget per point");

  auto* run = app.add_subcommand("run", "simulate a single (snr, alpha) point");
  double run_snr = 30.0;
  run->add_option("--point-snr", run_snr, "SNR of the point in dB")->capture_default_str();
  auto* sweep = app.add_subcommand("sweep", "simulate the configured SNR grid with theory attached");
  auto* opta = app.add_subcommand("optimize-alpha",
                                  "grid-search the power split for the lowest average BER");
  auto* theory = app.add_subcommand("theory", "evaluate the error bounds without simulating");
  auto* baseline = app.add_subcommand("baseline",
                                      "sweep the all-subcarriers-active reference at matched rates");
  auto* validate = app.add_subcommand("validate", "run the internal invariant suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfigError;
  }

  try {
    if (validate->parsed()) {
      const auto checks = imnoma::run_selfchecks();
      bool all = true;
      for (const auto& c : checks) {
        std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << ": " << c.detail << "\n";
        all = all && c.pass;
      }
      return all ? kExitOk : kExitRuntimeError;
    }

    const imnoma::ExperimentConfig cfg = load_with_overrides(opt);
    std::vector<imnoma::BerRecord> records;

    if (run->parsed()) {
      if (opt.snr && !cfg.snr_grid_db.empty()) run_snr = cfg.snr_grid_db.front();
      records = imnoma::run_ber_point(cfg, run_snr, cfg.alpha);
    } else if (sweep->parsed()) {
      records = imnoma::sweep_snr(cfg);
    } else if (theory->parsed()) {
      records = imnoma::theory_sweep(cfg);
    } else if (baseline->parsed()) {
      const imnoma::ExperimentConfig base = imnoma::make_baseline_config(cfg);
      std::cout << "baseline modulation orders: NU M=" << base.nu.mod_order
                << ", FU M=" << base.fu.mod_order << "\n";
      records = imnoma::sweep_snr(base);
    } else if (opta->parsed()) {
      const imnoma::AlphaSearchResult res = imnoma::optimize_alpha(cfg);
      std::cout << std::left << std::setw(8) << "alpha" << std::setw(14) << "ber_nu"
                << std::setw(14) << "ber_fu" << "avg_ber\n";
      for (const auto& p : res.points) {
        std::cout << std::left << std::setw(8) << imnoma::format_g6(p.alpha) << std::setw(14)
                  << imnoma::format_g6(p.ber_nu) << std::setw(14) << imnoma::format_g6(p.ber_fu)
                  << imnoma::format_g6(p.avg_ber) << "\n";
      }
      std::cout << "alpha* = " << imnoma::format_g6(res.alpha_star) << " at "
                << imnoma::format_g6(cfg.alpha_search_snr_db) << " dB\n";
      maybe_write(opt, res.records);
      return kExitOk;
    }

    print_records(records);
    maybe_write(opt, records);
    return kExitOk;
  } catch (const imnoma::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntimeError;
  }
}
