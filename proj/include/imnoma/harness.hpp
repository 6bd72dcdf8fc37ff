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

#pragma once

#include <chrono>
#include <cstdio>
#include <fstream>
#include <optional>
#include <thread>

#include "imnoma/analysis.hpp"
#include "imnoma/channel.hpp"
#include "imnoma/rx_chain.hpp"
#include "imnoma/tx_chain.hpp"

namespace imnoma {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UserConfig {
  int n = 4;
  int k = 1;
  int mod_order = 4;
};

struct SystemConfig {
  int subcarriers = 128;
  int cp = 16;
  int channel_taps = 10;
  double total_power = 1.0;
  double sigma2_nu_db = 0.0;
  double sigma2_fu_db = -3.0;
};

struct StoppingRule {
  std::uint64_t max_blocks = 200000;
  std::uint64_t min_bit_errors = 100;
};

struct AlphaGrid {
  double start = 0.0;
  double stop = 0.5;
  double step = 0.05;

  std::vector<double> values() const {
    std::vector<double> v;
    for (int i = 0;; ++i) {
      const double a = start + step * i;
      if (a > stop + 1e-12) break;
      v.push_back(a);
    }
    return v;
  }
};

struct ExperimentConfig {
  std::string id = "experiment";
  SystemConfig system;
  UserConfig nu{4, 3, 4};
  UserConfig fu{4, 1, 4};
  double alpha = 0.3;
  AlphaGrid alpha_grid;
  double alpha_search_snr_db = 30.0;
  std::vector<double> snr_grid_db;
  StoppingRule stopping;
  std::uint64_t seed = 1;
  int workers = 0;  // 0 -> hardware concurrency
  TheoryMode theory_mode = TheoryMode::kPowerFolded;
  int interleaver_n = 0;  // 0 -> near user's subblock size

  void validate() const {
    const int n_sub = system.subcarriers;
    if (n_sub < 2 || !is_pow2(static_cast<std::uint64_t>(n_sub)))
      throw ConfigError("subcarrier count must be a power of two >= 2");
    if (system.cp < 0 || system.cp >= n_sub)
      throw ConfigError("cyclic prefix must lie in [0, subcarriers)");
    if (system.channel_taps < 1) throw ConfigError("need at least one channel tap");
    if (system.cp < system.channel_taps - 1)
      throw ConfigError("cyclic prefix shorter than the channel memory");
    if (!(system.total_power > 0.0)) throw ConfigError("total power must be positive");
    if (system.sigma2_nu_db < system.sigma2_fu_db)
      throw ConfigError("near user must have the stronger channel (sigma2_nu >= sigma2_fu)");
    for (const auto* u : {&nu, &fu}) {
      try {
        const BitBudget b = bit_budget(u->n, u->k, u->mod_order);
        if (b.total > 20) throw ConfigError("more than 20 bits per subblock");
        Constellation::make(u->mod_order);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("bad user spec: ") + e.what());
      }
      if (n_sub % u->n != 0) throw ConfigError("subcarrier count not divisible by subblock size");
    }
    const int il = interleaver_n == 0 ? nu.n : interleaver_n;
    if (il < 1 || n_sub % il != 0)
      throw ConfigError("subcarrier count not divisible by the interleaver row length");
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw ConfigError("alpha must lie in [0, 1]");
    if (!(alpha_grid.step > 0.0) || alpha_grid.start < 0.0 ||
        alpha_grid.stop > 0.5 + 1e-12 || alpha_grid.start > alpha_grid.stop)
      throw ConfigError("alpha search grid must cover a range inside [0, 0.5]");
    if (stopping.max_blocks < 1 || stopping.min_bit_errors < 1)
      throw ConfigError("stopping rule needs at least one block and one bit error");
    if (workers < 0) throw ConfigError("worker count cannot be negative");
  }
};

/// Immutable per-experiment state shared by all trials: realization tables,
/// interleaver permutation, channel samplers.
struct LinkModel {
  ExperimentConfig cfg;
  RealizationTable nu_table;
  RealizationTable fu_table;
  int n_sub = 0;
  int g_nu = 0, g_fu = 0;
  int bits_nu = 0, bits_fu = 0;  // information bits per OFDM block
  std::vector<int> il_map;       // logical position -> physical subcarrier
  ChannelSampler nu_channel, fu_channel;
  double sigma2_nu = 1.0, sigma2_fu = 1.0;

  explicit LinkModel(const ExperimentConfig& c) : cfg(c) {
    cfg.validate();
    n_sub = cfg.system.subcarriers;
    nu_table = enumerate_realizations(SubblockSpec::make(cfg.nu.n, cfg.nu.k, cfg.nu.mod_order));
    fu_table = enumerate_realizations(SubblockSpec::make(cfg.fu.n, cfg.fu.k, cfg.fu.mod_order));
    g_nu = n_sub / cfg.nu.n;
    g_fu = n_sub / cfg.fu.n;
    bits_nu = g_nu * nu_table.spec.total_bits;
    bits_fu = g_fu * fu_table.spec.total_bits;
    const int il_n = cfg.interleaver_n == 0 ? cfg.nu.n : cfg.interleaver_n;
    il_map = interleaver_map(il_n, n_sub / il_n);
    sigma2_nu = db_to_linear(cfg.system.sigma2_nu_db);
    sigma2_fu = db_to_linear(cfg.system.sigma2_fu_db);
    nu_channel = ChannelSampler(n_sub, cfg.system.channel_taps, sigma2_nu);
    fu_channel = ChannelSampler(n_sub, cfg.system.channel_taps, sigma2_fu);
  }

  double spectral_efficiency_nu() const { return spectral_efficiency(bits_nu, n_sub, cfg.system.cp); }
  double spectral_efficiency_fu() const { return spectral_efficiency(bits_fu, n_sub, cfg.system.cp); }
};

struct TrialOutcome {
  std::uint32_t nu_bit_errors = 0;
  std::uint32_t fu_bit_errors = 0;
};

/// One full link trial. Draw order is fixed (near-user bits, far-user bits,
/// near channel, far channel, near noise, far noise) so a trial is a pure
/// function of its RNG stream.
inline TrialOutcome run_single_trial(const LinkModel& lm, double alpha, double n0,
                                     RngStream& rng) {
  const int n_sub = lm.n_sub;
  const double near_power = alpha * lm.cfg.system.total_power;
  const double far_power = (1.0 - alpha) * lm.cfg.system.total_power;
  const double a = std::sqrt(near_power);
  const double b = std::sqrt(far_power);
  const int n_nu = lm.nu_table.spec.n;
  const int n_fu = lm.fu_table.spec.n;

  std::vector<std::uint32_t> v_nu(static_cast<std::size_t>(lm.g_nu));
  std::vector<std::uint32_t> v_fu(static_cast<std::size_t>(lm.g_fu));
  for (auto& v : v_nu) v = rng.uniform_bits(lm.nu_table.spec.total_bits);
  for (auto& v : v_fu) v = rng.uniform_bits(lm.fu_table.spec.total_bits);

  // superposed block, logical (subblock-major) order
  cvec x(static_cast<std::size_t>(n_sub), cplx{0.0, 0.0});
  for (int s = 0; s < lm.g_nu; ++s) {
    const cvec& vec = lm.nu_table[v_nu[static_cast<std::size_t>(s)]].vec;
    for (int j = 0; j < n_nu; ++j) x[static_cast<std::size_t>(s * n_nu + j)] = a * vec[static_cast<std::size_t>(j)];
  }
  for (int s = 0; s < lm.g_fu; ++s) {
    const cvec& vec = lm.fu_table[v_fu[static_cast<std::size_t>(s)]].vec;
    for (int j = 0; j < n_fu; ++j) x[static_cast<std::size_t>(s * n_fu + j)] += b * vec[static_cast<std::size_t>(j)];
  }
  cvec x_phys(static_cast<std::size_t>(n_sub));
  for (int i = 0; i < n_sub; ++i) x_phys[static_cast<std::size_t>(lm.il_map[static_cast<std::size_t>(i)])] = x[static_cast<std::size_t>(i)];

  const ChannelRealization ch_nu = lm.nu_channel.draw(rng);
  const ChannelRealization ch_fu = lm.fu_channel.draw(rng);
  const NoiseModel noise{n0};
  const cvec y_nu = observe_freq(x_phys, ch_nu, noise, rng);
  const cvec y_fu = observe_freq(x_phys, ch_fu, noise, rng);

  TrialOutcome out;

  // far-user receiver: deinterleave, then direct ML per subblock
  cvec yd(static_cast<std::size_t>(n_sub));
  cvec hd(static_cast<std::size_t>(n_sub));
  for (int i = 0; i < n_sub; ++i) {
    const auto p = static_cast<std::size_t>(lm.il_map[static_cast<std::size_t>(i)]);
    yd[static_cast<std::size_t>(i)] = y_fu[p];
    hd[static_cast<std::size_t>(i)] = ch_fu.freq[p];
  }
  for (int s = 0; s < lm.g_fu; ++s) {
    const auto off = static_cast<std::size_t>(s * n_fu);
    const SubblockDecision d =
        detect_subblock_ml({yd.data() + off, static_cast<std::size_t>(n_fu)},
                           {hd.data() + off, static_cast<std::size_t>(n_fu)}, far_power,
                           lm.fu_table);
    out.fu_bit_errors += static_cast<std::uint32_t>(
        hamming_distance(static_cast<std::uint32_t>(d.index), v_fu[static_cast<std::size_t>(s)]));
  }

  // near-user receiver: decode the far user's block on its own observation,
  // cancel it, then decode its own block
  for (int i = 0; i < n_sub; ++i) {
    const auto p = static_cast<std::size_t>(lm.il_map[static_cast<std::size_t>(i)]);
    yd[static_cast<std::size_t>(i)] = y_nu[p];
    hd[static_cast<std::size_t>(i)] = ch_nu.freq[p];
  }
  cvec r = yd;
  for (int s = 0; s < lm.g_fu; ++s) {
    const auto off = static_cast<std::size_t>(s * n_fu);
    const SubblockDecision d =
        detect_subblock_ml({yd.data() + off, static_cast<std::size_t>(n_fu)},
                           {hd.data() + off, static_cast<std::size_t>(n_fu)}, far_power,
                           lm.fu_table);
    const cvec& z_hat = lm.fu_table[static_cast<std::size_t>(d.index)].vec;
    for (int j = 0; j < n_fu; ++j)
      r[off + static_cast<std::size_t>(j)] -=
          b * hd[off + static_cast<std::size_t>(j)] * z_hat[static_cast<std::size_t>(j)];
  }
  for (int s = 0; s < lm.g_nu; ++s) {
    const auto off = static_cast<std::size_t>(s * n_nu);
    const SubblockDecision d =
        detect_subblock_ml({r.data() + off, static_cast<std::size_t>(n_nu)},
                           {hd.data() + off, static_cast<std::size_t>(n_nu)}, near_power,
                           lm.nu_table);
    out.nu_bit_errors += static_cast<std::uint32_t>(
        hamming_distance(static_cast<std::uint32_t>(d.index), v_nu[static_cast<std::size_t>(s)]));
  }
  return out;
}

/// Accumulated counts for one (snr, alpha) point. The squared per-block error
/// sums feed a block-level standard error of the BER estimate, which is the
/// right scale for statistical tolerance checks (bits within a block are not
/// independent).
struct PointCounts {
  std::uint64_t blocks = 0;
  std::uint64_t nu_bit_errors = 0, fu_bit_errors = 0;
  std::uint64_t nu_errors_sq = 0, fu_errors_sq = 0;
  std::uint64_t nu_bits = 0, fu_bits = 0;
  bool nu_reached_min = false, fu_reached_min = false;
  double seconds = 0.0;

  double ber_nu() const { return nu_bits ? static_cast<double>(nu_bit_errors) / static_cast<double>(nu_bits) : 0.0; }
  double ber_fu() const { return fu_bits ? static_cast<double>(fu_bit_errors) / static_cast<double>(fu_bits) : 0.0; }

  static double std_error(std::uint64_t sum, std::uint64_t sum_sq, std::uint64_t blocks,
                          std::uint64_t bits_per_block) {
    if (blocks < 2) return 0.0;
    const double nb = static_cast<double>(blocks);
    const double mean = static_cast<double>(sum) / nb;
    const double var = std::max(0.0, static_cast<double>(sum_sq) / nb - mean * mean);
    return std::sqrt(var / nb) / static_cast<double>(bits_per_block);
  }

  double ber_nu_std() const { return std_error(nu_bit_errors, nu_errors_sq, blocks, nu_bits / std::max<std::uint64_t>(blocks, 1)); }
  double ber_fu_std() const { return std_error(fu_bit_errors, fu_errors_sq, blocks, fu_bits / std::max<std::uint64_t>(blocks, 1)); }
};

namespace detail {

constexpr std::uint64_t kBatchBlocks = 1024;

struct WorkerAccum {
  std::uint64_t nu_err = 0, fu_err = 0, nu_sq = 0, fu_sq = 0;
};

}  // namespace detail

/// Runs Monte Carlo trials for one (snr, alpha) point until both users have
/// collected the minimum bit-error count or the block budget runs out.
/// Trials are scheduled in fixed batches and each trial derives its RNG
/// stream from (seed, point, trial index), so the result is bit-identical
/// for any worker count.
inline PointCounts simulate_point(const LinkModel& lm, double snr_db, double alpha,
                                  const StoppingRule& stop, std::uint64_t seed, int workers,
                                  std::uint32_t stream_tag = 0) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ConfigError("alpha must lie in [0, 1]");
  const auto t0 = std::chrono::steady_clock::now();
  const double n0 = std::pow(10.0, -snr_db / 10.0);
  const std::uint64_t point = point_key(snr_db, alpha, stream_tag);
  int w = workers > 0 ? workers : static_cast<int>(std::thread::hardware_concurrency());
  if (w < 1) w = 1;

  PointCounts pc;
  auto run_range = [&](std::uint64_t lo, std::uint64_t hi, detail::WorkerAccum& acc) {
    for (std::uint64_t t = lo; t < hi; ++t) {
      RngStream rng = RngStream::for_trial(seed, point, t);
      const TrialOutcome o = run_single_trial(lm, alpha, n0, rng);
      acc.nu_err += o.nu_bit_errors;
      acc.fu_err += o.fu_bit_errors;
      acc.nu_sq += static_cast<std::uint64_t>(o.nu_bit_errors) * o.nu_bit_errors;
      acc.fu_sq += static_cast<std::uint64_t>(o.fu_bit_errors) * o.fu_bit_errors;
    }
  };

  while (true) {
    const std::uint64_t todo = std::min(detail::kBatchBlocks, stop.max_blocks - pc.blocks);
    if (todo == 0) break;
    std::vector<detail::WorkerAccum> accs(static_cast<std::size_t>(w));
    if (w == 1) {
      run_range(pc.blocks, pc.blocks + todo, accs[0]);
    } else {
      std::vector<std::thread> threads;
      const std::uint64_t chunk = (todo + static_cast<std::uint64_t>(w) - 1) / static_cast<std::uint64_t>(w);
      for (int i = 0; i < w; ++i) {
        const std::uint64_t lo = pc.blocks + std::min(todo, chunk * static_cast<std::uint64_t>(i));
        const std::uint64_t hi = pc.blocks + std::min(todo, chunk * static_cast<std::uint64_t>(i + 1));
        if (lo >= hi) break;
        threads.emplace_back(run_range, lo, hi, std::ref(accs[static_cast<std::size_t>(i)]));
      }
      for (auto& th : threads) th.join();
    }
    for (const auto& acc : accs) {
      pc.nu_bit_errors += acc.nu_err;
      pc.fu_bit_errors += acc.fu_err;
      pc.nu_errors_sq += acc.nu_sq;
      pc.fu_errors_sq += acc.fu_sq;
    }
    pc.blocks += todo;
    if ((pc.nu_bit_errors >= stop.min_bit_errors && pc.fu_bit_errors >= stop.min_bit_errors) ||
        pc.blocks >= stop.max_blocks)
      break;
  }
  pc.nu_bits = pc.blocks * static_cast<std::uint64_t>(lm.bits_nu);
  pc.fu_bits = pc.blocks * static_cast<std::uint64_t>(lm.bits_fu);
  pc.nu_reached_min = pc.nu_bit_errors >= stop.min_bit_errors;
  pc.fu_reached_min = pc.fu_bit_errors >= stop.min_bit_errors;
  pc.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return pc;
}

/// One persisted result row.
struct BerRecord {
  std::string config_id;
  std::string user;  // "NU" or "FU"
  double snr_db = 0.0;
  double alpha = 0.0;
  std::uint64_t bits = 0;
  std::uint64_t errors = 0;
  double ber = 0.0;
  std::optional<double> theory;
  double seconds = 0.0;
  bool reached_min_errors = false;  // stopped on the error target, not the block cap
};

struct TheoryPair {
  double nu = 0.0;
  double fu = 0.0;
};

inline TheoryPair theory_point(const LinkModel& lm, double snr_db, double alpha) {
  TheoryParams tp;
  tp.sigma2_nu = lm.sigma2_nu;
  tp.sigma2_fu = lm.sigma2_fu;
  tp.n0 = std::pow(10.0, -snr_db / 10.0);
  tp.near_power = alpha * lm.cfg.system.total_power;
  tp.far_power = (1.0 - alpha) * lm.cfg.system.total_power;
  tp.mode = lm.cfg.theory_mode;
  return {abep_nu(lm.nu_table, lm.fu_table, tp), abep_fu_bound(lm.fu_table, tp)};
}

inline std::vector<BerRecord> make_records(const LinkModel& lm, double snr_db, double alpha,
                                           const PointCounts& pc,
                                           const std::optional<TheoryPair>& th) {
  BerRecord nu{lm.cfg.id, "NU", snr_db, alpha, pc.nu_bits, pc.nu_bit_errors, pc.ber_nu(),
               th ? std::optional<double>(th->nu) : std::nullopt, pc.seconds, pc.nu_reached_min};
  BerRecord fu{lm.cfg.id, "FU", snr_db, alpha, pc.fu_bits, pc.fu_bit_errors, pc.ber_fu(),
               th ? std::optional<double>(th->fu) : std::nullopt, pc.seconds, pc.fu_reached_min};
  return {nu, fu};
}

/// Simulates a single (snr, alpha) point and attaches the matching theory
/// values.
inline std::vector<BerRecord> run_ber_point(const ExperimentConfig& cfg, double snr_db,
                                            double alpha) {
  const LinkModel lm(cfg);
  const PointCounts pc = simulate_point(lm, snr_db, alpha, cfg.stopping, cfg.seed, cfg.workers);
  return make_records(lm, snr_db, alpha, pc, theory_point(lm, snr_db, alpha));
}

/// Simulates every SNR in the configured grid at the configured alpha.
inline std::vector<BerRecord> sweep_snr(const ExperimentConfig& cfg) {
  if (cfg.snr_grid_db.empty()) throw ConfigError("snr grid is empty");
  const LinkModel lm(cfg);
  std::vector<BerRecord> out;
  for (double snr : cfg.snr_grid_db) {
    const PointCounts pc = simulate_point(lm, snr, cfg.alpha, cfg.stopping, cfg.seed, cfg.workers);
    for (auto& r : make_records(lm, snr, cfg.alpha, pc, theory_point(lm, snr, cfg.alpha)))
      out.push_back(std::move(r));
  }
  return out;
}

/// Theory-only counterpart of sweep_snr (no simulation).
inline std::vector<BerRecord> theory_sweep(const ExperimentConfig& cfg) {
  if (cfg.snr_grid_db.empty()) throw ConfigError("snr grid is empty");
  const LinkModel lm(cfg);
  std::vector<BerRecord> out;
  for (double snr : cfg.snr_grid_db) {
    const TheoryPair th = theory_point(lm, snr, cfg.alpha);
    BerRecord nu{cfg.id, "NU", snr, cfg.alpha, 0, 0, 0.0, th.nu, 0.0, false};
    BerRecord fu{cfg.id, "FU", snr, cfg.alpha, 0, 0, 0.0, th.fu, 0.0, false};
    out.push_back(std::move(nu));
    out.push_back(std::move(fu));
  }
  return out;
}

/// Rate-weighted average of the two users' BERs: the weights are the bits
/// carried per subblock, so the average reflects each user's share of the
/// traffic.
inline double average_ber(double ber_fu, double ber_nu, int p_fu, int p_nu) {
  return (p_fu * ber_fu + p_nu * ber_nu) / static_cast<double>(p_fu + p_nu);
}

struct AlphaPoint {
  double alpha = 0.0;
  double ber_nu = 0.0;
  double ber_fu = 0.0;
  double avg_ber = 0.0;
};

struct AlphaSearchResult {
  double alpha_star = 0.0;
  std::vector<AlphaPoint> points;
  std::vector<BerRecord> records;
};

/// Grid search for the power-allocation factor minimizing the rate-weighted
/// average BER at a fixed SNR. Simulation only (with imperfect cancellation
/// and inter-user interference); ties resolve to the smaller alpha.
inline AlphaSearchResult optimize_alpha(const ExperimentConfig& cfg) {
  const LinkModel lm(cfg);
  const auto alphas = cfg.alpha_grid.values();
  if (alphas.empty()) throw ConfigError("alpha grid is empty");
  AlphaSearchResult res;
  double best = std::numeric_limits<double>::infinity();
  for (double a : alphas) {
    const PointCounts pc =
        simulate_point(lm, cfg.alpha_search_snr_db, a, cfg.stopping, cfg.seed, cfg.workers);
    AlphaPoint pt{a, pc.ber_nu(), pc.ber_fu(),
                  average_ber(pc.ber_fu(), pc.ber_nu(), lm.fu_table.spec.total_bits,
                              lm.nu_table.spec.total_bits)};
    if (pt.avg_ber < best) {
      best = pt.avg_ber;
      res.alpha_star = a;
    }
    res.points.push_back(pt);
    for (auto& r : make_records(lm, cfg.alpha_search_snr_db, a, pc, std::nullopt))
      res.records.push_back(std::move(r));
  }
  return res;
}

/// Derives the classical OFDM-NOMA reference: every subcarrier active
/// (no index bits), modulation order chosen so each user carries exactly the
/// same number of bits per block as in `cfg`. Throws when no power-of-two
/// order matches the rate.
inline ExperimentConfig make_baseline_config(const ExperimentConfig& cfg) {
  ExperimentConfig base = cfg;
  auto match = [&](const UserConfig& u, const char* role) {
    const SubblockSpec spec = SubblockSpec::make(u.n, u.k, u.mod_order);
    const int blocks = cfg.system.subcarriers / u.n;
    const int bits = blocks * spec.total_bits;
    if (bits % cfg.system.subcarriers != 0)
      throw ConfigError(std::string("no all-active modulation matches the ") + role +
                        " rate of " + std::to_string(bits) + " bits per block");
    const int per_carrier = bits / cfg.system.subcarriers;
    const int mod = 1 << per_carrier;
    try {
      Constellation::make(mod);
    } catch (const std::invalid_argument&) {
      throw ConfigError(std::string("matching the ") + role + " rate needs unsupported order " +
                        std::to_string(mod));
    }
    return UserConfig{u.n, u.n, mod};
  };
  base.nu = match(cfg.nu, "near-user");
  base.fu = match(cfg.fu, "far-user");
  base.id = cfg.id + "-ofdm-noma-M" + std::to_string(base.nu.mod_order) + "x" +
            std::to_string(base.fu.mod_order);
  return base;
}

/// Sweeps the classical OFDM-NOMA reference at matched per-user rates.
inline std::vector<BerRecord> run_baseline_ofdm_noma(const ExperimentConfig& cfg) {
  return sweep_snr(make_baseline_config(cfg));
}

// ---------------------------------------------------------------------------
// CSV persistence: config_id,user,snr_db,alpha,bits,errors,ber,theory,seconds
// Floats carry six significant digits; a missing theory value is an empty
// cell. Identical runs of the same configuration rewrite identical rows
// (wall-clock seconds excepted).
// ---------------------------------------------------------------------------

inline std::string format_g6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

inline void write_csv(std::ostream& os, const std::vector<BerRecord>& records) {
  os << "config_id,user,snr_db,alpha,bits,errors,ber,theory,seconds\n";
  for (const auto& r : records) {
    os << r.config_id << ',' << r.user << ',' << format_g6(r.snr_db) << ',' << format_g6(r.alpha)
       << ',' << r.bits << ',' << r.errors << ',' << format_g6(r.ber) << ','
       << (r.theory ? format_g6(*r.theory) : std::string{}) << ',' << format_g6(r.seconds)
       << '\n';
  }
}

inline void write_csv_file(const std::string& path, const std::vector<BerRecord>& records) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw std::runtime_error("cannot open output file: " + path);
  write_csv(os, records);
  if (!os.flush()) throw std::runtime_error("failed writing output file: " + path);
}

}  // namespace imnoma
