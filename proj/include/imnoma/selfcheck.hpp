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

#include "imnoma/config.hpp"

namespace imnoma {

/// Outcome of one internal consistency check.
struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

namespace selfcheck_detail {

inline cvec random_block(int n, RngStream& rng) {
  cvec x(static_cast<std::size_t>(n));
  for (auto& v : x) v = rng.cgauss(1.0);
  return x;
}

}  // namespace selfcheck_detail

/// Fast invariant suite behind the `validate` CLI verb: codec roundtrips,
/// time/frequency channel equivalence, cancellation identities, boundary
/// power splits, interleaver inversion and scheduling determinism.
inline std::vector<CheckResult> run_selfchecks(std::uint64_t seed = 7) {
  std::vector<CheckResult> out;
  auto add = [&](const std::string& name, bool pass, const std::string& detail) {
    out.push_back({name, pass, detail});
  };

  // exhaustive encode/decode roundtrips for every production subblock shape
  {
    bool ok = true;
    std::string detail;
    for (const auto& [n, k, m] : std::vector<std::tuple<int, int, int>>{
             {4, 1, 2}, {4, 1, 4}, {4, 2, 4}, {4, 3, 4}, {4, 4, 4}, {4, 4, 2}, {8, 2, 4}}) {
      const SubblockSpec spec = SubblockSpec::make(n, k, m);
      const RealizationTable table = enumerate_realizations(spec);
      for (std::size_t i = 0; i < table.size() && ok; ++i) {
        const Bits back = demap_subblock(table[i].vec, spec, table.constellation);
        if (back != table[i].bits || table[i].bit_value != i) {
          ok = false;
          detail = "roundtrip failed for n=" + std::to_string(n) + " k=" + std::to_string(k) +
                   " M=" + std::to_string(m) + " at value " + std::to_string(i);
        }
        int nonzero = 0;
        for (const auto& v : table[i].vec) nonzero += (v != cplx{0.0, 0.0}) ? 1 : 0;
        if (nonzero != k) {
          ok = false;
          detail = "sparsity violated";
        }
      }
    }
    add("codec-roundtrip-exhaustive", ok, ok ? "all subblock shapes invert exactly" : detail);
  }

  // time-domain propagation equals the frequency-domain observation model
  {
    RngStream rng(seed ^ 0x11);
    const int n = 128, cp = 16, taps = 10;
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
      const cvec x = selfcheck_detail::random_block(n, rng);
      const ChannelRealization ch = draw_channel(taps, 1.0, n, rng);
      const NoiseModel quiet{0.0};
      RngStream null_rng(0);
      const cvec y_freq = observe_freq(x, ch, quiet, null_rng);
      const cvec x_cp = add_cyclic_prefix(to_time_domain(x), cp);
      const cvec y_time = propagate_time(x_cp, n, ch, quiet, null_rng);
      const cvec y_back = from_time_domain(remove_cyclic_prefix(y_time, cp));
      for (int i = 0; i < n; ++i)
        worst = std::max(worst, std::abs(y_freq[static_cast<std::size_t>(i)] -
                                         y_back[static_cast<std::size_t>(i)]));
    }
    add("channel-path-equivalence", worst < 1e-9,
        "max deviation " + format_g6(worst) + " (tolerance 1e-9)");
  }

  // cancelling the true far-user block leaves exactly the near-user signal
  {
    RngStream rng(seed ^ 0x22);
    const SubblockSpec spec_fu = SubblockSpec::make(4, 1, 4);
    const SubblockSpec spec_nu = SubblockSpec::make(4, 3, 4);
    const RealizationTable tf = enumerate_realizations(spec_fu);
    const RealizationTable tn = enumerate_realizations(spec_nu);
    const int n = 16, g = 4;
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      cvec z_nu, z_fu;
      for (int s = 0; s < g; ++s) {
        const auto& rn = tn[rng.uniform_bits(spec_nu.total_bits)];
        const auto& rf = tf[rng.uniform_bits(spec_fu.total_bits)];
        z_nu.insert(z_nu.end(), rn.vec.begin(), rn.vec.end());
        z_fu.insert(z_fu.end(), rf.vec.begin(), rf.vec.end());
      }
      const double alpha = 0.3;
      const SuperposedBlock sb = superpose(z_nu, z_fu, alpha);
      const ChannelRealization ch = draw_channel(3, 1.0, n, rng);
      NoiseModel quiet{0.0};
      RngStream null_rng(0);
      const cvec y = observe_freq(sb.x, ch, quiet, null_rng);
      const cvec r = sic_cancel(y, ch.freq, sb.far_power(), z_fu);
      const double a = std::sqrt(sb.near_power());
      for (int i = 0; i < n; ++i)
        worst = std::max(worst, std::abs(r[static_cast<std::size_t>(i)] -
                                         a * ch.freq[static_cast<std::size_t>(i)] *
                                             z_nu[static_cast<std::size_t>(i)]));
    }
    add("perfect-cancellation-identity", worst < 1e-12,
        "max residual " + format_g6(worst) + " (tolerance 1e-12)");
  }

  // boundary power splits decode error-free without noise
  {
    ExperimentConfig cfg;
    cfg.stopping = {32, 1000000};
    cfg.workers = 1;
    const LinkModel lm(cfg);
    bool ok = true;
    std::string detail = "alpha=0 far user and alpha=1 near user decode exactly";
    for (int t = 0; t < 32 && ok; ++t) {
      RngStream rng = RngStream::for_trial(seed, 0xb0, static_cast<std::uint64_t>(t));
      const TrialOutcome o0 = run_single_trial(lm, 0.0, 0.0, rng);
      if (o0.fu_bit_errors != 0) {
        ok = false;
        detail = "far user errored with the full power budget and no noise";
      }
      RngStream rng2 = RngStream::for_trial(seed, 0xb1, static_cast<std::uint64_t>(t));
      const TrialOutcome o1 = run_single_trial(lm, 1.0, 0.0, rng2);
      if (o1.nu_bit_errors != 0) {
        ok = false;
        detail = "near user errored with the full power budget and no noise";
      }
    }
    add("alpha-boundary-decoding", ok, detail);
  }

  // interleaving is a permutation with an exact inverse, spacing entries of
  // one subblock g positions apart
  {
    bool ok = true;
    std::string detail;
    RngStream rng(seed ^ 0x33);
    for (const auto& [n, g] : std::vector<std::pair<int, int>>{{4, 2}, {4, 4}, {4, 32}, {8, 16}}) {
      const cvec x = selfcheck_detail::random_block(n * g, rng);
      const cvec y = interleave(x, n, g);
      const cvec back = deinterleave(y, n, g);
      if (back != x) {
        ok = false;
        detail = "roundtrip failed for n=" + std::to_string(n) + " g=" + std::to_string(g);
      }
      const auto map = interleaver_map(n, g);
      for (int i = 0; i + 1 < n; ++i) {
        if (map[static_cast<std::size_t>(i + 1)] - map[static_cast<std::size_t>(i)] != g) {
          ok = false;
          detail = "subblock entries not spaced g apart";
        }
      }
    }
    add("interleaver-inverse-permutation", ok, ok ? "all layouts invert" : detail);
  }

  // identical results regardless of worker count
  {
    ExperimentConfig cfg;
    cfg.stopping = {512, 50};
    cfg.seed = seed;
    const LinkModel lm(cfg);
    const PointCounts a = simulate_point(lm, 10.0, 0.3, cfg.stopping, cfg.seed, 1);
    const PointCounts b = simulate_point(lm, 10.0, 0.3, cfg.stopping, cfg.seed, 3);
    const bool ok = a.blocks == b.blocks && a.nu_bit_errors == b.nu_bit_errors &&
                    a.fu_bit_errors == b.fu_bit_errors && a.nu_errors_sq == b.nu_errors_sq &&
                    a.fu_errors_sq == b.fu_errors_sq;
    add("worker-count-determinism", ok,
        ok ? "1 and 3 workers agree bit-for-bit" : "worker counts disagree");
  }

  return out;
}

}  // namespace imnoma
