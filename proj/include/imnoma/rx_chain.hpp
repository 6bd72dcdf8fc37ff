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

#include <span>

#include "imnoma/im_codec.hpp"

namespace imnoma {

struct SubblockDecision {
  int index = 0;      // position in the realization table (== packed bit value)
  double metric = 0;  // squared distance of the winning hypothesis
};

/// Maximum-likelihood subblock detection:
/// argmin over the table of ||y - sqrt(power) * diag(h) * b||^2.
/// Ties break toward the lower table index. The distance splits into a
/// common ||y||^2 term plus per-realization corrections on the k active
/// entries only, which keeps the scan cheap for sparse subblocks.
inline SubblockDecision detect_subblock_ml(std::span<const cplx> y, std::span<const cplx> h,
                                           double power, const RealizationTable& table) {
  if (y.size() != h.size() || static_cast<int>(y.size()) != table.spec.n)
    throw std::invalid_argument("detect_subblock_ml: length mismatch");
  if (table.items.empty()) throw std::invalid_argument("detect_subblock_ml: empty table");
  const double c = std::sqrt(power);
  double base = 0.0;
  for (const auto& v : y) base += std::norm(v);
  int best = 0;
  double best_adj = std::numeric_limits<double>::infinity();
  for (std::size_t idx = 0; idx < table.items.size(); ++idx) {
    const Realization& r = table.items[idx];
    double adj = 0.0;
    for (std::size_t a = 0; a < r.indices.size(); ++a) {
      const std::size_t pos = static_cast<std::size_t>(r.indices[a] - 1);
      const cplx t = c * h[pos] * r.symbols[a];
      adj += std::norm(t) - 2.0 * (y[pos].real() * t.real() + y[pos].imag() * t.imag());
    }
    if (adj < best_adj) {
      best_adj = adj;
      best = static_cast<int>(idx);
    }
  }
  return {best, base + best_adj};
}

/// Per-subblock decisions over a whole N-subcarrier block.
struct DetectionResult {
  std::vector<int> indices;     // chosen realization per subblock
  std::vector<double> metrics;  // winning metric per subblock
  Bits bits;                    // concatenated recovered bits
};

inline Bits recover_bits(const std::vector<int>& indices, const RealizationTable& table) {
  Bits out;
  out.reserve(indices.size() * static_cast<std::size_t>(table.spec.total_bits));
  for (int idx : indices) {
    const Bits& b = table.items[static_cast<std::size_t>(idx)].bits;
    out.insert(out.end(), b.begin(), b.end());
  }
  return out;
}

/// Runs ML detection subblock by subblock. `y` and `h` must already be
/// deinterleaved so that each subblock occupies n consecutive entries.
inline DetectionResult detect_block(const cvec& y, const cvec& h, double power,
                                    const RealizationTable& table) {
  const int n = table.spec.n;
  if (y.size() != h.size() || y.size() % static_cast<std::size_t>(n) != 0)
    throw std::invalid_argument("detect_block: block length must be a multiple of n");
  const int g = static_cast<int>(y.size()) / n;
  DetectionResult res;
  res.indices.reserve(static_cast<std::size_t>(g));
  res.metrics.reserve(static_cast<std::size_t>(g));
  for (int s = 0; s < g; ++s) {
    const auto off = static_cast<std::size_t>(s) * static_cast<std::size_t>(n);
    const SubblockDecision d = detect_subblock_ml({y.data() + off, static_cast<std::size_t>(n)},
                                                  {h.data() + off, static_cast<std::size_t>(n)},
                                                  power, table);
    res.indices.push_back(d.index);
    res.metrics.push_back(d.metric);
  }
  res.bits = recover_bits(res.indices, table);
  return res;
}

/// Far-user receiver: direct ML against the far-user table; the near-user
/// component of the observation is simply treated as noise.
inline DetectionResult detect_fu(const cvec& y_fu, const cvec& h_fu, double far_power,
                                 const RealizationTable& fu_table) {
  return detect_block(y_fu, h_fu, far_power, fu_table);
}

/// Rebuilds the frequency-domain block implied by per-subblock decisions.
inline cvec reconstruct_block(const std::vector<int>& indices, const RealizationTable& table) {
  cvec z;
  z.reserve(indices.size() * static_cast<std::size_t>(table.spec.n));
  for (int idx : indices) {
    const cvec& v = table.items[static_cast<std::size_t>(idx)].vec;
    z.insert(z.end(), v.begin(), v.end());
  }
  return z;
}

/// Removes the reconstructed far-user contribution from the near user's
/// observation: r = y - sqrt(far_power) * diag(h) * z_far_hat. The weighting
/// mirrors the detection metric, so a correct decision cancels exactly.
inline cvec sic_cancel(const cvec& y_nu, const cvec& h_nu, double far_power,
                       const cvec& z_far_hat) {
  if (y_nu.size() != h_nu.size() || y_nu.size() != z_far_hat.size())
    throw std::invalid_argument("sic_cancel: length mismatch");
  const double c = std::sqrt(far_power);
  cvec r(y_nu.size());
  for (std::size_t i = 0; i < y_nu.size(); ++i) r[i] = y_nu[i] - c * h_nu[i] * z_far_hat[i];
  return r;
}

/// Near-user ML detection on the interference-cancelled observation.
inline DetectionResult detect_nu(const cvec& r_nu, const cvec& h_nu, double near_power,
                                 const RealizationTable& nu_table) {
  return detect_block(r_nu, h_nu, near_power, nu_table);
}

/// Full near-user receiver: decode the far user's block from the near user's
/// own observation, cancel it, then decode the near-user block. The far-user
/// decisions come from this receiver's detection, never from transmitter
/// knowledge, so cancellation is imperfect exactly as a real receiver's is.
struct NearUserDetection {
  DetectionResult fu_at_nu;  // far-user decisions made at the near user
  DetectionResult nu;
};

inline NearUserDetection detect_nu_sic(const cvec& y_nu, const cvec& h_nu, double near_power,
                                       double far_power, const RealizationTable& nu_table,
                                       const RealizationTable& fu_table) {
  NearUserDetection out;
  out.fu_at_nu = detect_block(y_nu, h_nu, far_power, fu_table);
  const cvec z_hat = reconstruct_block(out.fu_at_nu.indices, fu_table);
  const cvec r = sic_cancel(y_nu, h_nu, far_power, z_hat);
  out.nu = detect_block(r, h_nu, near_power, nu_table);
  return out;
}

}  // namespace imnoma
