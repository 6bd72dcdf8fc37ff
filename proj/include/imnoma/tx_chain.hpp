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

#include "imnoma/fft.hpp"
#include "imnoma/im_codec.hpp"

namespace imnoma {

/// One user's N-subcarrier block: the concatenation of `subblocks` realizations.
struct UserBlock {
  cvec z;
  int subblocks = 0;
  SubblockSpec spec;
};

/// Splits `bits` into `subblocks` groups and concatenates the resulting
/// subblock vectors in order.
inline UserBlock assemble_block(const Bits& bits, const SubblockSpec& spec,
                                const Constellation& c, int subblocks) {
  if (static_cast<int>(bits.size()) != subblocks * spec.total_bits)
    throw std::invalid_argument("assemble_block: expected " +
                                std::to_string(subblocks * spec.total_bits) + " bits");
  UserBlock ub;
  ub.subblocks = subblocks;
  ub.spec = spec;
  ub.z.reserve(static_cast<std::size_t>(subblocks * spec.n));
  for (int s = 0; s < subblocks; ++s) {
    const Bits group(bits.begin() + static_cast<std::ptrdiff_t>(s) * spec.total_bits,
                     bits.begin() + static_cast<std::ptrdiff_t>(s + 1) * spec.total_bits);
    const Realization r = build_subblock(group, spec, c);
    ub.z.insert(ub.z.end(), r.vec.begin(), r.vec.end());
  }
  return ub;
}

/// Power-domain superposition of the two users' blocks.
struct SuperposedBlock {
  cvec x;
  double alpha = 0.0;        // fraction of total power given to the near user
  double total_power = 1.0;  // per-subcarrier budget

  double near_power() const { return alpha * total_power; }
  double far_power() const { return (1.0 - alpha) * total_power; }
};

inline SuperposedBlock superpose(const cvec& z_near, const cvec& z_far, double alpha,
                                 double total_power = 1.0) {
  if (z_near.size() != z_far.size())
    throw std::invalid_argument("superpose: block lengths differ");
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw std::invalid_argument("superpose: alpha must lie in [0, 1]");
  SuperposedBlock sb;
  sb.alpha = alpha;
  sb.total_power = total_power;
  const double a = std::sqrt(alpha * total_power);
  const double b = std::sqrt((1.0 - alpha) * total_power);
  sb.x.resize(z_near.size());
  for (std::size_t i = 0; i < z_near.size(); ++i) sb.x[i] = a * z_near[i] + b * z_far[i];
  return sb;
}

// ---------------------------------------------------------------------------
// Block interleaver. One row per subblock (g rows of n entries), read out
// column by column, so the n entries of a subblock end up g subcarriers
// apart. That spacing is what decorrelates the fading seen inside a subblock.
// ---------------------------------------------------------------------------

/// Physical position of logical position i (subblock-major order).
inline std::vector<int> interleaver_map(int n, int g) {
  std::vector<int> map(static_cast<std::size_t>(n) * static_cast<std::size_t>(g));
  for (int i = 0; i < n * g; ++i) {
    const int subblock = i / n;
    const int offset = i % n;
    map[static_cast<std::size_t>(i)] = offset * g + subblock;
  }
  return map;
}

inline cvec interleave(const cvec& x, int n, int g) {
  if (static_cast<int>(x.size()) != n * g)
    throw std::invalid_argument("interleave: length must equal n*g");
  cvec out(x.size());
  for (int i = 0; i < n * g; ++i) out[static_cast<std::size_t>((i % n) * g + i / n)] = x[static_cast<std::size_t>(i)];
  return out;
}

inline cvec deinterleave(const cvec& y, int n, int g) {
  if (static_cast<int>(y.size()) != n * g)
    throw std::invalid_argument("deinterleave: length must equal n*g");
  cvec out(y.size());
  for (int i = 0; i < n * g; ++i) out[static_cast<std::size_t>(i)] = y[static_cast<std::size_t>((i % n) * g + i / n)];
  return out;
}

/// Frequency -> time, unitary so per-subcarrier power statements survive.
inline cvec to_time_domain(const cvec& x) { return ifft_unitary(x); }

/// Time -> frequency, inverse of to_time_domain.
inline cvec from_time_domain(const cvec& x) { return fft_unitary(x); }

/// Prepends the last `cp` samples: [x(N-cp..N-1), x(0..N-1)].
inline cvec add_cyclic_prefix(const cvec& x, int cp) {
  const int n = static_cast<int>(x.size());
  if (cp < 0 || cp >= n) throw std::invalid_argument("add_cyclic_prefix: need 0 <= cp < N");
  cvec out;
  out.reserve(static_cast<std::size_t>(n + cp));
  out.insert(out.end(), x.end() - cp, x.end());
  out.insert(out.end(), x.begin(), x.end());
  return out;
}

inline cvec remove_cyclic_prefix(const cvec& y, int cp) {
  if (cp < 0 || static_cast<std::size_t>(cp) >= y.size())
    throw std::invalid_argument("remove_cyclic_prefix: bad prefix length");
  return cvec(y.begin() + cp, y.end());
}

/// Information bits per OFDM block divided by the time-domain samples spent.
inline double spectral_efficiency(int bits_per_block, int n_subcarriers, int cp) {
  return static_cast<double>(bits_per_block) / static_cast<double>(n_subcarriers + cp);
}

}  // namespace imnoma
