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

#include <cmath>
#include <cstdint>

#include "imnoma/common.hpp"

namespace imnoma {

/// SplitMix64 finalizer. Good avalanche, used both as a mixer and a generator.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-derived random stream. Each Monte Carlo trial owns one stream,
/// keyed by (seed, point, trial), so results never depend on how trials are
/// scheduled across worker threads.
class RngStream {
 public:
  explicit RngStream(std::uint64_t state) : state_(state) {}

  static RngStream for_trial(std::uint64_t seed, std::uint64_t point, std::uint64_t trial) {
    std::uint64_t s = mix64(seed ^ 0x6d6e6f6d61696dULL);
    s = mix64(s ^ point);
    s = mix64(s ^ trial);
    return RngStream(s);
  }

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in (0, 1].
  double uniform() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  /// Uniform integer of `width` bits, 0 <= width <= 32.
  std::uint32_t uniform_bits(int width) {
    if (width <= 0) return 0;
    return static_cast<std::uint32_t>(next_u64() >> (64 - width));
  }

  /// Circularly symmetric complex Gaussian, E|z|^2 = variance (Box-Muller).
  cplx cgauss(double variance) {
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-std::log(u1) * variance);
    const double phi = 6.283185307179586476925286766559 * u2;
    return {r * std::cos(phi), r * std::sin(phi)};
  }

 private:
  std::uint64_t state_;
};

/// Stable key for one (snr, alpha) simulation point. sharing a key across
/// runs of the same configuration keeps sweeps reproducible.
inline std::uint64_t point_key(double snr_db, double alpha, std::uint32_t tag = 0) {
  const auto s = static_cast<std::uint64_t>(static_cast<std::int64_t>(std::llround(snr_db * 1000.0)));
  const auto a = static_cast<std::uint64_t>(static_cast<std::int64_t>(std::llround(alpha * 1.0e6)));
  return mix64(mix64(s) ^ mix64(a << 1) ^ tag);
}

}  // namespace imnoma
