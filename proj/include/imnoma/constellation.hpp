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
#include <limits>

#include "imnoma/common.hpp"

namespace imnoma {

/// Gray-labelled constellation normalized to unit average power.
///
/// Supported orders: 2 (BPSK), 4 (Gray QPSK), and square QAM with an even
/// number of bits per symbol (16, 64, ...). `points` is indexed by the
/// integer value of the MSB-first bit label.
struct Constellation {
  int order = 0;
  int bits_per_symbol = 0;
  std::vector<cplx> points;

  static Constellation make(int m);

  cplx map_label(std::uint32_t label) const { return points[label]; }

  /// Label of the nearest constellation point.
  std::uint32_t demap_nearest(cplx v) const {
    std::uint32_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::uint32_t i = 0; i < points.size(); ++i) {
      const double d = std::norm(v - points[i]);
      if (d < best_d) {
        best_d = d;
        best = i;
      }
    }
    return best;
  }
};

namespace detail {

// binary-reflected Gray decode: index of the level whose Gray label is g
inline std::uint32_t gray_decode(std::uint32_t g) {
  std::uint32_t b = g;
  while (g >>= 1) b ^= g;
  return b;
}

}  // namespace detail

inline Constellation Constellation::make(int m) {
  if (m < 2 || !is_pow2(static_cast<std::uint64_t>(m)))
    throw std::invalid_argument("constellation order must be a power of two >= 2");
  Constellation c;
  c.order = m;
  c.bits_per_symbol = ilog2(static_cast<std::uint64_t>(m));
  c.points.resize(static_cast<std::size_t>(m));
  if (m == 2) {
    c.points[0] = {1.0, 0.0};
    c.points[1] = {-1.0, 0.0};
    return c;
  }
  if (m == 4) {
    // Gray QPSK: label b1b0 -> ((1-2*b1) + j(1-2*b0))/sqrt(2)
    const double s = 1.0 / std::sqrt(2.0);
    for (std::uint32_t label = 0; label < 4; ++label) {
      const double re = ((label >> 1) & 1u) ? -s : s;
      const double im = (label & 1u) ? -s : s;
      c.points[label] = {re, im};
    }
    return c;
  }
  if (c.bits_per_symbol % 2 != 0)
    throw std::invalid_argument(
        "constellation order must be 2, 4 or a square QAM size (16, 64, ...)");
  // Square Gray QAM: first half of the label drives the I axis, second half
  // the Q axis; each axis is Gray-coded PAM with levels {..,-3,-1,1,3,..}.
  const int axis_bits = c.bits_per_symbol / 2;
  const int levels = 1 << axis_bits;
  double power = 0.0;
  for (std::uint32_t label = 0; label < static_cast<std::uint32_t>(m); ++label) {
    const std::uint32_t gi = label >> axis_bits;
    const std::uint32_t gq = label & static_cast<std::uint32_t>(levels - 1);
    const auto li = static_cast<int>(detail::gray_decode(gi));
    const auto lq = static_cast<int>(detail::gray_decode(gq));
    const double re = static_cast<double>(2 * li - levels + 1);
    const double im = static_cast<double>(2 * lq - levels + 1);
    c.points[label] = {re, im};
    power += std::norm(c.points[label]);
  }
  const double norm = std::sqrt(power / static_cast<double>(m));
  for (auto& p : c.points) p /= norm;
  return c;
}

}  // namespace imnoma
