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

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace imnoma {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;

/// Unpacked bit string, one bit per element (0 or 1), most significant first.
using Bits = std::vector<std::uint8_t>;

inline constexpr bool is_pow2(std::uint64_t x) { return x != 0 && (x & (x - 1)) == 0; }

inline int ilog2(std::uint64_t x) {
  if (!is_pow2(x)) throw std::invalid_argument("ilog2: not a power of two");
  return std::bit_width(x) - 1;
}

/// Binomial coefficient, exact for n <= 64.
inline std::uint64_t binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n) return 0;
  if (n > 64) throw std::invalid_argument("binomial: n > 64 unsupported");
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
  }
  return static_cast<std::uint64_t>(r);
}

inline std::uint32_t bits_to_uint(const Bits& bits) {
  if (bits.size() > 32) throw std::invalid_argument("bits_to_uint: more than 32 bits");
  std::uint32_t v = 0;
  for (auto b : bits) v = (v << 1) | (b & 1u);
  return v;
}

inline Bits uint_to_bits(std::uint32_t value, int width) {
  if (width < 0 || width > 32) throw std::invalid_argument("uint_to_bits: bad width");
  Bits bits(static_cast<std::size_t>(width));
  for (int i = 0; i < width; ++i) {
    bits[static_cast<std::size_t>(i)] =
        static_cast<std::uint8_t>((value >> (width - 1 - i)) & 1u);
  }
  return bits;
}

inline int hamming_distance(std::uint32_t a, std::uint32_t b) {
  return std::popcount(a ^ b);
}

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

}  // namespace imnoma
