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

#include <algorithm>

#include "imnoma/common.hpp"
#include "imnoma/constellation.hpp"

namespace imnoma {

/// Thrown when an active-index set is not reachable by any index bit string.
/// Possible because only 2^index_bits of the C(n,k) subsets are used.
struct UnreachableIndexSetError : std::domain_error {
  using std::domain_error::domain_error;
};

struct BitBudget {
  int index_bits = 0;   // floor(log2 C(n,k))
  int symbol_bits = 0;  // k * log2(M)
  int total = 0;
};

/// Bit counts carried by one subblock with n subcarriers, k of them active,
/// each active one carrying an M-ary symbol. k == n degenerates to plain
/// OFDM (no index bits) and is allowed.
inline BitBudget bit_budget(int n, int k, int mod_order) {
  if (n < 1) throw std::invalid_argument("bit_budget: n must be positive");
  if (k < 1 || k > n) throw std::invalid_argument("bit_budget: need 1 <= k <= n");
  if (mod_order < 2 || !is_pow2(static_cast<std::uint64_t>(mod_order)))
    throw std::invalid_argument("bit_budget: modulation order must be a power of two");
  BitBudget b;
  const std::uint64_t combos = binomial(n, k);
  b.index_bits = static_cast<int>(std::bit_width(combos) - 1);  // floor(log2)
  b.symbol_bits = k * ilog2(static_cast<std::uint64_t>(mod_order));
  b.total = b.index_bits + b.symbol_bits;
  return b;
}

/// Per-user index-modulation parameters plus the derived bit budget.
struct SubblockSpec {
  int n = 0;
  int k = 0;
  int mod_order = 0;
  int index_bits = 0;
  int symbol_bits = 0;
  int total_bits = 0;

  static SubblockSpec make(int n, int k, int mod_order) {
    const BitBudget b = bit_budget(n, k, mod_order);
    return {n, k, mod_order, b.index_bits, b.symbol_bits, b.total};
  }
};

// ---------------------------------------------------------------------------
// Index selection (combinatorial method).
//
// Ranking convention: k-subsets of {1..n} are ordered lexicographically as
// ascending tuples, rank 0 = {1,..,k}, rank C(n,k)-1 = {n-k+1,..,n}. The
// index bit string, read MSB-first as an integer r, selects the subset of
// rank r. Only ranks below 2^index_bits are reachable.
// ---------------------------------------------------------------------------

/// Subset of rank r in the lexicographic order described above (1-based).
inline std::vector<int> unrank_combination(std::uint64_t r, int n, int k) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(k));
  int x = 1;
  for (int i = 1; i <= k; ++i) {
    while (true) {
      const std::uint64_t block = binomial(n - x, k - i);
      if (block <= r) {
        r -= block;
        ++x;
      } else {
        break;
      }
    }
    out.push_back(x);
    ++x;
  }
  return out;
}

/// Lexicographic rank of an ascending k-subset of {1..n}.
inline std::uint64_t rank_combination(const std::vector<int>& indices, int n, int k) {
  if (static_cast<int>(indices.size()) != k)
    throw std::invalid_argument("rank_combination: wrong subset size");
  std::uint64_t r = 0;
  int prev = 0;
  for (int i = 1; i <= k; ++i) {
    const int c = indices[static_cast<std::size_t>(i - 1)];
    if (c <= prev || c > n)
      throw std::invalid_argument("rank_combination: indices must be ascending in 1..n");
    for (int x = prev + 1; x < c; ++x) r += binomial(n - x, k - i);
    prev = c;
  }
  return r;
}

/// Maps index bits to the active-subcarrier set.
inline std::vector<int> select_indices(const Bits& index_bits, int n, int k) {
  const BitBudget b = bit_budget(n, k, 2);
  if (static_cast<int>(index_bits.size()) != b.index_bits)
    throw std::invalid_argument("select_indices: expected " +
                                std::to_string(b.index_bits) + " bits");
  return unrank_combination(bits_to_uint(index_bits), n, k);
}

/// Inverse of select_indices. Throws UnreachableIndexSetError for subsets
/// whose rank is not addressable with index_bits bits.
inline Bits deselect_indices(const std::vector<int>& indices, int n, int k) {
  const BitBudget b = bit_budget(n, k, 2);
  const std::uint64_t r = rank_combination(indices, n, k);
  if (r >= (std::uint64_t{1} << b.index_bits))
    throw UnreachableIndexSetError("deselect_indices: subset rank " + std::to_string(r) +
                                   " outside the 2^" + std::to_string(b.index_bits) +
                                   " reachable sets");
  return uint_to_bits(static_cast<std::uint32_t>(r), b.index_bits);
}

/// Maps symbol bits onto constellation points, one group per active subcarrier.
inline cvec modulate(const Bits& symbol_bits, int k, const Constellation& c) {
  if (static_cast<int>(symbol_bits.size()) != k * c.bits_per_symbol)
    throw std::invalid_argument("modulate: expected " +
                                std::to_string(k * c.bits_per_symbol) + " bits");
  cvec out(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    std::uint32_t label = 0;
    for (int j = 0; j < c.bits_per_symbol; ++j)
      label = (label << 1) | symbol_bits[static_cast<std::size_t>(i * c.bits_per_symbol + j)];
    out[static_cast<std::size_t>(i)] = c.map_label(label);
  }
  return out;
}

inline Bits demodulate(const cvec& symbols, const Constellation& c) {
  Bits out;
  out.reserve(symbols.size() * static_cast<std::size_t>(c.bits_per_symbol));
  for (const auto& s : symbols) {
    const Bits group = uint_to_bits(c.demap_nearest(s), c.bits_per_symbol);
    out.insert(out.end(), group.begin(), group.end());
  }
  return out;
}

/// Amplitude applied to active symbols so a subblock spends the full
/// per-subcarrier power budget regardless of how few carriers it activates:
/// with k of n carriers on, each active symbol carries n/k power and the
/// subblock averages exactly one unit per subcarrier. This is what makes the
/// transmitter's power-split factors true per-subcarrier powers, and it is
/// what keeps the two users' power separation (and hence cancellation) intact
/// when their activation ratios differ.
inline double subblock_symbol_scale(const SubblockSpec& spec) {
  return std::sqrt(static_cast<double>(spec.n) / static_cast<double>(spec.k));
}

/// One legal subblock vector together with the bits that produced it.
struct Realization {
  Bits bits;                 // the total_bits source bits
  std::uint32_t bit_value = 0;  // same bits read MSB-first as an integer
  std::vector<int> indices;  // active subcarriers, 1-based ascending
  std::vector<cplx> symbols; // transmitted symbols on the active set (scaled)
  cvec vec;                  // length n, exactly zero off the active set
};

/// Builds a subblock: the first index_bits choose the active set, the
/// remaining symbol_bits fill it in ascending index order.
inline Realization build_subblock(const Bits& bits, const SubblockSpec& spec,
                                  const Constellation& c) {
  if (static_cast<int>(bits.size()) != spec.total_bits)
    throw std::invalid_argument("build_subblock: expected " +
                                std::to_string(spec.total_bits) + " bits");
  Realization r;
  r.bits = bits;
  r.bit_value = bits_to_uint(bits);
  const Bits idx_bits(bits.begin(), bits.begin() + spec.index_bits);
  const Bits sym_bits(bits.begin() + spec.index_bits, bits.end());
  r.indices = select_indices(idx_bits, spec.n, spec.k);
  r.symbols = modulate(sym_bits, spec.k, c);
  const double scale = subblock_symbol_scale(spec);
  for (auto& s : r.symbols) s *= scale;
  r.vec.assign(static_cast<std::size_t>(spec.n), cplx{0.0, 0.0});
  for (int i = 0; i < spec.k; ++i)
    r.vec[static_cast<std::size_t>(r.indices[static_cast<std::size_t>(i)] - 1)] =
        r.symbols[static_cast<std::size_t>(i)];
  return r;
}

/// Recovers the source bits from a subblock vector (inverse of build_subblock).
inline Bits demap_subblock(const cvec& vec, const SubblockSpec& spec, const Constellation& c) {
  if (static_cast<int>(vec.size()) != spec.n)
    throw std::invalid_argument("demap_subblock: wrong vector length");
  std::vector<int> indices;
  cvec symbols;
  const double unscale = 1.0 / subblock_symbol_scale(spec);
  for (int i = 0; i < spec.n; ++i) {
    if (vec[static_cast<std::size_t>(i)] != cplx{0.0, 0.0}) {
      indices.push_back(i + 1);
      symbols.push_back(unscale * vec[static_cast<std::size_t>(i)]);
    }
  }
  if (static_cast<int>(indices.size()) != spec.k)
    throw std::invalid_argument("demap_subblock: vector does not have k active entries");
  Bits out = deselect_indices(indices, spec.n, spec.k);
  const Bits sym_bits = demodulate(symbols, c);
  out.insert(out.end(), sym_bits.begin(), sym_bits.end());
  return out;
}

/// The full set of 2^total_bits legal subblocks; item i is built from the
/// bit string with integer value i, so the list index doubles as the packed
/// bit value. This is the maximum-likelihood search set.
struct RealizationTable {
  SubblockSpec spec;
  Constellation constellation;
  std::vector<Realization> items;

  std::size_t size() const { return items.size(); }
  const Realization& operator[](std::size_t i) const { return items[i]; }
};

inline RealizationTable enumerate_realizations(const SubblockSpec& spec, int cap_bits = 20) {
  if (spec.total_bits > cap_bits)
    throw std::invalid_argument("enumerate_realizations: " + std::to_string(spec.total_bits) +
                                " bits per subblock exceeds the enumeration cap of " +
                                std::to_string(cap_bits));
  RealizationTable t;
  t.spec = spec;
  t.constellation = Constellation::make(spec.mod_order);
  const std::uint32_t count = std::uint32_t{1} << spec.total_bits;
  t.items.reserve(count);
  for (std::uint32_t v = 0; v < count; ++v)
    t.items.push_back(build_subblock(uint_to_bits(v, spec.total_bits), spec, t.constellation));
  return t;
}

}  // namespace imnoma
