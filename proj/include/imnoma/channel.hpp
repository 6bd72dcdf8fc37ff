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

#include <numbers>

#include "imnoma/rng.hpp"

namespace imnoma {

/// One draw of a frequency-selective Rayleigh channel: v time-domain taps and
/// their N-point frequency response. Taps are i.i.d. CN(0, avg_gain/v), so the
/// per-subcarrier response is CN(0, avg_gain).
struct ChannelRealization {
  cvec taps;
  cvec freq;
  double avg_gain = 1.0;
};

/// AWGN level. SNR is defined against a unit per-subcarrier transmit budget,
/// snr_db = -10 log10(N0).
struct NoiseModel {
  double n0 = 1.0;

  static NoiseModel from_snr_db(double snr_db) { return {std::pow(10.0, -snr_db / 10.0)}; }
  double snr_db() const { return -10.0 * std::log10(n0); }
};

/// Non-unitary N-point response of the zero-padded taps:
/// freq[f] = sum_t taps[t] * exp(-j 2 pi t f / N).
inline cvec tap_frequency_response(const cvec& taps, int n_subcarriers) {
  cvec freq(static_cast<std::size_t>(n_subcarriers));
  const double base = -2.0 * std::numbers::pi / static_cast<double>(n_subcarriers);
  for (int f = 0; f < n_subcarriers; ++f) {
    cplx acc{0.0, 0.0};
    for (std::size_t t = 0; t < taps.size(); ++t)
      acc += taps[t] * std::polar(1.0, base * static_cast<double>(t) * static_cast<double>(f));
    freq[static_cast<std::size_t>(f)] = acc;
  }
  return freq;
}

inline ChannelRealization draw_channel(int taps, double avg_gain, int n_subcarriers,
                                       RngStream& rng) {
  if (taps < 1) throw std::invalid_argument("draw_channel: need at least one tap");
  if (!(avg_gain > 0.0)) throw std::invalid_argument("draw_channel: avg_gain must be positive");
  ChannelRealization ch;
  ch.avg_gain = avg_gain;
  ch.taps.resize(static_cast<std::size_t>(taps));
  const double tap_var = avg_gain / static_cast<double>(taps);
  for (auto& t : ch.taps) t = rng.cgauss(tap_var);
  ch.freq = tap_frequency_response(ch.taps, n_subcarriers);
  return ch;
}

/// Precomputed twiddle table for repeated channel draws with fixed (N, v).
struct ChannelSampler {
  int n_subcarriers = 0;
  int taps = 0;
  double avg_gain = 1.0;
  cvec twiddle;  // twiddle[m] = exp(-j 2 pi m / N)

  ChannelSampler() = default;
  ChannelSampler(int n_sub, int n_taps, double gain)
      : n_subcarriers(n_sub), taps(n_taps), avg_gain(gain),
        twiddle(static_cast<std::size_t>(n_sub)) {
    if (n_taps < 1) throw std::invalid_argument("ChannelSampler: need at least one tap");
    if (!(gain > 0.0)) throw std::invalid_argument("ChannelSampler: gain must be positive");
    for (int m = 0; m < n_sub; ++m)
      twiddle[static_cast<std::size_t>(m)] =
          std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(m) /
                               static_cast<double>(n_sub));
  }

  ChannelRealization draw(RngStream& rng) const {
    ChannelRealization ch;
    ch.avg_gain = avg_gain;
    ch.taps.resize(static_cast<std::size_t>(taps));
    const double tap_var = avg_gain / static_cast<double>(taps);
    for (auto& t : ch.taps) t = rng.cgauss(tap_var);
    ch.freq.resize(static_cast<std::size_t>(n_subcarriers));
    for (int f = 0; f < n_subcarriers; ++f) {
      cplx acc{0.0, 0.0};
      for (int t = 0; t < taps; ++t)
        acc += ch.taps[static_cast<std::size_t>(t)] *
               twiddle[static_cast<std::size_t>((t * f) % n_subcarriers)];
      ch.freq[static_cast<std::size_t>(f)] = acc;
    }
    return ch;
  }
};

/// Frequency-domain observation: y = diag(freq) * x + w, w i.i.d. CN(0, N0).
/// This is the model every detector and the error analysis work from.
inline cvec observe_freq(const cvec& x, const ChannelRealization& ch, const NoiseModel& noise,
                         RngStream& rng) {
  if (x.size() != ch.freq.size()) throw std::invalid_argument("observe_freq: length mismatch");
  cvec y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    y[i] = ch.freq[i] * x[i] + rng.cgauss(noise.n0);
  return y;
}

/// Time-domain path: linear convolution of the CP-extended block with the
/// taps (first N+C samples), plus noise. Requires C >= v-1 so the prefix
/// absorbs the full channel memory; used as the equivalence fixture for
/// observe_freq.
inline cvec propagate_time(const cvec& x_cp, int n_subcarriers, const ChannelRealization& ch,
                           const NoiseModel& noise, RngStream& rng) {
  const int total = static_cast<int>(x_cp.size());
  const int cp = total - n_subcarriers;
  const int v = static_cast<int>(ch.taps.size());
  if (cp < 0) throw std::invalid_argument("propagate_time: block shorter than N");
  if (cp < v - 1)
    throw std::invalid_argument("propagate_time: cyclic prefix shorter than channel memory");
  cvec y(static_cast<std::size_t>(total));
  for (int m = 0; m < total; ++m) {
    cplx acc{0.0, 0.0};
    const int tmax = std::min(v - 1, m);
    for (int t = 0; t <= tmax; ++t)
      acc += ch.taps[static_cast<std::size_t>(t)] * x_cp[static_cast<std::size_t>(m - t)];
    y[static_cast<std::size_t>(m)] = acc + rng.cgauss(noise.n0);
  }
  return y;
}

}  // namespace imnoma
