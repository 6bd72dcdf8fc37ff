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

#include "imnoma/im_codec.hpp"

namespace imnoma {

/// Hamming distance between two equal-length bit strings.
inline int bit_error_count(const Bits& a, const Bits& b) {
  if (a.size() != b.size()) throw std::invalid_argument("bit_error_count: length mismatch");
  int e = 0;
  for (std::size_t i = 0; i < a.size(); ++i) e += (a[i] != b[i]) ? 1 : 0;
  return e;
}

/// One pairwise error event between two subblock realizations. The distance
/// matrix (B - B_hat)^H (B - B_hat) is diagonal, so its nonzero eigenvalues
/// are simply |b(i) - b_hat(i)|^2 over the positions where the two vectors
/// differ, and the rank equals the number of such positions.
struct PairwiseEvent {
  std::vector<double> eigenvalues;  // nonzero eigenvalues, one per differing position
  int bit_errors = 0;

  int rank() const { return static_cast<int>(eigenvalues.size()); }
};

inline PairwiseEvent make_pairwise_event(const Realization& tx, const Realization& rx) {
  if (tx.vec.size() != rx.vec.size())
    throw std::invalid_argument("make_pairwise_event: subblock sizes differ");
  PairwiseEvent ev;
  for (std::size_t i = 0; i < tx.vec.size(); ++i) {
    const double d = std::norm(tx.vec[i] - rx.vec[i]);
    if (d > 0.0) ev.eigenvalues.push_back(d);
  }
  ev.bit_errors = bit_error_count(tx.bits, rx.bits);
  return ev;
}

namespace detail {

// (1/pi) * integral_0^{pi/2} (sin^2 / (sin^2 + g))^l dtheta, the single-pole
// fading integral. mu = sqrt(g/(1+g)).
inline double craig_single_pole(double g, int l) {
  const double mu = std::sqrt(g / (1.0 + g));
  const double lo = 0.5 * (1.0 - mu);
  const double hi = 0.5 * (1.0 + mu);
  double sum = 0.0;
  double term = 1.0;  // C(l-1+k, k) * hi^k, k = 0
  for (int k = 0;; ++k) {
    sum += term;
    if (k == l - 1) break;
    term *= hi * static_cast<double>(l + k) / static_cast<double>(k + 1);
  }
  return std::pow(lo, l) * sum;
}

struct PolePower {
  double gamma = 0.0;
  int mult = 0;
};

inline std::vector<PolePower> group_poles(std::vector<double> gammas) {
  std::sort(gammas.begin(), gammas.end());
  std::vector<PolePower> out;
  for (double g : gammas) {
    if (!out.empty() && std::abs(g - out.back().gamma) <= 1e-9 * std::max(1.0, out.back().gamma)) {
      ++out.back().mult;
    } else {
      out.push_back({g, 1});
    }
  }
  return out;
}

inline double int_pow(double x, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

// (1/pi) * integral over (0, pi/2) of prod_i sin^2/(sin^2 + g_i), composite
// Simpson rule; unconditionally stable since the integrand lives in [0, 1]
inline double craig_integral_numeric(const std::vector<double>& gammas, int panels) {
  const double h = (std::numbers::pi / 2.0) / panels;
  auto f = [&](double theta) {
    const double s2 = std::sin(theta) * std::sin(theta);
    double prod = 1.0;
    for (double g : gammas) prod *= s2 / (s2 + g);
    return prod;
  };
  double acc = f(0.0) + f(std::numbers::pi / 2.0);
  for (int i = 1; i < panels; ++i) acc += f(h * i) * ((i % 2 == 1) ? 4.0 : 2.0);
  return acc * h / 3.0 / std::numbers::pi;
}

}  // namespace detail

/// Fading-averaged pairwise error probability, closed form.
///
/// Averages the Gaussian tail over independent Rayleigh fades with average
/// gain `avg_gain` on every differing position: with per-eigenvalue factors
/// g_i = power * avg_gain * lambda_i / (4 N0),
///
///   P = (1/pi) * integral_0^{pi/2} prod_i (sin^2 / (sin^2 + g_i)) dtheta.
///
/// Equal g_i are grouped; the product is expanded into partial fractions over
/// its poles (derivative recurrence handles multiplicities), reducing the
/// integral to a combination of single-pole terms. An empty eigenvalue list
/// (identical realizations) integrates to exactly 1/2. When the assembled
/// sum cancels below its own rounding floor (repeated close poles at very
/// high SNR), the value is recovered by direct quadrature instead.
inline double upep_closed(const std::vector<double>& eigenvalues, double avg_gain, double n0,
                          double power) {
  if (eigenvalues.empty()) return 0.5;
  if (!(n0 > 0.0)) throw std::invalid_argument("upep_closed: noise variance must be positive");
  std::vector<double> gammas;
  gammas.reserve(eigenvalues.size());
  for (double lam : eigenvalues) gammas.push_back(power * avg_gain * lam / (4.0 * n0));
  const auto poles = detail::group_poles(gammas);
  if (poles.size() == 1) return detail::craig_single_pole(poles[0].gamma, poles[0].mult);

  // K * prod_i (x + beta_i)^{-m_i} with beta_i = 1/gamma_i
  double log_k = 0.0;
  for (const auto& p : poles) log_k -= p.mult * std::log(p.gamma);
  const double k_const = std::exp(log_k);

  double prob = 0.0;
  double term_mag = 0.0;
  for (std::size_t i = 0; i < poles.size(); ++i) {
    const double beta_i = 1.0 / poles[i].gamma;
    const int mi = poles[i].mult;
    const double x0 = -beta_i;
    // h(x) = prod_{j != i} (x + beta_j)^{-m_j}; derivatives at x0 via the
    // logarithmic-derivative recurrence h^{(r)} = sum C(r-1,s-1) L^{(s)} h^{(r-s)}.
    std::vector<double> h(static_cast<std::size_t>(mi), 0.0);
    double h0 = 1.0;
    for (std::size_t j = 0; j < poles.size(); ++j) {
      if (j == i) continue;
      h0 /= detail::int_pow(x0 + 1.0 / poles[j].gamma, poles[j].mult);
    }
    h[0] = h0;
    std::vector<double> lder(static_cast<std::size_t>(mi), 0.0);  // L^{(s)}, s = 1..mi-1
    for (int s = 1; s < mi; ++s) {
      double acc = 0.0;
      double fact = 1.0;  // (s-1)!
      for (int f = 2; f <= s - 1; ++f) fact *= f;
      for (std::size_t j = 0; j < poles.size(); ++j) {
        if (j == i) continue;
        const double dx = x0 + 1.0 / poles[j].gamma;
        acc += -static_cast<double>(poles[j].mult) * ((s % 2 == 1) ? 1.0 : -1.0) * fact /
               detail::int_pow(dx, s);
      }
      lder[static_cast<std::size_t>(s)] = acc;
    }
    for (int r = 1; r < mi; ++r) {
      double acc = 0.0;
      double binom_c = 1.0;  // C(r-1, s-1)
      for (int s = 1; s <= r; ++s) {
        acc += binom_c * lder[static_cast<std::size_t>(s)] * h[static_cast<std::size_t>(r - s)];
        binom_c = binom_c * static_cast<double>(r - s) / static_cast<double>(s);
      }
      h[static_cast<std::size_t>(r)] = acc;
    }
    // residues -> partial-fraction coefficients -> single-pole integrals
    double fact = 1.0;
    for (int l = mi; l >= 1; --l) {
      const int r = mi - l;
      if (r > 0) fact *= r;
      const double b_il = k_const * h[static_cast<std::size_t>(r)] / fact;
      const double a_il = detail::int_pow(poles[i].gamma, l) * b_il;
      const double term = a_il * detail::craig_single_pole(poles[i].gamma, l);
      prob += term;
      term_mag = std::max(term_mag, std::abs(term));
    }
  }
  if (!(prob > term_mag * 1e-11)) return detail::craig_integral_numeric(gammas, 4096);
  return std::min(prob, 0.5);
}

/// Same integral evaluated with a composite Simpson rule; the independent
/// numeric route used to cross-check the closed form.
inline double upep_numeric(const std::vector<double>& eigenvalues, double avg_gain, double n0,
                           double power, int panels = 4096) {
  if (!(n0 > 0.0)) throw std::invalid_argument("upep_numeric: noise variance must be positive");
  if (panels < 2 || panels % 2 != 0)
    throw std::invalid_argument("upep_numeric: panel count must be even and >= 2");
  std::vector<double> gammas;
  gammas.reserve(eigenvalues.size());
  for (double lam : eigenvalues) gammas.push_back(power * avg_gain * lam / (4.0 * n0));
  return detail::craig_integral_numeric(gammas, panels);
}

inline double clip01(double x) { return std::min(1.0, std::max(0.0, x)); }

namespace detail {

constexpr std::size_t kMaxUnionBoundTable = 1024;

inline void check_table_cap(const RealizationTable& t) {
  if (t.size() > kMaxUnionBoundTable)
    throw std::invalid_argument("union bound: table larger than " +
                                std::to_string(kMaxUnionBoundTable) + " realizations");
}

// sum over ordered pairs (tx != rx) of UPEP, optionally weighted by the
// pairwise bit-error count
inline double pair_sum(const RealizationTable& table, double avg_gain, double n0, double power,
                       bool weight_by_bit_errors) {
  check_table_cap(table);
  double acc = 0.0;
  for (std::size_t i = 0; i < table.size(); ++i) {
    for (std::size_t j = 0; j < table.size(); ++j) {
      if (i == j) continue;
      const PairwiseEvent ev = make_pairwise_event(table[i], table[j]);
      const double p = upep_closed(ev.eigenvalues, avg_gain, n0, power);
      acc += weight_by_bit_errors ? p * ev.bit_errors : p;
    }
  }
  return acc;
}

}  // namespace detail

/// How the per-user power split enters the theory expressions.
///   kPowerFolded (default): the allocated power scales the effective SNR
///     inside every pairwise probability, the standard union-bound form.
///   kLiteral: pairwise probabilities ignore the allocated power and the
///     sums carry sqrt(P_u) as an outer scalar instead; kept for comparison.
enum class TheoryMode { kPowerFolded, kLiteral };

struct TheoryParams {
  double sigma2_nu = 1.0;
  double sigma2_fu = 1.0;
  double n0 = 1.0;
  double near_power = 0.0;
  double far_power = 0.0;
  TheoryMode mode = TheoryMode::kPowerFolded;
};

/// Union bound on the far user's subblock (symbol) error probability,
/// (1/G) * sum over ordered pairs of UPEP, clipped to [0, 1]. `avg_gain` is
/// the channel gain of whichever receiver performs the detection.
inline double sep_fu(const RealizationTable& fu_table, double avg_gain, double n0, double power) {
  const double g = static_cast<double>(fu_table.size());
  return clip01(detail::pair_sum(fu_table, avg_gain, n0, power, false) / g);
}

/// Lower bound on the far user's average bit error probability. Near-user
/// interference is not modelled, which is what makes it a lower bound.
inline double abep_fu_bound(const RealizationTable& fu_table, const TheoryParams& tp) {
  const double g = static_cast<double>(fu_table.size());
  const double p_bits = static_cast<double>(fu_table.spec.total_bits);
  if (tp.mode == TheoryMode::kPowerFolded) {
    return clip01(detail::pair_sum(fu_table, tp.sigma2_fu, tp.n0, tp.far_power, true) /
                  (p_bits * g));
  }
  return clip01(std::sqrt(tp.far_power) *
                detail::pair_sum(fu_table, tp.sigma2_fu, tp.n0, 1.0, true) / (p_bits * g));
}

/// Approximate average bit error probability of the near user:
/// a failed cancellation ruins half the bits on average, a successful one
/// leaves the plain union bound of the near user's own detection.
inline double abep_nu(const RealizationTable& nu_table, const RealizationTable& fu_table,
                      const TheoryParams& tp) {
  const double g_nu = static_cast<double>(nu_table.size());
  const double p_bits = static_cast<double>(nu_table.spec.total_bits);
  double sic_sep;
  double own;
  if (tp.mode == TheoryMode::kPowerFolded) {
    // the cancellation stage decodes the far-user signal through the near
    // user's channel
    sic_sep = sep_fu(fu_table, tp.sigma2_nu, tp.n0, tp.far_power);
    own = clip01(detail::pair_sum(nu_table, tp.sigma2_nu, tp.n0, tp.near_power, true) /
                 (p_bits * g_nu));
  } else {
    sic_sep = clip01(std::sqrt(tp.far_power) *
                     detail::pair_sum(fu_table, tp.sigma2_fu, tp.n0, 1.0, false) /
                     static_cast<double>(fu_table.size()));
    own = clip01(std::sqrt(tp.near_power) *
                 detail::pair_sum(nu_table, tp.sigma2_nu, tp.n0, 1.0, true) / (p_bits * g_nu));
  }
  return clip01(0.5 * sic_sep + (1.0 - sic_sep) * own);
}

}  // namespace imnoma
