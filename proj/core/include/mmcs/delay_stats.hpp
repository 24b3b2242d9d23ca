// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mmcs/beam.hpp"

namespace mmcs {

enum class NoiseMethod { TailRegion, Manual };

/// Per-beam-pair noise power plus the omni reference (max over the pairs).
/// A sigma2 of exactly 0 marks a beam pair whose profile carried no signal;
/// such pairs gate to themselves and are excluded from the omni maximum.
struct NoiseEstimate {
  std::size_t tx_count = 0;
  std::size_t rx_count = 0;
  std::vector<double> sigma2;  // [tx][rx], RX fastest
  double omni_sigma2 = 0.0;
  NoiseMethod method = NoiseMethod::TailRegion;

  double at(std::size_t itx, std::size_t irx) const { return sigma2[itx * rx_count + irx]; }
};

/// Mean power over the final ceil(tail_fraction * N) delay bins of the
/// ungated profile. Requires at least 10 bins; a floor of exactly 0 is
/// rejected as degenerate.
double estimate_noise(const DelayProfile& profile, double tail_fraction = 0.1);

/// Tail-region estimate for every beam pair; all-zero rows get the 0 sentinel.
NoiseEstimate estimate_noise_map(const DirectionalPdpSet& pdps, double tail_fraction = 0.1);

NoiseEstimate manual_noise(const DirectionalPdpSet& pdps, double sigma2);

/// Zero all bins at or below 4*sigma2 (only strictly greater power survives).
DelayProfile gate_directional(const DelayProfile& profile, double sigma2);

/// Gate every pair at 4x its own noise estimate.
DirectionalPdpSet gate_all(const DirectionalPdpSet& pdps, const NoiseEstimate& noise);

/// Indices of bins strictly above 2*sigma2_omni, in increasing order.
std::vector<std::size_t> gated_delay_support(const DelayProfile& profile, double sigma2_omni);

/// Power-weighted RMS spread of bin delays over the support set.
double rms_delay_spread(const DelayProfile& profile, std::span<const std::size_t> support);

/// Log-domain delay-spread statistics over a set of per-location values.
struct DelaySpreadStats {
  std::size_t count = 0;
  double median_s = 0.0;
  double mu_log = 0.0;     // mean of log10(seconds)
  double sigma_log = 0.0;  // unbiased (n-1) std of log10(seconds)
  double ks_p = 0.0;       // NaN when n < 3 or sigma_log == 0
};

/// Requires >= 2 strictly positive values.
DelaySpreadStats fit_log_ds(std::span<const double> values_s);

enum class ThreeGppScenario { LoS, NLoS };

/// Reference lognormal mu for the delay spread at carrier frequency f (GHz):
/// LoS: -0.2*log10(1 + f) - 7.2, NLoS: -0.21*log10(1 + f) - 6.88.
double three_gpp_mu(double f_ghz, ThreeGppScenario scenario);

/// Street microcell links compare against the LoS reference, the rest
/// against NLoS.
ThreeGppScenario three_gpp_mapping(Scenario scenario);

}  // namespace mmcs
