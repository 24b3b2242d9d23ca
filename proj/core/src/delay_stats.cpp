// SPDX-License-Identifier: Apache-2.0

#include "mmcs/delay_stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mmcs/errors.hpp"
#include "mmcs/pathloss.hpp"

namespace mmcs {
namespace {

void check_profile(const DelayProfile& profile) {
  for (double v : profile.power) {
    if (!std::isfinite(v) || v < 0.0) throw DataError("delay profile: invalid bin power");
  }
}

double tail_mean(std::span<const double> power, double tail_fraction) {
  if (!(tail_fraction > 0.0) || tail_fraction > 0.5) {
    throw DomainError("tail_fraction must be in (0, 0.5]");
  }
  const std::size_t n = power.size();
  if (n < 10) throw DataError("noise estimate needs at least 10 delay bins");
  const std::size_t m = static_cast<std::size_t>(
      std::ceil(tail_fraction * static_cast<double>(n)));
  double sum = 0.0;
  for (std::size_t i = n - m; i < n; ++i) sum += power[i];
  return sum / static_cast<double>(m);
}

bool all_zero(std::span<const double> power) {
  return std::all_of(power.begin(), power.end(), [](double v) { return v == 0.0; });
}

}  // namespace

double estimate_noise(const DelayProfile& profile, double tail_fraction) {
  check_profile(profile);
  double floor = tail_mean(profile.power, tail_fraction);
  if (floor == 0.0) throw DegenerateError("noise floor of exactly 0");
  return floor;
}

NoiseEstimate estimate_noise_map(const DirectionalPdpSet& pdps, double tail_fraction) {
  NoiseEstimate est;
  est.tx_count = pdps.grid().tx_count();
  est.rx_count = pdps.grid().rx_count();
  est.sigma2.resize(est.tx_count * est.rx_count);
  est.method = NoiseMethod::TailRegion;
  for (std::size_t itx = 0; itx < est.tx_count; ++itx) {
    for (std::size_t irx = 0; irx < est.rx_count; ++irx) {
      auto r = pdps.row(itx, irx);
      double floor = all_zero(r) ? 0.0 : tail_mean(r, tail_fraction);
      est.sigma2[itx * est.rx_count + irx] = floor;
      est.omni_sigma2 = std::max(est.omni_sigma2, floor);
    }
  }
  return est;
}

NoiseEstimate manual_noise(const DirectionalPdpSet& pdps, double sigma2) {
  if (!(sigma2 > 0.0)) throw DomainError("manual noise power must be > 0");
  NoiseEstimate est;
  est.tx_count = pdps.grid().tx_count();
  est.rx_count = pdps.grid().rx_count();
  est.sigma2.assign(est.tx_count * est.rx_count, sigma2);
  est.omni_sigma2 = sigma2;
  est.method = NoiseMethod::Manual;
  return est;
}

DelayProfile gate_directional(const DelayProfile& profile, double sigma2) {
  if (!(sigma2 > 0.0)) throw DomainError("gate_directional: sigma2 must be > 0");
  check_profile(profile);
  DelayProfile gated = profile;
  const double threshold = 4.0 * sigma2;
  for (double& v : gated.power) {
    if (!(v > threshold)) v = 0.0;
  }
  return gated;
}

DirectionalPdpSet gate_all(const DirectionalPdpSet& pdps, const NoiseEstimate& noise) {
  if (noise.tx_count != pdps.grid().tx_count() || noise.rx_count != pdps.grid().rx_count()) {
    throw DimensionError("gate_all: noise map does not match the grid");
  }
  DirectionalPdpSet gated = pdps;
  for (std::size_t itx = 0; itx < noise.tx_count; ++itx) {
    for (std::size_t irx = 0; irx < noise.rx_count; ++irx) {
      const double threshold = 4.0 * noise.at(itx, irx);  // sentinel 0 keeps positive bins
      for (std::size_t t = 0; t < gated.delay_bins(); ++t) {
        double& v = gated.at(itx, irx, t);
        if (!(v > threshold)) v = 0.0;
      }
    }
  }
  return gated;
}

std::vector<std::size_t> gated_delay_support(const DelayProfile& profile, double sigma2_omni) {
  if (!(sigma2_omni >= 0.0) || !std::isfinite(sigma2_omni)) {
    throw DomainError("gated_delay_support: invalid noise power");
  }
  check_profile(profile);
  std::vector<std::size_t> support;
  const double threshold = 2.0 * sigma2_omni;
  for (std::size_t i = 0; i < profile.power.size(); ++i) {
    if (profile.power[i] > threshold) support.push_back(i);
  }
  return support;
}

double rms_delay_spread(const DelayProfile& profile, std::span<const std::size_t> support) {
  check_profile(profile);
  if (support.empty()) throw DataError("rms_delay_spread: empty support (no signal)");

  double total = 0.0;
  double mean = 0.0;
  for (std::size_t idx : support) {
    if (idx >= profile.power.size()) throw DimensionError("rms_delay_spread: support out of range");
    const double p = profile.power[idx];
    total += p;
    mean += p * (static_cast<double>(idx) * profile.delay_bin_s);
  }
  if (!(total > 0.0)) throw DataError("rms_delay_spread: zero power over support (no signal)");
  mean /= total;

  // Centered two-pass second moment; algebraically sqrt(E[t^2] - E[t]^2) but
  // stable under large common delay offsets.
  double var = 0.0;
  for (std::size_t idx : support) {
    const double d = static_cast<double>(idx) * profile.delay_bin_s - mean;
    var += profile.power[idx] * d * d;
  }
  return std::sqrt(std::max(var / total, 0.0));
}

DelaySpreadStats fit_log_ds(std::span<const double> values_s) {
  if (values_s.size() < 2) throw DataError("fit_log_ds: need at least 2 values");
  for (double v : values_s) {
    if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("fit_log_ds: values must be > 0");
  }
  const std::size_t n = values_s.size();

  std::vector<double> logs(n);
  for (std::size_t i = 0; i < n; ++i) logs[i] = std::log10(values_s[i]);

  DelaySpreadStats stats;
  stats.count = n;
  double mu = 0.0;
  for (double l : logs) mu += l;
  mu /= static_cast<double>(n);
  double ss = 0.0;
  for (double l : logs) ss += (l - mu) * (l - mu);
  stats.mu_log = mu;
  stats.sigma_log = std::sqrt(ss / static_cast<double>(n - 1));

  std::vector<double> sorted(values_s.begin(), values_s.end());
  std::sort(sorted.begin(), sorted.end());
  stats.median_s = n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);

  if (n >= 3 && stats.sigma_log > 0.0) {
    std::vector<double> z(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = (logs[i] - mu) / stats.sigma_log;
    stats.ks_p = gaussian_ks_test(z).p_value;
  } else {
    stats.ks_p = std::numeric_limits<double>::quiet_NaN();
  }
  return stats;
}

double three_gpp_mu(double f_ghz, ThreeGppScenario scenario) {
  if (!(f_ghz >= 0.0)) throw DomainError("three_gpp_mu: frequency must be >= 0");
  return scenario == ThreeGppScenario::LoS ? -0.2 * std::log10(1.0 + f_ghz) - 7.2
                                           : -0.21 * std::log10(1.0 + f_ghz) - 6.88;
}

ThreeGppScenario three_gpp_mapping(Scenario scenario) {
  return scenario == Scenario::Street28 ? ThreeGppScenario::LoS : ThreeGppScenario::NLoS;
}

}  // namespace mmcs
