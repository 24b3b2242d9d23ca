// SPDX-License-Identifier: Apache-2.0
#include "mmcs/synth.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <set>

#include "mmcs/errors.hpp"
#include "mmcs/rng.hpp"

namespace mmcs {

namespace {

constexpr double kSpeedOfLight = 299792458.0;
constexpr int kMaxSceneDraws = 100;

double weighted_rms_spread(const std::vector<double>& delays,
                           const std::vector<double>& weights) {
  double total = 0.0;
  double mean = 0.0;
  for (std::size_t i = 0; i < delays.size(); ++i) {
    total += weights[i];
    mean += weights[i] * delays[i];
  }
  mean /= total;
  double second = 0.0;
  for (std::size_t i = 0; i < delays.size(); ++i)
    second += weights[i] * (delays[i] - mean) * (delays[i] - mean);
  return std::sqrt(second / total);
}

}  // namespace

void validate(const SceneSpec& spec) {
  if (spec.num_paths == 0) throw DataError("scene spec: num_paths must be >= 1");
  if (!(spec.distance_m > 0.0) || !std::isfinite(spec.distance_m))
    throw DataError("scene spec: distance must be positive");
  if (!(spec.ds_target_s >= 0.0) || !std::isfinite(spec.ds_target_s))
    throw DataError("scene spec: ds_target must be >= 0");
  if (!(spec.shadow_sigma_db >= 0.0) || !std::isfinite(spec.shadow_sigma_db))
    throw DataError("scene spec: shadow sigma must be >= 0");
  if (!std::isfinite(spec.n) || !std::isfinite(spec.p0_db))
    throw DataError("scene spec: non-finite path loss parameters");
  if (spec.num_paths == 1 && spec.ds_target_s > 0.0)
    throw DataError("scene spec: one path cannot reach a nonzero delay spread");
  if (spec.num_paths > 1 && spec.ds_target_s == 0.0)
    throw DataError("scene spec: zero delay spread needs exactly one path");
}

void validate(const BeamPatternModel& pattern) {
  if (!(pattern.azimuth_3db_deg > 0.0) || !std::isfinite(pattern.azimuth_3db_deg))
    throw DataError("beam pattern: 3 dB width must be positive");
  if (!(pattern.sidelobe_floor_db < 0.0) || !std::isfinite(pattern.sidelobe_floor_db))
    throw DataError("beam pattern: sidelobe floor must be below 0 dB");
}

SampledScene sample_scene(const SceneSpec& spec, const BeamGrid& grid,
                          const SounderConfig& config) {
  validate(spec);
  validate(grid);
  validate(config);

  Rng rng(spec.seed);
  double pl = spec.p0_db + 10.0 * spec.n * std::log10(spec.distance_m);
  if (spec.shadow_sigma_db > 0.0) pl += spec.shadow_sigma_db * rng.normal();

  const double bin = config.delay_bin_s();
  const auto max_bin = static_cast<long long>(config.num_tones) - 1;
  const long long los_bin =
      std::llround(spec.distance_m / kSpeedOfLight / bin);
  if (los_bin > max_bin)
    throw DomainError("sample_scene: line-of-sight delay outside the unambiguous range");

  const double decay = 2.0 * spec.ds_target_s;
  std::vector<long long> bins;
  std::vector<double> delays;
  std::vector<double> weights;

  if (spec.num_paths == 1) {
    bins = {los_bin};
    delays = {static_cast<double>(los_bin) * bin};
    weights = {1.0};
  } else {
    bool accepted = false;
    for (int attempt = 0; attempt < kMaxSceneDraws && !accepted; ++attempt) {
      bins.assign(1, los_bin);
      std::set<long long> used = {los_bin};
      bool distinct = true;
      for (std::size_t p = 1; p < spec.num_paths; ++p) {
        const double excess = rng.exponential(decay);
        const long long b = los_bin + std::llround(excess / bin);
        if (b > max_bin || !used.insert(b).second) {
          distinct = false;
          break;
        }
        bins.push_back(b);
      }
      if (!distinct) continue;
      delays.clear();
      weights.clear();
      for (long long b : bins) {
        const double tau = static_cast<double>(b) * bin;
        delays.push_back(tau);
        weights.push_back(
            std::exp(-(static_cast<double>(b - los_bin) * bin) / decay));
      }
      const double ds = weighted_rms_spread(delays, weights);
      accepted = std::abs(ds - spec.ds_target_s) <= 0.05 * spec.ds_target_s;
    }
    if (!accepted)
      throw DataError("sample_scene: delay spread target not met within 100 draws");
  }

  double weight_sum = 0.0;
  for (double w : weights) weight_sum += w;
  const double total_gain =
      std::pow(10.0, (config.link_budget_offset_db - pl) / 10.0);

  SampledScene scene;
  scene.pl_db = pl;
  scene.rms_ds_s = weighted_rms_spread(delays, weights);
  scene.paths.reserve(spec.num_paths);
  for (std::size_t p = 0; p < spec.num_paths; ++p) {
    MultipathComponent mpc;
    mpc.dod_deg = grid.tx_azimuths_deg[rng.below(grid.tx_count())];
    mpc.doa_deg = grid.rx_azimuths_deg[rng.below(grid.rx_count())];
    mpc.delay_s = delays[p];
    mpc.gain = weights[p] / weight_sum * total_gain;
    scene.paths.push_back(mpc);
  }
  return scene;
}

double beam_gain(const BeamPatternModel& pattern, double offset_deg) {
  validate(pattern);
  const double off = wrap_angle_deg(offset_deg) / pattern.azimuth_3db_deg;
  const double lobe = std::exp(-4.0 * M_LN2 * off * off);
  return std::max(lobe, std::pow(10.0, pattern.sidelobe_floor_db / 10.0));
}

MeasurementCapture render_capture(const std::vector<MultipathComponent>& scene,
                                  const BeamGrid& grid,
                                  const SounderConfig& config,
                                  const BeamPatternModel& pattern,
                                  double noise_sigma2, std::uint64_t seed) {
  validate(grid);
  validate(config);
  validate(pattern);
  if (!(noise_sigma2 >= 0.0) || !std::isfinite(noise_sigma2))
    throw DomainError("render_capture: noise variance must be >= 0");
  const double range = config.unambiguous_delay_range_s();
  for (const auto& p : scene) {
    if (!(p.delay_s >= 0.0) || !(p.delay_s < range))
      throw DomainError("render_capture: path delay outside the unambiguous range");
    if (!(p.gain >= 0.0) || !std::isfinite(p.gain))
      throw DomainError("render_capture: path gain must be finite and >= 0");
    if (!std::isfinite(p.dod_deg) || !std::isfinite(p.doa_deg))
      throw DomainError("render_capture: non-finite path angle");
  }

  MeasurementCapture capture;
  capture.config = config;
  capture.grid = grid;
  capture.h.assign(grid.tx_count() * grid.rx_count() * config.num_tones,
                   {0.0, 0.0});

  const double noise_scale = std::sqrt(noise_sigma2 / 2.0);
  const auto tones = static_cast<std::size_t>(config.num_tones);
  for (std::size_t itx = 0; itx < grid.tx_count(); ++itx) {
    for (std::size_t irx = 0; irx < grid.rx_count(); ++irx) {
      const std::size_t base = capture.flat_index(itx, irx, 0);
      for (const auto& p : scene) {
        const double amp =
            std::sqrt(p.gain) *
            beam_gain(pattern, grid.tx_azimuths_deg[itx] - p.dod_deg) *
            beam_gain(pattern, grid.rx_azimuths_deg[irx] - p.doa_deg);
        if (amp == 0.0) continue;
        // Tone k sits at baseband frequency k * spacing; advance the per-tone
        // phasor by one spacing step per tone instead of calling polar() N times.
        const std::complex<double> step =
            std::polar(1.0, -2.0 * M_PI * config.tone_spacing_hz * p.delay_s);
        std::complex<double> phasor = {1.0, 0.0};
        for (std::size_t k = 0; k < tones; ++k) {
          capture.h[base + k] += amp * phasor;
          phasor *= step;
        }
      }
      if (noise_sigma2 > 0.0) {
        Rng rng(substream_seed(seed, itx, irx));
        for (std::size_t k = 0; k < tones; ++k) {
          const auto [n1, n2] = rng.normal_pair();
          capture.h[base + k] += std::complex<double>(noise_scale * n1,
                                                      noise_scale * n2);
        }
      }
    }
  }
  return capture;
}

CalibrationProfile unit_calibration(std::size_t num_tones) {
  CalibrationProfile cal;
  cal.h_cal.assign(num_tones, {1.0, 0.0});
  return cal;
}

}  // namespace mmcs
