// SPDX-License-Identifier: Apache-2.0
#include "mmcs/waveform.hpp"

#include <algorithm>
#include <cmath>

#include "mmcs/errors.hpp"
#include "mmcs/fft.hpp"

namespace mmcs {

namespace {

double mean_power(const MultitoneSpec& spec) {
  double sum = 0.0;
  for (double a : spec.amplitudes) sum += a * a;
  return sum / static_cast<double>(spec.num_tones);
}

double peak_power(const std::vector<std::complex<double>>& x) {
  double peak = 0.0;
  for (const auto& v : x) peak = std::max(peak, std::norm(v));
  return peak;
}

}  // namespace

MultitoneSpec MultitoneSpec::newman(std::size_t num_tones,
                                    double tone_spacing_hz) {
  MultitoneSpec spec;
  spec.num_tones = num_tones;
  spec.tone_spacing_hz = tone_spacing_hz;
  spec.amplitudes.assign(num_tones, 1.0);
  spec.phases_rad.resize(num_tones);
  for (std::size_t k = 0; k < num_tones; ++k)
    spec.phases_rad[k] = M_PI * static_cast<double>(k) *
                         static_cast<double>(k) /
                         static_cast<double>(num_tones);
  validate(spec);
  return spec;
}

double MultitoneSpec::duration_s() const { return 1.0 / tone_spacing_hz; }

void validate(const MultitoneSpec& spec) {
  if (spec.num_tones == 0) throw DataError("multitone spec: zero tones");
  if (!(spec.tone_spacing_hz > 0.0) || !std::isfinite(spec.tone_spacing_hz))
    throw DataError("multitone spec: tone spacing must be positive");
  if (spec.amplitudes.size() != spec.num_tones ||
      spec.phases_rad.size() != spec.num_tones)
    throw DimensionError("multitone spec: amplitude/phase count mismatch");
  for (double a : spec.amplitudes)
    if (!(a >= 0.0) || !std::isfinite(a))
      throw DataError("multitone spec: amplitudes must be finite and >= 0");
  for (double p : spec.phases_rad)
    if (!std::isfinite(p)) throw DataError("multitone spec: non-finite phase");
}

std::vector<std::complex<double>> synthesize_time_domain(
    const MultitoneSpec& spec, std::size_t oversample) {
  validate(spec);
  if (oversample == 0)
    throw DomainError("synthesize_time_domain: oversample must be >= 1");
  const std::size_t total = spec.num_tones * oversample;
  std::vector<std::complex<double>> spectrum(total, {0.0, 0.0});
  for (std::size_t k = 0; k < spec.num_tones; ++k)
    spectrum[k] = std::polar(spec.amplitudes[k], spec.phases_rad[k]);
  std::vector<std::complex<double>> x = inverse_dft_raw(spectrum);
  const double scale = 1.0 / std::sqrt(static_cast<double>(spec.num_tones));
  for (auto& v : x) v *= scale;
  return x;
}

double papr_db(const MultitoneSpec& spec, std::size_t oversample) {
  if (oversample < 4)
    throw DomainError("papr_db: oversample must be >= 4");
  const double mean = mean_power(spec);
  if (!(mean > 0.0)) throw DegenerateError("papr_db: zero mean power");
  const auto x = synthesize_time_domain(spec, oversample);
  return 10.0 * std::log10(peak_power(x) / mean);
}

PhaseOptResult optimize_phases(const MultitoneSpec& initial,
                               const PhaseOptOptions& options) {
  validate(initial);
  if (!(options.target_papr_db >= 0.0) || !std::isfinite(options.target_papr_db))
    throw DomainError("optimize_phases: target must be >= 0 dB");
  if (options.oversample < 4)
    throw DomainError("optimize_phases: oversample must be >= 4");

  PhaseOptResult best;
  best.spec = initial;
  best.papr_db = papr_db(initial, options.oversample);
  best.below_target = best.papr_db <= options.target_papr_db;
  if (best.below_target) return best;

  const double mean = mean_power(initial);
  // Clip slightly under the target envelope so the fixed point of the
  // clip-restore map lands below the target rather than on it.
  const double clip_level =
      std::sqrt(mean) *
      std::pow(10.0, std::max(0.0, options.target_papr_db - 0.15) / 20.0);

  MultitoneSpec current = initial;
  for (std::size_t iter = 1; iter <= options.max_iterations; ++iter) {
    auto x = synthesize_time_domain(current, options.oversample);
    for (auto& v : x) {
      const double mag = std::abs(v);
      if (mag > clip_level) v *= clip_level / mag;
    }
    const auto spectrum = forward_dft(x);
    for (std::size_t k = 0; k < current.num_tones; ++k) {
      if (std::abs(spectrum[k]) > 0.0)
        current.phases_rad[k] = std::arg(spectrum[k]);
    }
    const double p = papr_db(current, options.oversample);
    if (p < best.papr_db) {
      best.papr_db = p;
      best.spec = current;
      best.iterations = iter;
    }
    if (p <= options.target_papr_db) {
      best.iterations = iter;
      break;
    }
  }
  best.below_target = best.papr_db <= options.target_papr_db;
  return best;
}

PhaseOptResult optimize_phases(std::size_t num_tones, double tone_spacing_hz,
                               const PhaseOptOptions& options) {
  return optimize_phases(MultitoneSpec::newman(num_tones, tone_spacing_hz),
                         options);
}

}  // namespace mmcs
