// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace mmcs {

/// Baseband multitone excitation: tone k has amplitude amplitudes[k] and
/// phase phases_rad[k] at frequency k * tone_spacing_hz.
struct MultitoneSpec {
  std::size_t num_tones = 0;
  double tone_spacing_hz = 0.0;
  std::vector<double> amplitudes;
  std::vector<double> phases_rad;

  /// Unit amplitudes with phases pi * k^2 / num_tones.
  static MultitoneSpec newman(std::size_t num_tones, double tone_spacing_hz);

  /// One full period: 1 / tone_spacing_hz.
  double duration_s() const;
};

void validate(const MultitoneSpec& spec);

/// x[m] = (1/sqrt(N)) * sum_k a_k exp(j (2 pi k m / L + phi_k)) over one
/// period, with N = num_tones and L = oversample * N samples. Mean power
/// over the period is sum(a^2) / N.
std::vector<std::complex<double>> synthesize_time_domain(
    const MultitoneSpec& spec, std::size_t oversample);

/// Peak-to-average power ratio in dB, measured on the oversampled waveform
/// (oversample >= 4 so inter-sample peaks are represented) against the
/// analytic mean power.
double papr_db(const MultitoneSpec& spec, std::size_t oversample = 4);

struct PhaseOptOptions {
  double target_papr_db = 1.0;
  std::size_t max_iterations = 2000;
  std::size_t oversample = 4;
};

struct PhaseOptResult {
  MultitoneSpec spec;
  double papr_db = 0.0;
  bool below_target = false;
  std::size_t iterations = 0;
};

/// Phase-only PAPR reduction by iterative clipping: clip the oversampled
/// waveform, take the per-tone phases of its spectrum, restore the original
/// amplitudes, repeat. Keeps the best iterate seen; stops early once the
/// target is met.
PhaseOptResult optimize_phases(const MultitoneSpec& initial,
                               const PhaseOptOptions& options = {});

/// Same, starting from the Newman phase schedule.
PhaseOptResult optimize_phases(std::size_t num_tones, double tone_spacing_hz,
                               const PhaseOptOptions& options = {});

}  // namespace mmcs
