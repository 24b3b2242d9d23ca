// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "mmcs/capture.hpp"
#include "mmcs/mpc.hpp"

namespace mmcs {

/// Statistical description of a synthetic link: close-in path loss
/// parameters, lognormal shadowing, target RMS delay spread, and path count.
struct SceneSpec {
  double n = 2.0;
  double p0_db = 0.0;
  double shadow_sigma_db = 0.0;
  double ds_target_s = 0.0;
  std::size_t num_paths = 1;
  double distance_m = 1.0;
  std::uint64_t seed = 1;
};

void validate(const SceneSpec& spec);

/// Gaussian main lobe with a hard sidelobe floor; unit gain at boresight.
struct BeamPatternModel {
  double azimuth_3db_deg = 12.0;
  double sidelobe_floor_db = -20.0;
};

void validate(const BeamPatternModel& pattern);

struct SampledScene {
  std::vector<MultipathComponent> paths;
  /// Drawn total path loss including the shadowing realization.
  double pl_db = 0.0;
  /// Power-weighted RMS delay spread of the generated taps.
  double rms_ds_s = 0.0;
};

/// Draws one scene: path loss = p0 + 10 n log10(d) + N(0, shadow_sigma);
/// the first tap sits at the line-of-sight delay d/c, later taps add
/// exponential excess delays with decay constant 2 * ds_target so the
/// profile's analytic delay spread equals the target. Delays snap to the
/// sounder's delay grid on distinct bins; tap powers follow exp(-excess /
/// decay) and are renormalized so their sum equals the drawn path loss
/// through the link budget. Angles are uniform over the beam grids. Draws
/// are retried up to 100 times until the realized delay spread is within 5%
/// of the target.
SampledScene sample_scene(const SceneSpec& spec, const BeamGrid& grid,
                          const SounderConfig& config);

/// exp(-4 ln2 (offset / width)^2) floored at the sidelobe level; the offset
/// is wrapped to (-180, 180].
double beam_gain(const BeamPatternModel& pattern, double offset_deg);

/// Forward model: H(tx, rx, tone f) = sum over paths of sqrt(gain) *
/// beam_gain(tx_az - dod) * beam_gain(rx_az - doa) * exp(-j 2 pi f tau),
/// with f the tone's baseband frequency, plus complex Gaussian noise of
/// variance noise_sigma2 per tone. Noise streams are partitioned per beam
/// pair from the seed, so parallel and serial renders agree bit for bit.
MeasurementCapture render_capture(const std::vector<MultipathComponent>& scene,
                                  const BeamGrid& grid,
                                  const SounderConfig& config,
                                  const BeamPatternModel& pattern,
                                  double noise_sigma2, std::uint64_t seed);

/// Flat unit-gain calibration profile.
CalibrationProfile unit_calibration(std::size_t num_tones);

}  // namespace mmcs
