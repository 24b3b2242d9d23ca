// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace mmcs {

/// Measurement environment class for a capture location.
enum class Scenario { Street28, NLoS };

std::string to_string(Scenario s);
Scenario scenario_from_string(const std::string& s);

/// Azimuth steering grids for both link ends plus the common elevation cut.
/// All angles are degrees, strictly increasing, and integer multiples of the
/// 5 degree steering step. RX azimuths live in (-180, 180]; sector merges may
/// leave gaps, so consecutive spacing is not required to be exactly one step.
struct BeamGrid {
  static constexpr double kStepDeg = 5.0;

  std::vector<double> tx_azimuths_deg;
  std::vector<double> rx_azimuths_deg;
  double elevation_deg = 0.0;

  std::size_t tx_count() const { return tx_azimuths_deg.size(); }
  std::size_t rx_count() const { return rx_azimuths_deg.size(); }

  /// Index of an angle on the grid, -1 if absent (1e-6 deg tolerance).
  int tx_index_of(double angle_deg) const;
  int rx_index_of(double angle_deg) const;

  /// 19 TX beams on [-45, 45] and 72 RX beams on [-175, 180], 5 deg steps.
  static BeamGrid standard();

  /// Single-sector RX span [-45, 45] on both ends.
  static BeamGrid sector();
};

/// Static sounder parameters stored with every capture.
struct SounderConfig {
  double center_freq_hz = 27.85e9;
  int num_tones = 801;
  double tone_spacing_hz = 500e3;
  double tx_eirp_dbm = 57.0;
  /// EIRP + RX gains + processing gain folded into one constant:
  /// path loss [dB] = link_budget_offset_db - 10*log10(received power).
  double link_budget_offset_db = 0.0;

  double occupied_bandwidth_hz() const { return (num_tones - 1) * tone_spacing_hz; }
  /// Delay axis implied by the tone layout.
  double unambiguous_delay_range_s() const { return 1.0 / tone_spacing_hz; }
  double delay_bin_s() const { return 1.0 / (num_tones * tone_spacing_hz); }
};

struct LocationMeta {
  std::string location_id = "loc";
  double tx_rx_distance_m = 1.0;
  Scenario scenario = Scenario::Street28;
  /// RX boresight rotations that went into this capture (degrees).
  std::vector<double> rx_orientation_set;
};

/// Back-to-back frequency response used to equalize the sounder hardware.
struct CalibrationProfile {
  std::vector<std::complex<double>> h_cal;
};

/// One swept acquisition: complex frequency response per (TX beam, RX beam, tone).
/// Flat layout with the tone index fastest, then RX beam, then TX beam.
struct MeasurementCapture {
  SounderConfig config;
  BeamGrid grid;
  std::vector<std::complex<double>> h;
  LocationMeta meta;

  std::size_t flat_index(std::size_t itx, std::size_t irx, std::size_t itone) const {
    return (itx * grid.rx_count() + irx) * static_cast<std::size_t>(config.num_tones) + itone;
  }
  std::complex<double>& at(std::size_t itx, std::size_t irx, std::size_t itone) {
    return h[flat_index(itx, irx, itone)];
  }
  const std::complex<double>& at(std::size_t itx, std::size_t irx, std::size_t itone) const {
    return h[flat_index(itx, irx, itone)];
  }
};

void validate(const BeamGrid& grid);
void validate(const SounderConfig& config);
void validate(const LocationMeta& meta);
/// Calibration must match the tone count and keep min|h_cal| > 1e-6 * max|h_cal|
/// so the per-tone division stays well conditioned.
void validate(const CalibrationProfile& cal, int num_tones);
void validate(const MeasurementCapture& capture);

/// Smallest calibration magnitude accepted relative to the largest.
inline constexpr double kCalibrationConditionRatio = 1e-6;

/// Combine single-sector captures taken at distinct RX boresight rotations
/// (multiples of 90 deg) into one capture covering the union of RX angles.
/// A boundary angle reachable from two sectors keeps the entry whose sector
/// boresight is nearer; exact ties go to the lower rotation.
MeasurementCapture merge_sector_captures(
    std::span<const std::pair<double, MeasurementCapture>> sectors);

/// Map any angle to the canonical RX azimuth interval (-180, 180].
double wrap_angle_deg(double angle_deg);

}  // namespace mmcs
