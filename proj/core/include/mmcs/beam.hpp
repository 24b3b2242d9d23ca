// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "mmcs/capture.hpp"

namespace mmcs {

enum class ProfileKind { Directional, Omni, BestBeam };

/// Power versus delay bin. For Directional/BestBeam profiles the beam angles
/// are set; Omni profiles carry NaN angles.
struct DelayProfile {
  std::vector<double> power;  // linear, one entry per delay bin
  double delay_bin_s = 0.0;
  ProfileKind kind = ProfileKind::Directional;
  double theta_tx_deg = 0.0;
  double theta_rx_deg = 0.0;
};

/// Total received power per (TX beam, RX beam), i.e. the delay-summed PDPs.
struct AngularSpectrum {
  BeamGrid grid;
  std::vector<double> power;  // [tx][rx], RX fastest

  double at(std::size_t itx, std::size_t irx) const { return power[itx * grid.rx_count() + irx]; }
};

enum class PadpSide { RxSide, TxSide };

/// Power versus (beam, delay) for one link side, maximized over the other side.
struct Padp {
  PadpSide side = PadpSide::RxSide;
  std::vector<double> beam_azimuths_deg;
  std::size_t delay_bins = 0;
  double delay_bin_s = 0.0;
  std::vector<double> power;  // [beam][delay], delay fastest

  double at(std::size_t beam, std::size_t bin) const { return power[beam * delay_bins + bin]; }
};

/// Complete grid of calibrated directional PDPs for one capture; the angular
/// ops below take this type so a missing beam pair cannot slip in silently.
class DirectionalPdpSet {
 public:
  /// IDFT of H/h_cal per beam pair, power per delay bin (1/N scaling, so the
  /// bin sum equals the mean calibrated tone power).
  static DirectionalPdpSet compute(const MeasurementCapture& capture,
                                   const CalibrationProfile& cal);

  /// Assemble from standalone profiles; every grid pair must appear exactly once.
  static DirectionalPdpSet from_profiles(const BeamGrid& grid,
                                         std::span<const DelayProfile> profiles);

  const BeamGrid& grid() const { return grid_; }
  std::size_t delay_bins() const { return delay_bins_; }
  double delay_bin_s() const { return delay_bin_s_; }

  double at(std::size_t itx, std::size_t irx, std::size_t bin) const {
    return power_[(itx * grid_.rx_count() + irx) * delay_bins_ + bin];
  }
  double& at(std::size_t itx, std::size_t irx, std::size_t bin) {
    return power_[(itx * grid_.rx_count() + irx) * delay_bins_ + bin];
  }
  std::span<const double> row(std::size_t itx, std::size_t irx) const {
    return {power_.data() + (itx * grid_.rx_count() + irx) * delay_bins_, delay_bins_};
  }

  DelayProfile profile(std::size_t itx, std::size_t irx) const;

 private:
  BeamGrid grid_;
  std::size_t delay_bins_ = 0;
  double delay_bin_s_ = 0.0;
  std::vector<double> power_;
};

/// Calibrated PDP for a single beam pair (angles must be on the grid).
DelayProfile directional_pdp(const MeasurementCapture& capture, const CalibrationProfile& cal,
                             double theta_tx_deg, double theta_rx_deg);

/// Delay-summed power per beam pair.
AngularSpectrum angular_power_spectrum(const DirectionalPdpSet& pdps);

/// Synthesized omnidirectional PDP: per-bin maximum over all beam pairs.
DelayProfile omni_pdp(const DirectionalPdpSet& pdps);

/// Per-beam power-angle-delay profile, maximized over the other side's beams.
Padp padp(const DirectionalPdpSet& pdps, PadpSide side);

/// Sum of the profile's bins. Gating, when desired, is applied upstream.
double received_power(const DelayProfile& profile);

/// Beam pair with the highest delay-summed power; exact ties resolve to the
/// lexicographically smallest (theta_tx, theta_rx).
std::pair<double, double> best_beam_pair(const AngularSpectrum& pas);

/// link_budget_offset_db - 10*log10(p_rx); p_rx must be positive.
double path_loss_db(double p_rx, const SounderConfig& config);

}  // namespace mmcs
