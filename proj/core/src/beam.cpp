// SPDX-License-Identifier: Apache-2.0

#include "mmcs/beam.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mmcs/errors.hpp"
#include "mmcs/fft.hpp"

namespace mmcs {
namespace {

std::vector<double> calibrated_pdp_row(const MeasurementCapture& capture,
                                       const CalibrationProfile& cal, std::size_t itx,
                                       std::size_t irx,
                                       std::vector<std::complex<double>>& ratio) {
  const std::size_t n = static_cast<std::size_t>(capture.config.num_tones);
  ratio.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    ratio[k] = capture.at(itx, irx, k) / cal.h_cal[k];
  }
  auto x = inverse_dft_scaled(ratio);
  std::vector<double> power(n);
  for (std::size_t t = 0; t < n; ++t) power[t] = std::norm(x[t]);
  return power;
}

}  // namespace

DirectionalPdpSet DirectionalPdpSet::compute(const MeasurementCapture& capture,
                                             const CalibrationProfile& cal) {
  validate(capture);
  validate(cal, capture.config.num_tones);

  DirectionalPdpSet set;
  set.grid_ = capture.grid;
  set.delay_bins_ = static_cast<std::size_t>(capture.config.num_tones);
  set.delay_bin_s_ = capture.config.delay_bin_s();
  set.power_.resize(capture.grid.tx_count() * capture.grid.rx_count() * set.delay_bins_);

  std::vector<std::complex<double>> ratio;
  for (std::size_t itx = 0; itx < capture.grid.tx_count(); ++itx) {
    for (std::size_t irx = 0; irx < capture.grid.rx_count(); ++irx) {
      auto power = calibrated_pdp_row(capture, cal, itx, irx, ratio);
      std::copy(power.begin(), power.end(),
                set.power_.begin() +
                    static_cast<std::ptrdiff_t>((itx * capture.grid.rx_count() + irx) *
                                                set.delay_bins_));
    }
  }
  return set;
}

DirectionalPdpSet DirectionalPdpSet::from_profiles(const BeamGrid& grid,
                                                   std::span<const DelayProfile> profiles) {
  validate(grid);
  const std::size_t pairs = grid.tx_count() * grid.rx_count();
  if (profiles.empty()) throw DataError("pdp set: no profiles");
  const std::size_t bins = profiles[0].power.size();

  DirectionalPdpSet set;
  set.grid_ = grid;
  set.delay_bins_ = bins;
  set.delay_bin_s_ = profiles[0].delay_bin_s;
  set.power_.assign(pairs * bins, 0.0);

  std::vector<bool> seen(pairs, false);
  for (const auto& p : profiles) {
    if (p.power.size() != bins || p.delay_bin_s != set.delay_bin_s_) {
      throw DimensionError("pdp set: profiles disagree on the delay axis");
    }
    int itx = grid.tx_index_of(p.theta_tx_deg);
    int irx = grid.rx_index_of(p.theta_rx_deg);
    if (itx < 0 || irx < 0) throw GridError("pdp set: profile beam pair not on the grid");
    std::size_t idx = static_cast<std::size_t>(itx) * grid.rx_count() +
                      static_cast<std::size_t>(irx);
    if (seen[idx]) throw GridError("pdp set: duplicate beam pair");
    seen[idx] = true;
    std::copy(p.power.begin(), p.power.end(),
              set.power_.begin() + static_cast<std::ptrdiff_t>(idx * bins));
  }
  if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; })) {
    throw GridError("pdp set: grid beam pair missing from the profile list");
  }
  return set;
}

DelayProfile DirectionalPdpSet::profile(std::size_t itx, std::size_t irx) const {
  DelayProfile p;
  auto r = row(itx, irx);
  p.power.assign(r.begin(), r.end());
  p.delay_bin_s = delay_bin_s_;
  p.kind = ProfileKind::Directional;
  p.theta_tx_deg = grid_.tx_azimuths_deg[itx];
  p.theta_rx_deg = grid_.rx_azimuths_deg[irx];
  return p;
}

DelayProfile directional_pdp(const MeasurementCapture& capture, const CalibrationProfile& cal,
                             double theta_tx_deg, double theta_rx_deg) {
  validate(capture);
  validate(cal, capture.config.num_tones);
  int itx = capture.grid.tx_index_of(theta_tx_deg);
  int irx = capture.grid.rx_index_of(theta_rx_deg);
  if (itx < 0) throw GridError("directional_pdp: TX angle not on the grid");
  if (irx < 0) throw GridError("directional_pdp: RX angle not on the grid");

  std::vector<std::complex<double>> ratio;
  DelayProfile p;
  p.power = calibrated_pdp_row(capture, cal, static_cast<std::size_t>(itx),
                               static_cast<std::size_t>(irx), ratio);
  p.delay_bin_s = capture.config.delay_bin_s();
  p.kind = ProfileKind::Directional;
  p.theta_tx_deg = theta_tx_deg;
  p.theta_rx_deg = theta_rx_deg;
  return p;
}

AngularSpectrum angular_power_spectrum(const DirectionalPdpSet& pdps) {
  AngularSpectrum pas;
  pas.grid = pdps.grid();
  pas.power.resize(pas.grid.tx_count() * pas.grid.rx_count());
  for (std::size_t itx = 0; itx < pas.grid.tx_count(); ++itx) {
    for (std::size_t irx = 0; irx < pas.grid.rx_count(); ++irx) {
      double sum = 0.0;
      for (double v : pdps.row(itx, irx)) sum += v;
      pas.power[itx * pas.grid.rx_count() + irx] = sum;
    }
  }
  return pas;
}

DelayProfile omni_pdp(const DirectionalPdpSet& pdps) {
  DelayProfile p;
  p.power.assign(pdps.delay_bins(), 0.0);
  p.delay_bin_s = pdps.delay_bin_s();
  p.kind = ProfileKind::Omni;
  p.theta_tx_deg = std::numeric_limits<double>::quiet_NaN();
  p.theta_rx_deg = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t itx = 0; itx < pdps.grid().tx_count(); ++itx) {
    for (std::size_t irx = 0; irx < pdps.grid().rx_count(); ++irx) {
      auto r = pdps.row(itx, irx);
      for (std::size_t t = 0; t < r.size(); ++t) p.power[t] = std::max(p.power[t], r[t]);
    }
  }
  return p;
}

Padp padp(const DirectionalPdpSet& pdps, PadpSide side) {
  const auto& grid = pdps.grid();
  Padp out;
  out.side = side;
  out.beam_azimuths_deg =
      side == PadpSide::RxSide ? grid.rx_azimuths_deg : grid.tx_azimuths_deg;
  out.delay_bins = pdps.delay_bins();
  out.delay_bin_s = pdps.delay_bin_s();
  out.power.assign(out.beam_azimuths_deg.size() * out.delay_bins, 0.0);

  for (std::size_t itx = 0; itx < grid.tx_count(); ++itx) {
    for (std::size_t irx = 0; irx < grid.rx_count(); ++irx) {
      const std::size_t beam = side == PadpSide::RxSide ? irx : itx;
      auto r = pdps.row(itx, irx);
      double* dst = out.power.data() + beam * out.delay_bins;
      for (std::size_t t = 0; t < r.size(); ++t) dst[t] = std::max(dst[t], r[t]);
    }
  }
  return out;
}

double received_power(const DelayProfile& profile) {
  double sum = 0.0;
  for (double v : profile.power) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw DataError("received_power: invalid bin power");
    sum += v;
  }
  return sum;
}

std::pair<double, double> best_beam_pair(const AngularSpectrum& pas) {
  if (pas.power.empty()) throw DataError("best_beam_pair: empty spectrum");
  std::size_t best_tx = 0;
  std::size_t best_rx = 0;
  double best = -1.0;
  for (std::size_t itx = 0; itx < pas.grid.tx_count(); ++itx) {
    for (std::size_t irx = 0; irx < pas.grid.rx_count(); ++irx) {
      double v = pas.at(itx, irx);
      if (v > best) {  // strict: scan order keeps the lexicographically smallest tie
        best = v;
        best_tx = itx;
        best_rx = irx;
      }
    }
  }
  return {pas.grid.tx_azimuths_deg[best_tx], pas.grid.rx_azimuths_deg[best_rx]};
}

double path_loss_db(double p_rx, const SounderConfig& config) {
  if (!(p_rx > 0.0) || !std::isfinite(p_rx)) {
    throw DomainError("path_loss_db: received power must be positive");
  }
  return config.link_budget_offset_db - 10.0 * std::log10(p_rx);
}

}  // namespace mmcs
