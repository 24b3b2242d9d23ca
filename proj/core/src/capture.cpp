// SPDX-License-Identifier: Apache-2.0

#include "mmcs/capture.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "mmcs/errors.hpp"

namespace mmcs {
namespace {

constexpr double kAngleTolDeg = 1e-6;

int index_of(const std::vector<double>& angles, double angle_deg) {
  for (std::size_t i = 0; i < angles.size(); ++i) {
    if (std::abs(angles[i] - angle_deg) <= kAngleTolDeg) return static_cast<int>(i);
  }
  return -1;
}

void validate_angle_list(const std::vector<double>& angles, const char* axis) {
  for (double a : angles) {
    if (!std::isfinite(a)) throw GridError(std::string(axis) + " azimuth not finite");
    double steps = a / BeamGrid::kStepDeg;
    if (std::abs(steps - std::round(steps)) > kAngleTolDeg) {
      throw GridError(std::string(axis) + " azimuth not a multiple of the 5 deg step");
    }
  }
  for (std::size_t i = 1; i < angles.size(); ++i) {
    if (angles[i] <= angles[i - 1] + kAngleTolDeg) {
      throw GridError(std::string(axis) + " azimuths not strictly increasing");
    }
  }
}

}  // namespace

std::string to_string(Scenario s) {
  return s == Scenario::Street28 ? "Street28" : "NLoS";
}

Scenario scenario_from_string(const std::string& s) {
  if (s == "Street28") return Scenario::Street28;
  if (s == "NLoS") return Scenario::NLoS;
  throw FormatError("unknown scenario: " + s);
}

int BeamGrid::tx_index_of(double angle_deg) const { return index_of(tx_azimuths_deg, angle_deg); }
int BeamGrid::rx_index_of(double angle_deg) const { return index_of(rx_azimuths_deg, angle_deg); }

BeamGrid BeamGrid::standard() {
  BeamGrid g;
  for (int i = -9; i <= 9; ++i) g.tx_azimuths_deg.push_back(i * kStepDeg);
  for (int i = -35; i <= 36; ++i) g.rx_azimuths_deg.push_back(i * kStepDeg);
  return g;
}

BeamGrid BeamGrid::sector() {
  BeamGrid g;
  for (int i = -9; i <= 9; ++i) g.tx_azimuths_deg.push_back(i * kStepDeg);
  g.rx_azimuths_deg = g.tx_azimuths_deg;
  return g;
}

double wrap_angle_deg(double angle_deg) {
  double a = std::fmod(angle_deg, 360.0);
  if (a <= -180.0) a += 360.0;
  if (a > 180.0) a -= 360.0;
  return a;
}

void validate(const BeamGrid& grid) {
  if (grid.tx_azimuths_deg.empty()) throw DimensionError("beam grid: no TX azimuths");
  if (grid.rx_azimuths_deg.empty()) throw DimensionError("beam grid: no RX azimuths");
  validate_angle_list(grid.tx_azimuths_deg, "TX");
  validate_angle_list(grid.rx_azimuths_deg, "RX");
  for (double a : grid.rx_azimuths_deg) {
    if (a <= -180.0 - kAngleTolDeg || a > 180.0 + kAngleTolDeg) {
      throw GridError("RX azimuth outside (-180, 180]");
    }
  }
  if (!std::isfinite(grid.elevation_deg)) throw GridError("elevation not finite");
}

void validate(const SounderConfig& config) {
  if (config.num_tones < 2) throw DataError("config: num_tones must be >= 2");
  if (!(config.tone_spacing_hz > 0.0)) throw DataError("config: tone_spacing_hz must be > 0");
  if (!(config.center_freq_hz > 0.0)) throw DataError("config: center_freq_hz must be > 0");
  if (!std::isfinite(config.tx_eirp_dbm) || !std::isfinite(config.link_budget_offset_db)) {
    throw DataError("config: non-finite field");
  }
}

void validate(const LocationMeta& meta) {
  if (meta.location_id.empty()) throw DataError("meta: empty location_id");
  if (!(meta.tx_rx_distance_m > 0.0)) throw DataError("meta: tx_rx_distance_m must be > 0");
}

void validate(const CalibrationProfile& cal, int num_tones) {
  if (cal.h_cal.size() != static_cast<std::size_t>(num_tones)) {
    throw DimensionError("calibration: tone count mismatch");
  }
  double min_mag = 0.0;
  double max_mag = 0.0;
  bool first = true;
  for (const auto& v : cal.h_cal) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw DataError("calibration: non-finite entry");
    }
    double m = std::abs(v);
    if (first) {
      min_mag = max_mag = m;
      first = false;
    } else {
      min_mag = std::min(min_mag, m);
      max_mag = std::max(max_mag, m);
    }
  }
  if (!(min_mag > kCalibrationConditionRatio * max_mag)) {
    throw ConditioningError("calibration: magnitude dynamic range too large for division");
  }
}

void validate(const MeasurementCapture& capture) {
  validate(capture.config);
  validate(capture.grid);
  validate(capture.meta);
  const std::size_t expected = capture.grid.tx_count() * capture.grid.rx_count() *
                               static_cast<std::size_t>(capture.config.num_tones);
  if (capture.h.size() != expected) {
    throw DimensionError("capture: tensor size does not match grid and tone count");
  }
  for (const auto& v : capture.h) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw DataError("capture: non-finite tensor entry");
    }
  }
}

MeasurementCapture merge_sector_captures(
    std::span<const std::pair<double, MeasurementCapture>> sectors) {
  if (sectors.empty()) throw DataError("merge: no sector captures");

  struct Source {
    double rotation;       // normalized to [0, 360)
    std::size_t sector;    // index into `sectors`
    std::size_t rx_index;  // row in the source capture
  };

  const MeasurementCapture& ref = sectors[0].second;
  std::map<long long, Source> winners;  // key: merged angle in 1e-6 deg units

  for (std::size_t s = 0; s < sectors.size(); ++s) {
    double rotation = sectors[s].first;
    double steps = rotation / 90.0;
    if (std::abs(steps - std::round(steps)) > kAngleTolDeg) {
      throw GridError("merge: rotation must be a multiple of 90 deg");
    }
    double rot_norm = rotation - 360.0 * std::floor(rotation / 360.0);

    const MeasurementCapture& c = sectors[s].second;
    validate(c);
    if (c.config.num_tones != ref.config.num_tones ||
        c.config.tone_spacing_hz != ref.config.tone_spacing_hz ||
        c.config.center_freq_hz != ref.config.center_freq_hz) {
      throw DimensionError("merge: sector sounder configs disagree");
    }
    if (c.grid.tx_azimuths_deg != ref.grid.tx_azimuths_deg ||
        c.grid.elevation_deg != ref.grid.elevation_deg) {
      throw GridError("merge: sector TX grids disagree");
    }
    for (double a : c.grid.rx_azimuths_deg) {
      if (a < -45.0 - kAngleTolDeg || a > 45.0 + kAngleTolDeg) {
        throw GridError("merge: sector RX azimuth outside [-45, 45]");
      }
    }

    for (std::size_t r = 0; r < c.grid.rx_count(); ++r) {
      double merged = wrap_angle_deg(c.grid.rx_azimuths_deg[r] + rotation);
      long long key = std::llround(merged * 1e6);
      auto [it, inserted] = winners.try_emplace(key, Source{rot_norm, s, r});
      if (inserted) continue;

      if (std::abs(it->second.rotation - rot_norm) <= kAngleTolDeg) {
        throw GridError("merge: duplicate RX angle within one rotation");
      }
      // Boundary duplicate: keep the sector whose boresight is nearer,
      // breaking exact ties toward the lower rotation.
      double incumbent = std::abs(wrap_angle_deg(merged - it->second.rotation));
      double challenger = std::abs(wrap_angle_deg(merged - rot_norm));
      if (challenger + kAngleTolDeg < incumbent ||
          (std::abs(challenger - incumbent) <= kAngleTolDeg && rot_norm < it->second.rotation)) {
        it->second = Source{rot_norm, s, r};
      }
    }
  }

  MeasurementCapture merged;
  merged.config = ref.config;
  merged.meta = ref.meta;
  merged.grid.tx_azimuths_deg = ref.grid.tx_azimuths_deg;
  merged.grid.elevation_deg = ref.grid.elevation_deg;

  merged.meta.rx_orientation_set.clear();
  for (const auto& [rotation, capture] : sectors) {
    (void)capture;
    merged.meta.rx_orientation_set.push_back(rotation);
  }
  std::sort(merged.meta.rx_orientation_set.begin(), merged.meta.rx_orientation_set.end());

  const std::size_t n_tx = merged.grid.tx_count();
  const std::size_t n_tones = static_cast<std::size_t>(merged.config.num_tones);
  merged.grid.rx_azimuths_deg.reserve(winners.size());
  for (const auto& [key, src] : winners) {
    (void)src;
    merged.grid.rx_azimuths_deg.push_back(static_cast<double>(key) * 1e-6);
  }

  merged.h.resize(n_tx * winners.size() * n_tones);
  std::size_t out_rx = 0;
  for (const auto& [key, src] : winners) {
    (void)key;
    const MeasurementCapture& c = sectors[src.sector].second;
    for (std::size_t itx = 0; itx < n_tx; ++itx) {
      for (std::size_t t = 0; t < n_tones; ++t) {
        merged.at(itx, out_rx, t) = c.at(itx, src.rx_index, t);
      }
    }
    ++out_rx;
  }

  validate(merged);
  return merged;
}

}  // namespace mmcs
