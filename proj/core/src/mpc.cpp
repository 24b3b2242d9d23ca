// SPDX-License-Identifier: Apache-2.0
#include "mmcs/mpc.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "mmcs/delay_stats.hpp"
#include "mmcs/errors.hpp"

namespace mmcs {

std::vector<MultipathComponent> detect_peaks_3d(const DirectionalPdpSet& pdps) {
  const BeamGrid& grid = pdps.grid();
  const auto ntx = static_cast<std::ptrdiff_t>(grid.tx_count());
  const auto nrx = static_cast<std::ptrdiff_t>(grid.rx_count());
  const auto nbin = static_cast<std::ptrdiff_t>(pdps.delay_bins());

  std::vector<MultipathComponent> peaks;
  for (std::ptrdiff_t itx = 0; itx < ntx; ++itx) {
    for (std::ptrdiff_t irx = 0; irx < nrx; ++irx) {
      for (std::ptrdiff_t ibin = 0; ibin < nbin; ++ibin) {
        const double v = pdps.at(static_cast<std::size_t>(itx),
                                 static_cast<std::size_t>(irx),
                                 static_cast<std::size_t>(ibin));
        if (!(v > 0.0)) continue;
        bool is_peak = true;
        for (std::ptrdiff_t dt = -1; dt <= 1 && is_peak; ++dt) {
          const std::ptrdiff_t jt = itx + dt;
          if (jt < 0 || jt >= ntx) continue;
          for (std::ptrdiff_t dr = -1; dr <= 1 && is_peak; ++dr) {
            const std::ptrdiff_t jr = ((irx + dr) % nrx + nrx) % nrx;
            for (std::ptrdiff_t db = -1; db <= 1 && is_peak; ++db) {
              const std::ptrdiff_t jb = ibin + db;
              if (jb < 0 || jb >= nbin) continue;
              if (jt == itx && jr == irx && jb == ibin) continue;
              const double w = pdps.at(static_cast<std::size_t>(jt),
                                       static_cast<std::size_t>(jr),
                                       static_cast<std::size_t>(jb));
              if (!(v > w)) is_peak = false;
            }
          }
        }
        if (!is_peak) continue;
        MultipathComponent mpc;
        mpc.dod_deg = grid.tx_azimuths_deg[static_cast<std::size_t>(itx)];
        mpc.doa_deg = grid.rx_azimuths_deg[static_cast<std::size_t>(irx)];
        mpc.delay_s = static_cast<double>(ibin) * pdps.delay_bin_s();
        mpc.gain = v;
        peaks.push_back(mpc);
      }
    }
  }
  return peaks;
}

std::vector<MultipathComponent> sidelobe_filter(
    std::vector<MultipathComponent> mpcs) {
  std::map<double, double> strongest_by_delay;
  for (const auto& m : mpcs) {
    auto [it, inserted] = strongest_by_delay.emplace(m.delay_s, m.gain);
    if (!inserted) it->second = std::max(it->second, m.gain);
  }
  std::vector<MultipathComponent> kept;
  kept.reserve(mpcs.size());
  for (const auto& m : mpcs)
    if (m.gain * 10.0 > strongest_by_delay.at(m.delay_s)) kept.push_back(m);
  return kept;
}

std::vector<MultipathComponent> extract_mpcs(const MeasurementCapture& capture,
                                             const CalibrationProfile& cal,
                                             const ExtractOptions& options) {
  DirectionalPdpSet pdps = DirectionalPdpSet::compute(capture, cal);
  const NoiseEstimate noise = estimate_noise_map(pdps, options.tail_fraction);
  return extract_mpcs(gate_all(pdps, noise), options);
}

std::vector<MultipathComponent> extract_mpcs(const DirectionalPdpSet& gated,
                                             const ExtractOptions& options) {
  if (!(options.dynamic_range_db >= 0.0) ||
      !std::isfinite(options.dynamic_range_db))
    throw DomainError("extract_mpcs: dynamic_range_db must be >= 0");

  std::vector<MultipathComponent> mpcs = sidelobe_filter(detect_peaks_3d(gated));

  if (options.dynamic_range_db > 0.0 && !mpcs.empty()) {
    double strongest = 0.0;
    for (const auto& m : mpcs) strongest = std::max(strongest, m.gain);
    const double floor = strongest * std::pow(10.0, -options.dynamic_range_db / 10.0);
    std::erase_if(mpcs, [floor](const MultipathComponent& m) {
      return m.gain < floor;
    });
  }

  std::sort(mpcs.begin(), mpcs.end(),
            [](const MultipathComponent& a, const MultipathComponent& b) {
              if (a.gain != b.gain) return a.gain > b.gain;
              if (a.delay_s != b.delay_s) return a.delay_s < b.delay_s;
              if (a.dod_deg != b.dod_deg) return a.dod_deg < b.dod_deg;
              return a.doa_deg < b.doa_deg;
            });
  return mpcs;
}

}  // namespace mmcs
