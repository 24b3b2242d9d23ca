// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "mmcs/beam.hpp"
#include "mmcs/capture.hpp"

namespace mmcs {

/// One resolved propagation path: departure / arrival azimuths, absolute
/// delay, and linear power gain at the receiver.
struct MultipathComponent {
  double dod_deg = 0.0;
  double doa_deg = 0.0;
  double delay_s = 0.0;
  double gain = 0.0;
};

struct ExtractOptions {
  /// Fraction of trailing delay bins used for the noise estimate.
  double tail_fraction = 0.1;
  /// Components more than this far below the strongest one are dropped;
  /// 0 disables the cut.
  double dynamic_range_db = 25.0;
};

/// Strict local maxima over the (tx beam, rx beam, delay) tensor using the
/// full 26-cell neighborhood. The rx axis is circular (the merged grid spans
/// the full azimuth circle); tx and delay axes are not. Cells on a plateau
/// are not maxima, and a maximum must be positive.
std::vector<MultipathComponent> detect_peaks_3d(const DirectionalPdpSet& pdps);

/// Within each delay bin, keeps only peaks whose gain exceeds one tenth of
/// that bin's strongest peak. Order is preserved.
std::vector<MultipathComponent> sidelobe_filter(
    std::vector<MultipathComponent> mpcs);

/// Full pipeline: directional PDPs, noise gating, 3-D peak detection,
/// per-bin sidelobe rejection, dynamic-range cut, sorted by descending gain
/// (ties by delay, then departure, then arrival azimuth).
std::vector<MultipathComponent> extract_mpcs(const MeasurementCapture& capture,
                                             const CalibrationProfile& cal,
                                             const ExtractOptions& options = {});

/// Same pipeline from an already noise-gated PDP set.
std::vector<MultipathComponent> extract_mpcs(const DirectionalPdpSet& gated,
                                             const ExtractOptions& options = {});

}  // namespace mmcs
