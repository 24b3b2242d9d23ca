// SPDX-License-Identifier: Apache-2.0
#include <mmcs/beam.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <doctest.h>
#include <mmcs/errors.hpp>
#include <mmcs/rng.hpp>

using namespace mmcs;
using cd = std::complex<double>;

namespace {

BeamGrid small_grid(int n_tx, int n_rx) {
  BeamGrid g;
  for (int i = 0; i < n_tx; ++i) g.tx_azimuths_deg.push_back(-45.0 + 5.0 * i);
  for (int i = 0; i < n_rx; ++i) g.rx_azimuths_deg.push_back(-45.0 + 5.0 * i);
  return g;
}

MeasurementCapture blank_capture(const BeamGrid& grid, int tones) {
  MeasurementCapture c;
  c.grid = grid;
  c.config.num_tones = tones;
  c.h.assign(grid.tx_count() * grid.rx_count() * static_cast<std::size_t>(tones), cd(0.0, 0.0));
  return c;
}

CalibrationProfile flat_cal(int tones) {
  CalibrationProfile cal;
  cal.h_cal.assign(static_cast<std::size_t>(tones), cd(1.0, 0.0));
  return cal;
}

CalibrationProfile random_cal(int tones, std::uint64_t seed) {
  Rng rng(seed);
  CalibrationProfile cal;
  for (int i = 0; i < tones; ++i) {
    double mag = rng.uniform(0.5, 2.0);
    double ph = rng.uniform(0.0, 2.0 * std::numbers::pi);
    cal.h_cal.emplace_back(mag * std::cos(ph), mag * std::sin(ph));
  }
  return cal;
}

MeasurementCapture random_capture(const BeamGrid& grid, int tones, std::uint64_t seed) {
  MeasurementCapture c = blank_capture(grid, tones);
  Rng rng(seed);
  for (auto& v : c.h) {
    auto [a, b] = rng.normal_pair();
    v = cd(a, b);
  }
  return c;
}

// Direct-summation reference for one beam pair: |IDFT(H/h_cal)|^2 with 1/N
// scaling, written without the fft module.
std::vector<double> naive_pdp(const MeasurementCapture& c, const CalibrationProfile& cal,
                              std::size_t itx, std::size_t irx) {
  const std::size_t n = static_cast<std::size_t>(c.config.num_tones);
  std::vector<double> out(n);
  for (std::size_t m = 0; m < n; ++m) {
    cd acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      double ang = 2.0 * std::numbers::pi * static_cast<double>(k) * static_cast<double>(m) /
                   static_cast<double>(n);
      acc += c.at(itx, irx, k) / cal.h_cal[k] * cd(std::cos(ang), std::sin(ang));
    }
    out[m] = std::norm(acc / static_cast<double>(n));
  }
  return out;
}

}  // namespace

TEST_CASE("flat response concentrates all power in delay bin zero") {
  auto g = small_grid(2, 2);
  auto c = blank_capture(g, 32);
  for (auto& v : c.h) v = cd(1.0, 0.0);
  auto p = directional_pdp(c, flat_cal(32), -45.0, -45.0);
  CHECK(p.power[0] == doctest::Approx(1.0).epsilon(1e-12));
  for (std::size_t i = 1; i < p.power.size(); ++i) CHECK(p.power[i] < 1e-24);
  CHECK(p.delay_bin_s == doctest::Approx(c.config.delay_bin_s()));
  CHECK(p.theta_tx_deg == -45.0);
  CHECK(p.kind == ProfileKind::Directional);
}

TEST_CASE("a pure tone-domain phase ramp lands in the matching delay bin") {
  const int tones = 64;
  auto g = small_grid(1, 1);
  auto c = blank_capture(g, tones);
  const std::size_t target_bin = 11;
  for (int k = 0; k < tones; ++k) {
    double ang = 2.0 * std::numbers::pi * k * static_cast<double>(target_bin) / tones;
    c.at(0, 0, static_cast<std::size_t>(k)) = cd(std::cos(ang), -std::sin(ang));
  }
  auto p = directional_pdp(c, flat_cal(tones), -45.0, -45.0);
  CHECK(p.power[target_bin] == doctest::Approx(1.0).epsilon(1e-12));
  double rest = 0.0;
  for (std::size_t i = 0; i < p.power.size(); ++i) {
    if (i != target_bin) rest += p.power[i];
  }
  CHECK(rest < 1e-20);
}

TEST_CASE("directional PDPs match the direct-summation reference") {
  auto g = small_grid(3, 4);
  const int tones = 32;
  auto c = random_capture(g, tones, 41);
  auto cal = random_cal(tones, 42);
  auto set = DirectionalPdpSet::compute(c, cal);
  for (std::size_t itx = 0; itx < g.tx_count(); ++itx) {
    for (std::size_t irx = 0; irx < g.rx_count(); ++irx) {
      auto want = naive_pdp(c, cal, itx, irx);
      for (std::size_t b = 0; b < want.size(); ++b) {
        CHECK(set.at(itx, irx, b) == doctest::Approx(want[b]).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("bin sum equals mean calibrated tone power") {
  auto g = small_grid(2, 3);
  const int tones = 801;
  auto c = random_capture(g, tones, 5);
  auto cal = random_cal(tones, 6);
  auto set = DirectionalPdpSet::compute(c, cal);
  for (std::size_t itx = 0; itx < g.tx_count(); ++itx) {
    for (std::size_t irx = 0; irx < g.rx_count(); ++irx) {
      double sum = 0.0;
      for (std::size_t b = 0; b < set.delay_bins(); ++b) sum += set.at(itx, irx, b);
      double freq = 0.0;
      for (int k = 0; k < tones; ++k) {
        freq += std::norm(c.at(itx, irx, static_cast<std::size_t>(k)) /
                          cal.h_cal[static_cast<std::size_t>(k)]);
      }
      CHECK(sum == doctest::Approx(freq / tones).epsilon(1e-9));
    }
  }
}

TEST_CASE("delay shift leaves total power unchanged and rotates the bins") {
  auto g = small_grid(2, 2);
  const int tones = 64;
  auto base = random_capture(g, tones, 7);
  auto cal = random_cal(tones, 8);

  const std::size_t shift = 13;
  MeasurementCapture shifted = base;
  for (std::size_t itx = 0; itx < g.tx_count(); ++itx) {
    for (std::size_t irx = 0; irx < g.rx_count(); ++irx) {
      for (int k = 0; k < tones; ++k) {
        double ang = -2.0 * std::numbers::pi * k * static_cast<double>(shift) / tones;
        shifted.at(itx, irx, static_cast<std::size_t>(k)) *= cd(std::cos(ang), std::sin(ang));
      }
    }
  }
  auto p0 = DirectionalPdpSet::compute(base, cal);
  auto p1 = DirectionalPdpSet::compute(shifted, cal);
  for (std::size_t itx = 0; itx < g.tx_count(); ++itx) {
    for (std::size_t irx = 0; irx < g.rx_count(); ++irx) {
      for (std::size_t b = 0; b < p0.delay_bins(); ++b) {
        std::size_t rotated = (b + shift) % p0.delay_bins();
        CHECK(p1.at(itx, irx, rotated) == doctest::Approx(p0.at(itx, irx, b)).epsilon(1e-9));
      }
      CHECK(received_power(p1.profile(itx, irx)) ==
            doctest::Approx(received_power(p0.profile(itx, irx))).epsilon(1e-12));
    }
  }
}

TEST_CASE("omni profile is the per-bin maximum over beam pairs") {
  auto g = small_grid(3, 3);
  auto c = random_capture(g, 16, 9);
  auto set = DirectionalPdpSet::compute(c, flat_cal(16));
  auto omni = omni_pdp(set);
  CHECK(omni.kind == ProfileKind::Omni);
  CHECK(std::isnan(omni.theta_tx_deg));
  for (std::size_t b = 0; b < set.delay_bins(); ++b) {
    double want = 0.0;
    for (std::size_t itx = 0; itx < g.tx_count(); ++itx) {
      for (std::size_t irx = 0; irx < g.rx_count(); ++irx) {
        want = std::max(want, set.at(itx, irx, b));
      }
    }
    CHECK(omni.power[b] == want);
  }
}

TEST_CASE("omni dominates every directional profile bin for bin") {
  auto g = small_grid(4, 4);
  auto c = random_capture(g, 32, 10);
  auto set = DirectionalPdpSet::compute(c, random_cal(32, 11));
  auto omni = omni_pdp(set);
  for (std::size_t itx = 0; itx < g.tx_count(); ++itx) {
    for (std::size_t irx = 0; irx < g.rx_count(); ++irx) {
      for (std::size_t b = 0; b < set.delay_bins(); ++b) {
        CHECK(omni.power[b] >= set.at(itx, irx, b));
      }
    }
  }
}

TEST_CASE("angular spectrum sums each beam pair over delay") {
  auto g = small_grid(2, 3);
  auto c = random_capture(g, 16, 12);
  auto set = DirectionalPdpSet::compute(c, flat_cal(16));
  auto pas = angular_power_spectrum(set);
  for (std::size_t itx = 0; itx < g.tx_count(); ++itx) {
    for (std::size_t irx = 0; irx < g.rx_count(); ++irx) {
      double want = 0.0;
      for (std::size_t b = 0; b < set.delay_bins(); ++b) want += set.at(itx, irx, b);
      CHECK(pas.at(itx, irx) == doctest::Approx(want).epsilon(1e-12));
    }
  }
}

TEST_CASE("best beam pair is the spectrum argmax with lexicographic ties") {
  auto g = small_grid(3, 3);

  DirectionalPdpSet set = DirectionalPdpSet::compute(blank_capture(g, 8), flat_cal(8));
  set.at(1, 2, 3) = 5.0;
  auto pas = angular_power_spectrum(set);
  auto [tx, rx] = best_beam_pair(pas);
  CHECK(tx == g.tx_azimuths_deg[1]);
  CHECK(rx == g.rx_azimuths_deg[2]);

  // Constant spectrum: every pair ties, the smallest angles win.
  DirectionalPdpSet flat = DirectionalPdpSet::compute(blank_capture(g, 8), flat_cal(8));
  for (std::size_t itx = 0; itx < 3; ++itx) {
    for (std::size_t irx = 0; irx < 3; ++irx) flat.at(itx, irx, 0) = 1.0;
  }
  auto [ttx, trx] = best_beam_pair(angular_power_spectrum(flat));
  CHECK(ttx == g.tx_azimuths_deg[0]);
  CHECK(trx == g.rx_azimuths_deg[0]);
}

TEST_CASE("padp keeps the per-beam maximum over the far side") {
  auto g = small_grid(3, 4);
  auto c = random_capture(g, 16, 13);
  auto set = DirectionalPdpSet::compute(c, flat_cal(16));

  auto prx = padp(set, PadpSide::RxSide);
  CHECK(prx.beam_azimuths_deg == g.rx_azimuths_deg);
  CHECK(prx.delay_bins == set.delay_bins());
  for (std::size_t irx = 0; irx < g.rx_count(); ++irx) {
    for (std::size_t b = 0; b < set.delay_bins(); ++b) {
      double want = 0.0;
      for (std::size_t itx = 0; itx < g.tx_count(); ++itx) {
        want = std::max(want, set.at(itx, irx, b));
      }
      CHECK(prx.at(irx, b) == want);
    }
  }

  auto ptx = padp(set, PadpSide::TxSide);
  CHECK(ptx.beam_azimuths_deg == g.tx_azimuths_deg);
  for (std::size_t itx = 0; itx < g.tx_count(); ++itx) {
    for (std::size_t b = 0; b < set.delay_bins(); ++b) {
      double want = 0.0;
      for (std::size_t irx = 0; irx < g.rx_count(); ++irx) {
        want = std::max(want, set.at(itx, irx, b));
      }
      CHECK(ptx.at(itx, b) == want);
    }
  }

  // Maximizing a PADP over its beams reproduces the omni profile.
  auto omni = omni_pdp(set);
  for (std::size_t b = 0; b < set.delay_bins(); ++b) {
    double over_beams = 0.0;
    for (std::size_t irx = 0; irx < g.rx_count(); ++irx) {
      over_beams = std::max(over_beams, prx.at(irx, b));
    }
    CHECK(over_beams == omni.power[b]);
  }
}

TEST_CASE("path loss converts received power against the link budget") {
  SounderConfig cfg;
  cfg.link_budget_offset_db = 100.0;
  CHECK(path_loss_db(1.0, cfg) == doctest::Approx(100.0));
  CHECK(path_loss_db(0.01, cfg) == doctest::Approx(120.0));
  CHECK_THROWS_AS(path_loss_db(0.0, cfg), DomainError);
  CHECK_THROWS_AS(path_loss_db(-1.0, cfg), DomainError);
}

TEST_CASE("compute rejects mismatched or ill-conditioned calibration") {
  auto g = small_grid(2, 2);
  auto c = random_capture(g, 16, 14);
  CHECK_THROWS_AS(DirectionalPdpSet::compute(c, flat_cal(17)), DimensionError);

  auto cal = flat_cal(16);
  cal.h_cal[5] = cd(1e-9, 0.0);
  CHECK_THROWS_AS(DirectionalPdpSet::compute(c, cal), ConditioningError);
}

TEST_CASE("single-pair lookup rejects off-grid angles") {
  auto g = small_grid(2, 2);
  auto c = random_capture(g, 16, 15);
  CHECK_THROWS_AS(directional_pdp(c, flat_cal(16), 1.0, -45.0), GridError);
  CHECK_THROWS_AS(directional_pdp(c, flat_cal(16), -45.0, 90.0), GridError);
}

TEST_CASE("profile assembly requires exactly one profile per grid pair") {
  auto g = small_grid(2, 2);
  auto c = random_capture(g, 8, 16);
  auto set = DirectionalPdpSet::compute(c, flat_cal(8));

  std::vector<DelayProfile> profiles;
  for (std::size_t itx = 0; itx < 2; ++itx) {
    for (std::size_t irx = 0; irx < 2; ++irx) profiles.push_back(set.profile(itx, irx));
  }
  auto rebuilt = DirectionalPdpSet::from_profiles(g, profiles);
  for (std::size_t itx = 0; itx < 2; ++itx) {
    for (std::size_t irx = 0; irx < 2; ++irx) {
      for (std::size_t b = 0; b < 8; ++b) {
        CHECK(rebuilt.at(itx, irx, b) == set.at(itx, irx, b));
      }
    }
  }

  auto missing = profiles;
  missing.pop_back();
  CHECK_THROWS_AS(DirectionalPdpSet::from_profiles(g, missing), GridError);

  auto duplicated = profiles;
  duplicated[3] = duplicated[0];
  CHECK_THROWS_AS(DirectionalPdpSet::from_profiles(g, duplicated), GridError);

  auto off = profiles;
  off[0].theta_tx_deg = 7.0;
  CHECK_THROWS_AS(DirectionalPdpSet::from_profiles(g, off), GridError);

  auto ragged = profiles;
  ragged[1].power.resize(6);
  CHECK_THROWS_AS(DirectionalPdpSet::from_profiles(g, ragged), DimensionError);
}
