// SPDX-License-Identifier: Apache-2.0
// Release gate: every shipping criterion checked in one binary, one
// [PASS]/[FAIL] line each with the measured values, nonzero exit if any
// criterion fails. Statistical criteria use fixed seeds.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <mmcs/beam.hpp>
#include <mmcs/capture.hpp>
#include <mmcs/capture_io.hpp>
#include <mmcs/delay_stats.hpp>
#include <mmcs/errors.hpp>
#include <mmcs/mpc.hpp>
#include <mmcs/pathloss.hpp>
#include <mmcs/rng.hpp>
#include <mmcs/synth.hpp>
#include <mmcs/waveform.hpp>

namespace fs = std::filesystem;
using namespace mmcs;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

std::string fmt(double value, int precision = 6) {
  std::ostringstream out;
  out.precision(precision);
  out << value;
  return out.str();
}

// Gaussian draw helper: consumes Box-Muller pairs one value at a time.
class GaussStream {
 public:
  explicit GaussStream(Rng& rng) : rng_(rng) {}
  double next() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const auto [a, b] = rng_.normal_pair();
    spare_ = b;
    has_spare_ = true;
    return a;
  }

 private:
  Rng& rng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// ---------------------------------------------------------------------------
// 1. Free-space reference at 1 m for the sounder carrier.

Outcome check_free_space_reference() {
  const double value = fspl_reference(27.85e9);
  const double delta = std::abs(value - 61.34);
  return {delta <= 0.01,
          "fspl(27.85 GHz) = " + fmt(value) + " dB, |delta| = " + fmt(delta) +
              " (limit 0.01)"};
}

// ---------------------------------------------------------------------------
// 2. Reference lognormal delay-spread means at the carrier.

Outcome check_reference_ds_means() {
  const double mu_los = three_gpp_mu(27.85, ThreeGppScenario::LoS);
  const double mu_nlos = three_gpp_mu(27.85, ThreeGppScenario::NLoS);
  const double d_los = std::abs(mu_los - (-7.49));
  const double d_nlos = std::abs(mu_nlos - (-7.19));
  return {d_los <= 0.005 && d_nlos <= 0.005,
          "mu_los = " + fmt(mu_los) + " (|delta| " + fmt(d_los) +
              "), mu_nlos = " + fmt(mu_nlos) + " (|delta| " + fmt(d_nlos) +
              "), limit 0.005"};
}

// ---------------------------------------------------------------------------
// 3. Path-loss fits recover planted models under shadowing.

Outcome check_model_recovery() {
  const auto start = std::chrono::steady_clock::now();
  constexpr int kTrials = 100;
  constexpr int kSamples = 200;
  const double p0_ci = fspl_reference(27.85e9);

  std::vector<double> distances(kSamples);
  for (int i = 0; i < kSamples; ++i)
    distances[i] = std::pow(10.0, -1.0 + 4.0 * i / (kSamples - 1.0));

  int passed = 0;
  for (int trial = 0; trial < kTrials; ++trial) {
    Rng rng(5000 + static_cast<std::uint64_t>(trial));
    GaussStream gauss(rng);

    std::vector<PathLossSample> abg_samples(kSamples);
    std::vector<PathLossSample> ci_samples(kSamples);
    for (int i = 0; i < kSamples; ++i) {
      const double lg = std::log10(distances[i]);
      abg_samples[i] = {distances[i], 63.47 + 28.2 * lg + 6.44 * gauss.next()};
      ci_samples[i] = {distances[i], p0_ci + 35.8 * lg + 3.06 * gauss.next()};
    }

    const FitReport abg = fit_abg(abg_samples);
    const FitReport ci = fit_ci(ci_samples, 27.85e9);
    const bool ok = std::abs(abg.model.n - 2.82) <= 0.15 &&
                    std::abs(abg.model.p0_db - 63.47) <= 2.0 &&
                    std::abs(ci.model.n - 3.58) <= 0.1 &&
                    std::abs(ci.model.sigma_db - 3.06) <= 0.15 * 3.06;
    if (ok) ++passed;
  }

  const double elapsed = seconds_since(start);
  return {passed >= 95 && elapsed < 10.0,
          std::to_string(passed) + "/100 trials recovered (need >= 95), " +
              fmt(elapsed, 3) + " s (limit 10)"};
}

// ---------------------------------------------------------------------------
// 4. Delay-spread edge cases and invariances.

Outcome check_delay_spread_basics() {
  DelayProfile single;
  single.power = {0.0, 0.0, 5.0, 0.0};
  single.delay_bin_s = 2.5e-9;
  const std::vector<std::size_t> single_support{2};
  const double ds_single = rms_delay_spread(single, single_support);
  if (ds_single != 0.0)
    return {false, "single-bin spread " + fmt(ds_single) + " != 0"};

  DelayProfile pair;
  pair.power.assign(64, 0.0);
  pair.delay_bin_s = 2.5e-9;
  pair.power[3] = 1.0;
  pair.power[43] = 1.0;  // 40 bins * 2.5 ns = 100 ns apart
  const std::vector<std::size_t> pair_support{3, 43};
  const double ds_pair = rms_delay_spread(pair, pair_support);
  const double rel_pair = std::abs(ds_pair - 50e-9) / 50e-9;
  if (rel_pair > 1e-12)
    return {false, "equal two-bin spread off by " + fmt(rel_pair)};

  Rng rng(404);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 32 + rng.below(225);
    DelayProfile base;
    base.power.assign(n, 0.0);
    base.delay_bin_s = 1e-9 * (0.5 + rng.uniform01());
    std::vector<std::size_t> support;
    for (std::size_t i = 0; i < n; ++i) {
      if (rng.uniform01() < 0.3) {
        base.power[i] = rng.uniform(0.1, 10.0);
        support.push_back(i);
      }
    }
    if (support.size() < 2) continue;
    const double ds = rms_delay_spread(base, support);

    const std::size_t shift = 1 + rng.below(40);
    DelayProfile shifted;
    shifted.delay_bin_s = base.delay_bin_s;
    shifted.power.assign(n + shift, 0.0);
    std::vector<std::size_t> shifted_support;
    for (std::size_t i : support) {
      shifted.power[i + shift] = base.power[i];
      shifted_support.push_back(i + shift);
    }
    const double scale = std::pow(10.0, rng.uniform(-3.0, 3.0));
    DelayProfile scaled = base;
    for (double& v : scaled.power) v *= scale;

    const double ds_shift = rms_delay_spread(shifted, shifted_support);
    const double ds_scale = rms_delay_spread(scaled, support);
    worst = std::max(worst, std::abs(ds_shift - ds) / ds);
    worst = std::max(worst, std::abs(ds_scale - ds) / ds);
  }
  return {worst <= 1e-12,
          "shift/scale invariance worst relative error " + fmt(worst) +
              " (limit 1e-12)"};
}

// ---------------------------------------------------------------------------
// 5. Noise gate boundary behavior at 4x and 2x the noise power.

Outcome check_gate_boundaries() {
  DelayProfile p;
  p.power = {10.0, 4.0, 4.0 + 1e-9, 2.0, 0.5};
  p.delay_bin_s = 1e-9;
  const DelayProfile gated = gate_directional(p, 1.0);
  const bool gate_ok = gated.power[0] == 10.0 && gated.power[1] == 0.0 &&
                       gated.power[2] == 4.0 + 1e-9 && gated.power[3] == 0.0 &&
                       gated.power[4] == 0.0;

  DelayProfile q;
  q.power = {3.0, 2.0, 2.0 + 1e-9, 1.0};
  q.delay_bin_s = 1e-9;
  const std::vector<std::size_t> support = gated_delay_support(q, 1.0);
  const bool support_ok = support == std::vector<std::size_t>{0, 2};

  return {gate_ok && support_ok,
          std::string("bins at exactly 4*sigma2 ") +
              (gate_ok ? "removed" : "NOT removed") +
              ", bins at exactly 2*sigma2 " +
              (support_ok ? "excluded from support" : "NOT excluded")};
}

// ---------------------------------------------------------------------------
// 6. Omni dominance, per-beam power conservation, delay-shift covariance.

Outcome check_pdp_invariants() {
  const auto start = std::chrono::steady_clock::now();
  constexpr std::size_t kTones = 64;
  BeamGrid grid;
  for (int i = 0; i < 8; ++i) {
    grid.tx_azimuths_deg.push_back(-20.0 + 5.0 * i);
    grid.rx_azimuths_deg.push_back(-20.0 + 5.0 * i);
  }
  SounderConfig config;
  config.num_tones = static_cast<int>(kTones);
  const CalibrationProfile cal = unit_calibration(kTones);

  double worst_parseval = 0.0;
  double worst_shift = 0.0;
  bool omni_ok = true;
  for (int trial = 0; trial < 100; ++trial) {
    Rng rng(600 + static_cast<std::uint64_t>(trial));
    MeasurementCapture capture;
    capture.config = config;
    capture.grid = grid;
    capture.h.resize(8 * 8 * kTones);
    for (auto& v : capture.h)
      v = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};

    const auto pdps = DirectionalPdpSet::compute(capture, cal);
    const DelayProfile omni = omni_pdp(pdps);

    const std::size_t shift = 1 + rng.below(kTones - 1);
    MeasurementCapture shifted = capture;
    for (std::size_t itx = 0; itx < 8; ++itx)
      for (std::size_t irx = 0; irx < 8; ++irx)
        for (std::size_t k = 0; k < kTones; ++k) {
          const double ang = -2.0 * std::numbers::pi *
                             static_cast<double>(k * shift) / kTones;
          shifted.at(itx, irx, k) *= std::polar(1.0, ang);
        }
    const auto pdps_shifted = DirectionalPdpSet::compute(shifted, cal);

    for (std::size_t itx = 0; itx < 8; ++itx) {
      for (std::size_t irx = 0; irx < 8; ++irx) {
        double bin_sum = 0.0;
        double tone_power = 0.0;
        double peak = 0.0;
        for (std::size_t m = 0; m < kTones; ++m) {
          const double v = pdps.at(itx, irx, m);
          bin_sum += v;
          peak = std::max(peak, v);
          tone_power += std::norm(capture.at(itx, irx, m));
          if (v > omni.power[m]) omni_ok = false;
        }
        tone_power /= static_cast<double>(kTones);
        worst_parseval = std::max(
            worst_parseval, std::abs(bin_sum - tone_power) / tone_power);
        for (std::size_t m = 0; m < kTones; ++m) {
          const double moved = pdps_shifted.at(itx, irx, (m + shift) % kTones);
          worst_shift = std::max(
              worst_shift, std::abs(moved - pdps.at(itx, irx, m)) / peak);
        }
      }
    }
  }

  const double elapsed = seconds_since(start);
  const bool pass = omni_ok && worst_parseval <= 1e-9 && worst_shift <= 1e-9 &&
                    elapsed < 30.0;
  return {pass, std::string("omni dominance ") + (omni_ok ? "held" : "BROKEN") +
                    ", power conservation worst " + fmt(worst_parseval) +
                    ", shift covariance worst " + fmt(worst_shift) +
                    " (limits 1e-9), " + fmt(elapsed, 3) + " s (limit 30)"};
}

// ---------------------------------------------------------------------------
// 7. Multipath extraction recovers planted paths without spurious detections.

Outcome check_mpc_recovery() {
  const auto start = std::chrono::steady_clock::now();
  constexpr std::size_t kTones = 201;
  constexpr std::size_t kPaths = 5;
  const BeamGrid grid = BeamGrid::sector();
  SounderConfig config;
  config.num_tones = static_cast<int>(kTones);
  const double bin_s = config.delay_bin_s();
  const CalibrationProfile cal = unit_calibration(kTones);
  const BeamPatternModel pattern;

  // Distinct on-grid beams at least 3 steps apart and delay bins at least 5
  // bins apart keep every planted path a clean strict maximum.
  const auto pick_separated = [](Rng& rng, std::size_t count, std::size_t range,
                                 std::size_t min_gap) {
    std::vector<std::size_t> picks;
    while (true) {
      picks.clear();
      for (std::size_t i = 0; i < count; ++i) picks.push_back(rng.below(range));
      std::sort(picks.begin(), picks.end());
      bool ok = true;
      for (std::size_t i = 1; i < count; ++i)
        if (picks[i] - picks[i - 1] < min_gap) ok = false;
      if (ok) return picks;
    }
  };

  int matched = 0;
  int spurious = 0;
  for (int scene = 0; scene < 50; ++scene) {
    Rng rng(9000 + static_cast<std::uint64_t>(scene));
    const auto tx_idx = pick_separated(rng, kPaths, grid.tx_count(), 3);
    const auto rx_idx = pick_separated(rng, kPaths, grid.rx_count(), 3);
    const auto bins =
        pick_separated(rng, kPaths, static_cast<std::size_t>(0.7 * kTones), 5);

    std::vector<MultipathComponent> truth;
    for (std::size_t p = 0; p < kPaths; ++p)
      truth.push_back({grid.tx_azimuths_deg[tx_idx[p]],
                       grid.rx_azimuths_deg[rx_idx[p]],
                       static_cast<double>(bins[p]) * bin_s, 1e-6});

    const MeasurementCapture capture = render_capture(
        truth, grid, config, pattern, 1e-9, 300 + static_cast<std::uint64_t>(scene));
    const auto mpcs = extract_mpcs(capture, cal);

    std::vector<bool> used(mpcs.size(), false);
    int found = 0;
    for (const auto& t : truth) {
      const long long t_tx = grid.tx_index_of(t.dod_deg);
      const long long t_rx = grid.rx_index_of(t.doa_deg);
      const long long t_bin = std::llround(t.delay_s / bin_s);
      for (std::size_t i = 0; i < mpcs.size(); ++i) {
        if (used[i]) continue;
        const long long m_tx = grid.tx_index_of(mpcs[i].dod_deg);
        const long long m_rx = grid.rx_index_of(mpcs[i].doa_deg);
        const long long m_bin = std::llround(mpcs[i].delay_s / bin_s);
        if (std::llabs(m_tx - t_tx) <= 1 && std::llabs(m_rx - t_rx) <= 1 &&
            std::llabs(m_bin - t_bin) <= 1) {
          used[i] = true;
          ++found;
          break;
        }
      }
    }
    matched += found;
    spurious += static_cast<int>(mpcs.size()) - found;
  }

  const double elapsed = seconds_since(start);
  const bool pass = matched == 250 && spurious == 0 && elapsed < 60.0;
  return {pass, std::to_string(matched) + "/250 paths matched within 1 beam / "
                    "1 bin, " +
                    std::to_string(spurious) + " spurious, " + fmt(elapsed, 3) +
                    " s (limit 60)"};
}

// ---------------------------------------------------------------------------
// 8. Closed-loop delay-spread recovery through synthesis and analysis.

Outcome check_ds_closed_loop() {
  const BeamGrid grid = BeamGrid::sector();
  const SounderConfig config;
  const CalibrationProfile cal =
      unit_calibration(static_cast<std::size_t>(config.num_tones));
  const BeamPatternModel pattern;

  // The sampler rejects seeds whose 100 draws never hit the spread target
  // (30 paths collide often at 2.5 ns bins); walk the seed sequence until 50
  // scenes have been collected.
  std::vector<double> spreads;
  for (std::uint64_t seed = 1; spreads.size() < 50 && seed <= 1000; ++seed) {
    SceneSpec spec;
    spec.n = 3.58;
    spec.p0_db = 61.34;
    spec.shadow_sigma_db = 0.0;
    spec.ds_target_s = 67.18e-9;
    spec.num_paths = 30;
    spec.distance_m = 100.0;
    spec.seed = seed;
    SampledScene scene;
    try {
      scene = sample_scene(spec, grid, config);
    } catch (const DataError&) {
      continue;
    }
    const MeasurementCapture capture =
        render_capture(scene.paths, grid, config, pattern, 0.0, seed);
    const auto pdps = DirectionalPdpSet::compute(capture, cal);
    const DelayProfile omni = omni_pdp(pdps);
    const auto support = gated_delay_support(omni, 0.0);
    spreads.push_back(rms_delay_spread(omni, support));
  }
  if (spreads.size() < 50)
    return {false, "only " + std::to_string(spreads.size()) +
                       "/50 scenes drawn within the seed budget"};

  std::sort(spreads.begin(), spreads.end());
  const double median = 0.5 * (spreads[24] + spreads[25]);
  const double rel = std::abs(median - 67.18e-9) / 67.18e-9;
  return {rel <= 0.15, "median analyzed spread " + fmt(median * 1e9, 5) +
                           " ns vs 67.18 ns target, relative error " +
                           fmt(rel, 4) + " (limit 0.15)"};
}

// ---------------------------------------------------------------------------
// 9. Waveform duration, optimizer target, and the flat-phase reference.

Outcome check_waveform() {
  const auto start = std::chrono::steady_clock::now();
  const MultitoneSpec newman = MultitoneSpec::newman(801, 500e3);
  if (newman.duration_s() != 2e-6)
    return {false, "period " + fmt(newman.duration_s()) + " s != 2e-06 s"};

  const PhaseOptResult result = optimize_phases(801, 500e3);
  if (!(result.below_target && result.papr_db <= 1.0 &&
        result.iterations <= 2000))
    return {false, "optimizer papr " + fmt(result.papr_db) + " dB after " +
                       std::to_string(result.iterations) +
                       " iterations (target 1.0 within 2000)"};

  MultitoneSpec flat = newman;
  std::fill(flat.phases_rad.begin(), flat.phases_rad.end(), 0.0);
  const double flat_papr = papr_db(flat);
  const double delta = std::abs(flat_papr - 29.04);
  const double elapsed = seconds_since(start);
  const bool pass = delta <= 0.01 && elapsed < 60.0;
  return {pass, "period 2e-06 s, optimized papr " + fmt(result.papr_db, 4) +
                    " dB in " + std::to_string(result.iterations) +
                    " iterations, flat-phase papr " + fmt(flat_papr, 6) +
                    " dB (|delta| " + fmt(delta, 3) + " <= 0.01), " +
                    fmt(elapsed, 3) + " s (limit 60)"};
}

// ---------------------------------------------------------------------------
// 10. Normality test: exact single-point statistic and calibrated p-values.

Outcome check_ks_calibration() {
  const std::vector<double> one{0.0};
  const KsResult single = gaussian_ks_test(one, 1.0);
  if (single.statistic != 0.5)
    return {false, "single-point statistic " + fmt(single.statistic) +
                       " != 0.5 exactly"};

  int above = 0;
  for (int batch = 0; batch < 100; ++batch) {
    Rng rng(1000 + static_cast<std::uint64_t>(batch));
    GaussStream gauss(rng);
    std::vector<double> samples(10000);
    for (double& s : samples) s = gauss.next();
    if (gaussian_ks_test(samples).p_value > 0.05) ++above;
  }
  return {above >= 90, "single-point statistic exactly 0.5; p > 0.05 in " +
                           std::to_string(above) +
                           "/100 Gaussian batches (need >= 90)"};
}

// ---------------------------------------------------------------------------
// 11. Capture store round trip and four-sector merge.

Outcome check_capture_io() {
  const fs::path dir =
      fs::temp_directory_path() / "mmcs_acceptance_io";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const fs::path path = dir / "roundtrip.mmw";

  // volatile keeps the narrowing from being optimized away at -O3
  const auto as_f32 = [](double v) {
    volatile float f = static_cast<float>(v);
    return static_cast<double>(f);
  };

  int exact = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    Rng rng(7000 + static_cast<std::uint64_t>(trial));
    MeasurementCapture capture;
    capture.config.num_tones = 10 + static_cast<int>(rng.below(23));
    for (std::size_t i = 0, n = 1 + rng.below(3); i < n; ++i)
      capture.grid.tx_azimuths_deg.push_back(5.0 * static_cast<double>(i));
    for (std::size_t i = 0, n = 1 + rng.below(4); i < n; ++i)
      capture.grid.rx_azimuths_deg.push_back(5.0 * static_cast<double>(i));
    capture.h.resize(capture.grid.tx_count() * capture.grid.rx_count() *
                     static_cast<std::size_t>(capture.config.num_tones));
    for (auto& v : capture.h)
      v = {as_f32(rng.uniform(-8.0, 8.0)), as_f32(rng.uniform(-8.0, 8.0))};
    capture.meta.location_id = "cap" + std::to_string(trial);
    capture.meta.tx_rx_distance_m =
        static_cast<double>(1 + rng.below(2000)) / 10.0;
    capture.meta.scenario =
        trial % 2 == 0 ? Scenario::Street28 : Scenario::NLoS;
    capture.meta.rx_orientation_set = {0.0};

    save_capture(capture, path);
    const MeasurementCapture loaded = load_capture(path);
    const bool same =
        loaded.h == capture.h &&
        loaded.grid.tx_azimuths_deg == capture.grid.tx_azimuths_deg &&
        loaded.grid.rx_azimuths_deg == capture.grid.rx_azimuths_deg &&
        loaded.config.num_tones == capture.config.num_tones &&
        loaded.config.center_freq_hz == capture.config.center_freq_hz &&
        loaded.meta.location_id == capture.meta.location_id &&
        loaded.meta.tx_rx_distance_m == capture.meta.tx_rx_distance_m &&
        loaded.meta.scenario == capture.meta.scenario;
    if (same) ++exact;
  }

  std::vector<std::pair<double, MeasurementCapture>> sectors;
  for (double rotation : {0.0, 90.0, 180.0, 270.0}) {
    MeasurementCapture sector;
    sector.config.num_tones = 16;
    sector.grid = BeamGrid::sector();
    sector.h.assign(sector.grid.tx_count() * sector.grid.rx_count() * 16,
                    {1.0, 0.0});
    sector.meta.rx_orientation_set = {0.0};
    sectors.emplace_back(rotation, std::move(sector));
  }
  const MeasurementCapture merged = merge_sector_captures(sectors);
  const bool merge_ok =
      merged.grid.rx_count() == 72 && merged.grid.tx_count() == 19;

  fs::remove_all(dir);
  return {exact == 1000 && merge_ok,
          std::to_string(exact) +
              "/1000 captures round-tripped bit for bit; merged grid has " +
              std::to_string(merged.grid.rx_count()) + " RX beams (need 72)"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"free-space reference at 1 m", check_free_space_reference},
      {"reference delay-spread means", check_reference_ds_means},
      {"path-loss model recovery", check_model_recovery},
      {"delay-spread edge cases and invariances", check_delay_spread_basics},
      {"noise gate boundaries", check_gate_boundaries},
      {"pdp omni/power/shift invariants", check_pdp_invariants},
      {"multipath extraction recovery", check_mpc_recovery},
      {"closed-loop delay-spread recovery", check_ds_closed_loop},
      {"waveform duration and papr", check_waveform},
      {"normality test calibration", check_ks_calibration},
      {"capture round trip and sector merge", check_capture_io},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome outcome;
    try {
      outcome = criteria[i].second();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    if (!outcome.pass) ++failures;
    std::cout << (outcome.pass ? "[PASS] " : "[FAIL] ") << (i + 1) << ". "
              << criteria[i].first << ": " << outcome.detail << "\n";
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size()
            << " criteria passed\n";
  return failures == 0 ? 0 : 1;
}
