// SPDX-License-Identifier: Apache-2.0
// Command line front end: analyze captures into per-location reports, fit
// path-loss and delay-spread models across locations, synthesize test
// scenes, design low-PAPR sounding waveforms, and convert captures to and
// from their text dump form.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <limits>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mmcs/beam.hpp"
#include "mmcs/capture.hpp"
#include "mmcs/capture_io.hpp"
#include "mmcs/delay_stats.hpp"
#include "mmcs/errors.hpp"
#include "mmcs/mpc.hpp"
#include "mmcs/pathloss.hpp"
#include "mmcs/report.hpp"
#include "mmcs/synth.hpp"
#include "mmcs/waveform.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitNumeric = 4;
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const mmcs::DegenerateError*>(&e) != nullptr ||
      dynamic_cast<const mmcs::ConditioningError*>(&e) != nullptr ||
      dynamic_cast<const mmcs::DomainError*>(&e) != nullptr)
    return kExitNumeric;
  return kExitData;
}

/// Scene or config document violates the expected schema (exit code 2).
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// JSON config file: top-level keys map to global options, nested objects to
// subcommand options, e.g. {"analyze": {"jobs": 4}}. Command line flags
// override config values.
class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App*, bool, bool, std::string) const override {
    return "{}\n";
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    json doc;
    try {
      input >> doc;
    } catch (const json::parse_error& e) {
      throw CLI::FileError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw CLI::FileError("config must be a JSON object");
    std::vector<CLI::ConfigItem> items;
    collect(doc, {}, items);
    return items;
  }

 private:
  static void collect(const json& node, std::vector<std::string> parents,
                      std::vector<CLI::ConfigItem>& items) {
    for (const auto& [key, value] : node.items()) {
      if (value.is_object()) {
        auto next = parents;
        next.push_back(key);
        collect(value, std::move(next), items);
        continue;
      }
      CLI::ConfigItem item;
      item.parents = parents;
      item.name = key;
      if (value.is_array()) {
        for (const auto& element : value) item.inputs.push_back(scalar_string(element));
      } else {
        item.inputs.push_back(scalar_string(value));
      }
      items.push_back(std::move(item));
    }
  }

  static std::string scalar_string(const json& value) {
    if (value.is_string()) return value.get<std::string>();
    return value.dump();
  }
};

// ---------------------------------------------------------------- analyze

struct AnalyzeArgs {
  std::vector<std::string> captures;
  std::string cal_path;
  std::string out_dir = "analysis";
  double tail_fraction = 0.1;
  double dynamic_range_db = 25.0;
  unsigned jobs = 0;  // 0 picks one worker per hardware thread
};

mmcs::LocationSummary analyze_one(const fs::path& capture_path,
                                  const mmcs::CalibrationProfile& cal,
                                  const AnalyzeArgs& args) {
  const mmcs::MeasurementCapture capture = mmcs::load_capture(capture_path);
  const auto pdps = mmcs::DirectionalPdpSet::compute(capture, cal);
  const auto noise = mmcs::estimate_noise_map(pdps, args.tail_fraction);
  const auto gated = mmcs::gate_all(pdps, noise);

  const auto omni = mmcs::omni_pdp(gated);
  const auto pas = mmcs::angular_power_spectrum(gated);
  const auto [best_tx, best_rx] = mmcs::best_beam_pair(pas);
  mmcs::DelayProfile best =
      gated.profile(static_cast<std::size_t>(capture.grid.tx_index_of(best_tx)),
                    static_cast<std::size_t>(capture.grid.rx_index_of(best_rx)));
  best.kind = mmcs::ProfileKind::BestBeam;

  mmcs::LocationSummary summary;
  summary.location_id = capture.meta.location_id;
  summary.scenario = capture.meta.scenario;
  summary.distance_m = capture.meta.tx_rx_distance_m;
  summary.pl_omni_db =
      mmcs::path_loss_db(mmcs::received_power(omni), capture.config);
  summary.pl_dir_db =
      mmcs::path_loss_db(mmcs::received_power(best), capture.config);
  summary.rms_ds_omni_s =
      mmcs::rms_delay_spread(omni, mmcs::gated_delay_support(omni, noise.omni_sigma2));
  summary.rms_ds_dir_s =
      mmcs::rms_delay_spread(best, mmcs::gated_delay_support(best, noise.omni_sigma2));

  mmcs::ExtractOptions mpc_options;
  mpc_options.tail_fraction = args.tail_fraction;
  mpc_options.dynamic_range_db = args.dynamic_range_db;
  const auto mpcs = mmcs::extract_mpcs(gated, mpc_options);

  const fs::path dir = fs::path(args.out_dir) / summary.location_id;
  fs::create_directories(dir);
  mmcs::write_file_atomic(dir / "pdp_omni.csv", mmcs::pdp_csv(omni));
  mmcs::write_file_atomic(dir / "pdp_best.csv", mmcs::pdp_csv(best));
  mmcs::write_file_atomic(dir / "pas.csv", mmcs::pas_csv(pas));
  mmcs::write_file_atomic(dir / "padp_rx.csv",
                          mmcs::padp_csv(mmcs::padp(gated, mmcs::PadpSide::RxSide)));
  mmcs::write_file_atomic(dir / "padp_tx.csv",
                          mmcs::padp_csv(mmcs::padp(gated, mmcs::PadpSide::TxSide)));
  mmcs::write_file_atomic(dir / "mpcs.csv", mmcs::mpc_csv(mpcs));
  return summary;
}

int cmd_analyze(const AnalyzeArgs& args) {
  std::string stage = "setup";
  try {
    if (args.captures.empty()) {
      std::cerr << "analyze: inputs: no capture files given\n";
      return kExitUsage;
    }
    if (!fs::exists(args.cal_path)) {
      std::cerr << "analyze: calibration: file not found: " << args.cal_path << "\n";
      return kExitUsage;
    }
    for (const auto& path : args.captures) {
      if (!fs::exists(path)) {
        std::cerr << "analyze: inputs: file not found: " << path << "\n";
        return kExitUsage;
      }
    }

    stage = "calibration";
    const mmcs::CalibrationProfile cal = mmcs::load_calibration(args.cal_path);

    stage = "captures";
    const std::size_t count = args.captures.size();
    std::vector<mmcs::LocationSummary> summaries(count);
    std::vector<std::exception_ptr> failures(count);
    std::atomic<std::size_t> cursor{0};
    unsigned jobs = args.jobs != 0 ? args.jobs : std::thread::hardware_concurrency();
    jobs = std::clamp<unsigned>(jobs, 1, static_cast<unsigned>(count));
    const auto worker = [&]() {
      for (std::size_t i = cursor.fetch_add(1); i < count; i = cursor.fetch_add(1)) {
        try {
          summaries[i] = analyze_one(args.captures[i], cal, args);
        } catch (...) {
          failures[i] = std::current_exception();
        }
      }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    for (std::size_t i = 0; i < count; ++i) {
      if (!failures[i]) continue;
      try {
        std::rethrow_exception(failures[i]);
      } catch (const std::exception& e) {
        std::cerr << "analyze: capture " << args.captures[i] << ": " << e.what() << "\n";
        return exit_code_for(e);
      }
    }

    stage = "report";
    fs::create_directories(args.out_dir);
    mmcs::write_file_atomic(fs::path(args.out_dir) / "locations.csv",
                            mmcs::location_summary_csv(summaries));
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "analyze: " << stage << ": " << e.what() << "\n";
    return exit_code_for(e);
  }
}

// -------------------------------------------------------------------- fit

struct FitArgs {
  std::string locations_path;
  std::string out_dir = "fit";
  double center_freq_hz = 27.85e9;
};

mmcs::ModelFitRow make_model_row(mmcs::Scenario scenario, mmcs::ProfileKind profile,
                                 mmcs::PathLossFamily family,
                                 std::span<const mmcs::PathLossSample> samples,
                                 double center_freq_hz) {
  mmcs::ModelFitRow row;
  row.scenario = scenario;
  row.profile = profile;
  row.family = family;
  row.sample_count = samples.size();
  row.model.family = family;
  row.model.n = row.model.p0_db = row.model.sigma_db = kNan;
  row.ks_statistic = row.ks_p = kNan;
  if (samples.size() < 2) {
    row.skipped = true;
    return row;
  }
  try {
    const mmcs::FitReport fit = family == mmcs::PathLossFamily::CI
                                    ? mmcs::fit_ci(samples, center_freq_hz)
                                    : mmcs::fit_abg(samples);
    row.model = fit.model;
    row.ks_statistic = fit.ks_statistic;
    row.ks_p = fit.ks_p;
  } catch (const mmcs::DegenerateError&) {
    // e.g. every location at the same distance: no slope to fit
    row.skipped = true;
    row.model.n = row.model.p0_db = row.model.sigma_db = kNan;
  }
  return row;
}

mmcs::DelaySpreadRow make_ds_row(mmcs::Scenario scenario, mmcs::ProfileKind profile,
                                 std::span<const double> values_s, double f_ghz) {
  mmcs::DelaySpreadRow row;
  row.scenario = scenario;
  row.profile = profile;
  row.three_gpp_mu_log = mmcs::three_gpp_mu(f_ghz, mmcs::three_gpp_mapping(scenario));
  row.stats.count = values_s.size();
  row.stats.median_s = row.stats.mu_log = row.stats.sigma_log = row.stats.ks_p = kNan;
  if (values_s.size() < 2) {
    row.skipped = true;
    return row;
  }
  row.stats = mmcs::fit_log_ds(values_s);
  return row;
}

int cmd_fit(const FitArgs& args) {
  std::string stage = "setup";
  try {
    if (!fs::exists(args.locations_path)) {
      std::cerr << "fit: locations: file not found: " << args.locations_path << "\n";
      return kExitUsage;
    }

    stage = "locations";
    const auto rows =
        mmcs::parse_location_summary_csv(mmcs::read_file(args.locations_path));

    stage = "fits";
    mmcs::FitReportDoc doc;
    doc.center_freq_hz = args.center_freq_hz;
    const double f_ghz = args.center_freq_hz / 1e9;
    doc.three_gpp_mu_los_log = mmcs::three_gpp_mu(f_ghz, mmcs::ThreeGppScenario::LoS);
    doc.three_gpp_mu_nlos_log = mmcs::three_gpp_mu(f_ghz, mmcs::ThreeGppScenario::NLoS);

    for (const mmcs::Scenario scenario :
         {mmcs::Scenario::Street28, mmcs::Scenario::NLoS}) {
      for (const mmcs::ProfileKind profile :
           {mmcs::ProfileKind::Omni, mmcs::ProfileKind::BestBeam}) {
        std::vector<mmcs::PathLossSample> samples;
        std::vector<double> ds_values;
        for (const auto& location : rows) {
          if (location.scenario != scenario) continue;
          const bool omni = profile == mmcs::ProfileKind::Omni;
          samples.push_back({location.distance_m,
                             omni ? location.pl_omni_db : location.pl_dir_db});
          const double ds = omni ? location.rms_ds_omni_s : location.rms_ds_dir_s;
          // log-domain statistics are undefined for a zero spread
          if (ds > 0.0) ds_values.push_back(ds);
        }
        for (const mmcs::PathLossFamily family :
             {mmcs::PathLossFamily::CI, mmcs::PathLossFamily::ABG}) {
          doc.models.push_back(make_model_row(scenario, profile, family, samples,
                                              args.center_freq_hz));
        }
        doc.delay_spreads.push_back(make_ds_row(scenario, profile, ds_values, f_ghz));
      }
    }

    stage = "report";
    fs::create_directories(args.out_dir);
    mmcs::write_file_atomic(fs::path(args.out_dir) / "fit_models.csv",
                            mmcs::model_rows_csv(doc.models));
    mmcs::write_file_atomic(fs::path(args.out_dir) / "fit_ds.csv",
                            mmcs::delay_spread_rows_csv(doc.delay_spreads));
    mmcs::write_file_atomic(fs::path(args.out_dir) / "fit_report.json",
                            mmcs::fit_report_json(doc));
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "fit: " << stage << ": " << e.what() << "\n";
    return exit_code_for(e);
  }
}

// ------------------------------------------------------------------ synth

struct SynthArgs {
  std::string scene_path;
  std::string out_path = "capture.mmw";
  std::string truth_path;  // defaults to out_path + ".truth.json"
  std::string cal_out_path;
};

double scene_number(const json& doc, const char* key, double fallback) {
  if (!doc.contains(key)) return fallback;
  if (!doc.at(key).is_number())
    throw SchemaError(std::string("scene key '") + key + "' must be a number");
  return doc.at(key).get<double>();
}

std::uint64_t scene_count(const json& doc, const char* key, std::uint64_t fallback) {
  if (!doc.contains(key)) return fallback;
  if (!doc.at(key).is_number_unsigned())
    throw SchemaError(std::string("scene key '") + key +
                      "' must be a non-negative integer");
  return doc.at(key).get<std::uint64_t>();
}

std::string scene_string(const json& doc, const char* key, const std::string& fallback) {
  if (!doc.contains(key)) return fallback;
  if (!doc.at(key).is_string())
    throw SchemaError(std::string("scene key '") + key + "' must be a string");
  return doc.at(key).get<std::string>();
}

void check_scene_keys(const json& doc, std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : doc.items()) {
    (void)value;
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* name) {
          return key == name;
        }) == allowed.end())
      throw SchemaError("unknown scene key '" + key + "'");
  }
}

int cmd_synth(const SynthArgs& args) {
  std::string stage = "setup";
  try {
    if (!fs::exists(args.scene_path)) {
      std::cerr << "synth: scene: file not found: " << args.scene_path << "\n";
      return kExitUsage;
    }

    stage = "scene";
    json doc;
    mmcs::SceneSpec spec;
    mmcs::SounderConfig config;
    mmcs::BeamPatternModel pattern;
    mmcs::BeamGrid grid;
    mmcs::LocationMeta meta;
    double noise_sigma2 = 0.0;
    try {
      doc = json::parse(mmcs::read_file(args.scene_path));
      if (!doc.is_object()) throw SchemaError("scene must be a JSON object");
      check_scene_keys(doc, {"n", "p0_db", "shadow_sigma_db", "ds_target_s",
                             "num_paths", "distance_m", "seed", "noise_sigma2",
                             "location_id", "scenario", "grid", "pattern",
                             "center_freq_hz", "num_tones", "tone_spacing_hz",
                             "tx_eirp_dbm", "link_budget_offset_db"});
      spec.n = scene_number(doc, "n", spec.n);
      spec.p0_db = scene_number(doc, "p0_db", spec.p0_db);
      spec.shadow_sigma_db = scene_number(doc, "shadow_sigma_db", spec.shadow_sigma_db);
      spec.ds_target_s = scene_number(doc, "ds_target_s", spec.ds_target_s);
      spec.num_paths = static_cast<std::size_t>(scene_count(doc, "num_paths", 1));
      spec.distance_m = scene_number(doc, "distance_m", spec.distance_m);
      spec.seed = scene_count(doc, "seed", 1);
      noise_sigma2 = scene_number(doc, "noise_sigma2", 0.0);

      config.center_freq_hz = scene_number(doc, "center_freq_hz", config.center_freq_hz);
      config.num_tones = static_cast<int>(scene_count(doc, "num_tones",
                                                      static_cast<std::uint64_t>(config.num_tones)));
      config.tone_spacing_hz = scene_number(doc, "tone_spacing_hz", config.tone_spacing_hz);
      config.tx_eirp_dbm = scene_number(doc, "tx_eirp_dbm", config.tx_eirp_dbm);
      config.link_budget_offset_db =
          scene_number(doc, "link_budget_offset_db", config.link_budget_offset_db);

      const std::string grid_name = scene_string(doc, "grid", "standard");
      if (grid_name == "standard") {
        grid = mmcs::BeamGrid::standard();
        meta.rx_orientation_set = {0.0, 90.0, 180.0, 270.0};
      } else if (grid_name == "sector") {
        grid = mmcs::BeamGrid::sector();
        meta.rx_orientation_set = {0.0};
      } else {
        throw SchemaError("scene key 'grid' must be \"standard\" or \"sector\"");
      }

      if (doc.contains("pattern")) {
        const json& p = doc.at("pattern");
        if (!p.is_object()) throw SchemaError("scene key 'pattern' must be an object");
        check_scene_keys(p, {"azimuth_3db_deg", "sidelobe_floor_db"});
        pattern.azimuth_3db_deg = scene_number(p, "azimuth_3db_deg", pattern.azimuth_3db_deg);
        pattern.sidelobe_floor_db =
            scene_number(p, "sidelobe_floor_db", pattern.sidelobe_floor_db);
      }

      meta.location_id = scene_string(doc, "location_id", "synthetic");
      meta.scenario = mmcs::scenario_from_string(
          scene_string(doc, "scenario", to_string(meta.scenario)));
      meta.tx_rx_distance_m = spec.distance_m;
    } catch (const json::exception& e) {
      std::cerr << "synth: scene: " << e.what() << "\n";
      return kExitUsage;
    } catch (const SchemaError& e) {
      std::cerr << "synth: scene: " << e.what() << "\n";
      return kExitUsage;
    }

    stage = "sampling";
    mmcs::SampledScene scene;
    if (spec.num_paths == 0) {
      // zero-path scenes render pure noise (or an all-zero tensor)
      scene.pl_db = kNan;
      scene.rms_ds_s = kNan;
    } else {
      scene = mmcs::sample_scene(spec, grid, config);
    }

    stage = "render";
    mmcs::MeasurementCapture capture = mmcs::render_capture(
        scene.paths, grid, config, pattern, noise_sigma2, spec.seed);
    capture.meta = meta;

    stage = "output";
    mmcs::save_capture(capture, args.out_path);
    if (!args.cal_out_path.empty())
      mmcs::save_calibration(
          mmcs::unit_calibration(static_cast<std::size_t>(config.num_tones)),
          args.cal_out_path);

    json truth;
    truth["location_id"] = meta.location_id;
    truth["seed"] = spec.seed;
    truth["noise_sigma2"] = noise_sigma2;
    truth["pl_db"] = std::isnan(scene.pl_db) ? json(nullptr) : json(scene.pl_db);
    truth["rms_ds_s"] = std::isnan(scene.rms_ds_s) ? json(nullptr) : json(scene.rms_ds_s);
    truth["paths"] = json::array();
    for (const auto& path : scene.paths) {
      truth["paths"].push_back({{"dod_deg", path.dod_deg},
                                {"doa_deg", path.doa_deg},
                                {"delay_s", path.delay_s},
                                {"gain", path.gain}});
    }
    const std::string truth_text = truth.dump(2) + "\n";
    const fs::path truth_path =
        args.truth_path.empty() ? fs::path(args.out_path + ".truth.json")
                                : fs::path(args.truth_path);
    mmcs::write_file_atomic(truth_path, truth_text);
    std::cout << truth_text;
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "synth: " << stage << ": " << e.what() << "\n";
    return exit_code_for(e);
  }
}

// --------------------------------------------------------------- waveform

struct WaveformArgs {
  std::size_t tones = 801;
  double spacing_hz = 500e3;
  double target_papr_db = 1.0;
  std::size_t max_iterations = 2000;
  std::size_t oversample = 4;
  std::string out_path = "waveform.csv";
};

int cmd_waveform(const WaveformArgs& args) {
  std::string stage = "optimize";
  try {
    mmcs::PhaseOptOptions options;
    options.target_papr_db = args.target_papr_db;
    options.max_iterations = args.max_iterations;
    options.oversample = args.oversample;
    const mmcs::PhaseOptResult result =
        mmcs::optimize_phases(args.tones, args.spacing_hz, options);

    stage = "output";
    std::string csv = "tone_index,amplitude,phase_rad\n";
    for (std::size_t k = 0; k < result.spec.num_tones; ++k) {
      csv += mmcs::format_double(static_cast<double>(k));
      csv += ',';
      csv += mmcs::format_double(result.spec.amplitudes[k]);
      csv += ',';
      csv += mmcs::format_double(result.spec.phases_rad[k]);
      csv += '\n';
    }
    mmcs::write_file_atomic(args.out_path, csv);

    std::cout << "duration_s," << mmcs::format_double(result.spec.duration_s()) << "\n"
              << "papr_db," << mmcs::format_double(result.papr_db) << "\n"
              << "below_target," << (result.below_target ? "true" : "false") << "\n"
              << "iterations," << result.iterations << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "waveform: " << stage << ": " << e.what() << "\n";
    return exit_code_for(e);
  }
}

// ---------------------------------------------------------------- convert

struct ConvertArgs {
  std::string in_path;
  std::string out_path;
};

int cmd_convert(const ConvertArgs& args) {
  std::string stage = "convert";
  try {
    if (!fs::exists(args.in_path)) {
      std::cerr << "convert: input: file not found: " << args.in_path << "\n";
      return kExitUsage;
    }
    if (mmcs::file_has_capture_magic(args.in_path)) {
      const auto capture = mmcs::load_capture(args.in_path);
      mmcs::write_file_atomic(args.out_path, mmcs::capture_to_text(capture));
    } else {
      const auto capture = mmcs::capture_from_text(mmcs::read_file(args.in_path));
      mmcs::save_capture(capture, args.out_path);
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "convert: " << stage << ": " << e.what() << "\n";
    return exit_code_for(e);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mm-wave channel sounder analysis toolkit"};
  app.require_subcommand(1);
  app.config_formatter(std::make_shared<JsonConfig>());
  app.set_config("--config", "", "JSON config file; command line flags override it");
  app.allow_config_extras(true);

  AnalyzeArgs analyze_args;
  CLI::App* analyze =
      app.add_subcommand("analyze", "Process captures into per-location reports");
  analyze->add_option("captures", analyze_args.captures, "Capture files, one per location");
  analyze->add_option("--cal", analyze_args.cal_path, "Calibration file")->required();
  analyze->add_option("--out", analyze_args.out_dir, "Output directory");
  analyze->add_option("--tail-fraction", analyze_args.tail_fraction,
                      "Delay-tail fraction for noise estimation");
  analyze->add_option("--dynamic-range", analyze_args.dynamic_range_db,
                      "Keep MPCs within this many dB of the strongest (0 disables)");
  analyze->add_option("--jobs", analyze_args.jobs, "Parallel workers (0 = all cores)");

  FitArgs fit_args;
  CLI::App* fit = app.add_subcommand("fit", "Fit models across analyzed locations");
  fit->add_option("--locations", fit_args.locations_path, "locations.csv from analyze")
      ->required();
  fit->add_option("--out", fit_args.out_dir, "Output directory");
  fit->add_option("--freq", fit_args.center_freq_hz, "Carrier frequency in Hz");

  SynthArgs synth_args;
  CLI::App* synth = app.add_subcommand("synth", "Render a synthetic scene to a capture");
  synth->add_option("--scene", synth_args.scene_path, "Scene JSON file")->required();
  synth->add_option("--out", synth_args.out_path, "Capture output path");
  synth->add_option("--truth", synth_args.truth_path,
                    "Truth sidecar path (default: <out>.truth.json)");
  synth->add_option("--cal-out", synth_args.cal_out_path,
                    "Also write a matching unit calibration file");

  WaveformArgs waveform_args;
  CLI::App* waveform =
      app.add_subcommand("waveform", "Design a low-PAPR multitone waveform");
  waveform->add_option("--tones", waveform_args.tones, "Number of tones")
      ->check(CLI::PositiveNumber);
  waveform->add_option("--spacing", waveform_args.spacing_hz, "Tone spacing in Hz")
      ->check(CLI::PositiveNumber);
  waveform->add_option("--target-papr", waveform_args.target_papr_db,
                       "Target PAPR in dB");
  waveform->add_option("--max-iters", waveform_args.max_iterations,
                       "Optimizer iteration limit");
  waveform->add_option("--oversample", waveform_args.oversample,
                       "Oversampling factor for PAPR evaluation");
  waveform->add_option("--out", waveform_args.out_path, "Waveform CSV path");

  ConvertArgs convert_args;
  CLI::App* convert =
      app.add_subcommand("convert", "Convert a capture between binary and text");
  convert->add_option("--in", convert_args.in_path, "Input file")->required();
  convert->add_option("--out", convert_args.out_path, "Output file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  if (analyze->parsed()) return cmd_analyze(analyze_args);
  if (fit->parsed()) return cmd_fit(fit_args);
  if (synth->parsed()) return cmd_synth(synth_args);
  if (waveform->parsed()) return cmd_waveform(waveform_args);
  if (convert->parsed()) return cmd_convert(convert_args);
  return kExitUsage;
}
