// SPDX-License-Identifier: Apache-2.0
#include "mmcs/report.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "mmcs/errors.hpp"

namespace mmcs {

namespace {

void append_field(std::string& out, const std::string& value, bool last) {
  out += value;
  out += last ? '\n' : ',';
}

void append_field(std::string& out, double value, bool last) {
  append_field(out, format_double(value), last);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

double parse_double(const std::string& field) {
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size())
    throw FormatError("location summary: bad numeric field '" + field + "'");
  return value;
}

nlohmann::json nan_to_null(double value) {
  if (std::isnan(value)) return nullptr;
  return value;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw DataError("format_double: conversion failed");
  return std::string(buf, ptr);
}

std::string to_string(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::Directional: return "directional";
    case ProfileKind::Omni: return "omni";
    case ProfileKind::BestBeam: return "best_beam";
  }
  throw DataError("unknown profile kind");
}

std::string to_string(PathLossFamily family) {
  switch (family) {
    case PathLossFamily::CI: return "ci";
    case PathLossFamily::ABG: return "abg";
  }
  throw DataError("unknown path loss family");
}

std::string location_summary_csv(std::span<const LocationSummary> rows) {
  std::string out =
      "location_id,scenario,distance_m,pl_omni_db,pl_dir_db,"
      "rms_ds_omni_s,rms_ds_dir_s\n";
  for (const auto& row : rows) {
    if (row.location_id.find_first_of(",\n") != std::string::npos)
      throw DataError("location id must not contain commas or newlines");
    append_field(out, row.location_id, false);
    append_field(out, to_string(row.scenario), false);
    append_field(out, row.distance_m, false);
    append_field(out, row.pl_omni_db, false);
    append_field(out, row.pl_dir_db, false);
    append_field(out, row.rms_ds_omni_s, false);
    append_field(out, row.rms_ds_dir_s, true);
  }
  return out;
}

std::vector<LocationSummary> parse_location_summary_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) ||
      line != "location_id,scenario,distance_m,pl_omni_db,pl_dir_db,rms_ds_omni_s,rms_ds_dir_s")
    throw FormatError("location summary: missing or unexpected header");
  std::vector<LocationSummary> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 7)
      throw FormatError("location summary: expected 7 fields per row");
    LocationSummary row;
    row.location_id = fields[0];
    row.scenario = scenario_from_string(fields[1]);
    row.distance_m = parse_double(fields[2]);
    row.pl_omni_db = parse_double(fields[3]);
    row.pl_dir_db = parse_double(fields[4]);
    row.rms_ds_omni_s = parse_double(fields[5]);
    row.rms_ds_dir_s = parse_double(fields[6]);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string model_rows_csv(std::span<const ModelFitRow> rows) {
  std::string out =
      "scenario,profile,family,skipped,sample_count,n,p0_db,sigma_db,"
      "ks_statistic,ks_p\n";
  for (const auto& row : rows) {
    append_field(out, to_string(row.scenario), false);
    append_field(out, to_string(row.profile), false);
    append_field(out, to_string(row.family), false);
    append_field(out, row.skipped ? std::string("true") : std::string("false"), false);
    append_field(out, format_double(static_cast<double>(row.sample_count)), false);
    append_field(out, row.model.n, false);
    append_field(out, row.model.p0_db, false);
    append_field(out, row.model.sigma_db, false);
    append_field(out, row.ks_statistic, false);
    append_field(out, row.ks_p, true);
  }
  return out;
}

std::string delay_spread_rows_csv(std::span<const DelaySpreadRow> rows) {
  std::string out =
      "scenario,profile,skipped,sample_count,median_s,mu_log,sigma_log,"
      "ks_p,three_gpp_mu_log\n";
  for (const auto& row : rows) {
    append_field(out, to_string(row.scenario), false);
    append_field(out, to_string(row.profile), false);
    append_field(out, row.skipped ? std::string("true") : std::string("false"), false);
    append_field(out, format_double(static_cast<double>(row.stats.count)), false);
    append_field(out, row.stats.median_s, false);
    append_field(out, row.stats.mu_log, false);
    append_field(out, row.stats.sigma_log, false);
    append_field(out, row.stats.ks_p, false);
    append_field(out, row.three_gpp_mu_log, true);
  }
  return out;
}

std::string fit_report_json(const FitReportDoc& doc) {
  nlohmann::json j;
  j["center_freq_hz"] = doc.center_freq_hz;
  j["three_gpp"] = {{"mu_los_log10s", nan_to_null(doc.three_gpp_mu_los_log)},
                    {"mu_nlos_log10s", nan_to_null(doc.three_gpp_mu_nlos_log)}};
  j["models"] = nlohmann::json::array();
  for (const auto& row : doc.models) {
    j["models"].push_back({{"scenario", to_string(row.scenario)},
                           {"profile", to_string(row.profile)},
                           {"family", to_string(row.family)},
                           {"skipped", row.skipped},
                           {"sample_count", row.sample_count},
                           {"n", nan_to_null(row.model.n)},
                           {"p0_db", nan_to_null(row.model.p0_db)},
                           {"sigma_db", nan_to_null(row.model.sigma_db)},
                           {"ks_statistic", nan_to_null(row.ks_statistic)},
                           {"ks_p", nan_to_null(row.ks_p)}});
  }
  j["delay_spread"] = nlohmann::json::array();
  for (const auto& row : doc.delay_spreads) {
    j["delay_spread"].push_back(
        {{"scenario", to_string(row.scenario)},
         {"profile", to_string(row.profile)},
         {"skipped", row.skipped},
         {"sample_count", row.stats.count},
         {"median_s", nan_to_null(row.stats.median_s)},
         {"mu_log", nan_to_null(row.stats.mu_log)},
         {"sigma_log", nan_to_null(row.stats.sigma_log)},
         {"ks_p", nan_to_null(row.stats.ks_p)},
         {"three_gpp_mu_log", nan_to_null(row.three_gpp_mu_log)}});
  }
  return j.dump(2) + "\n";
}

std::string pdp_csv(const DelayProfile& profile) {
  std::string out = "bin,delay_ns,power\n";
  for (std::size_t i = 0; i < profile.power.size(); ++i) {
    append_field(out, format_double(static_cast<double>(i)), false);
    append_field(out, static_cast<double>(i) * profile.delay_bin_s * 1e9, false);
    append_field(out, profile.power[i], true);
  }
  return out;
}

std::string pas_csv(const AngularSpectrum& spectrum) {
  std::string out = "tx_az_deg,rx_az_deg,power\n";
  for (std::size_t itx = 0; itx < spectrum.grid.tx_count(); ++itx) {
    for (std::size_t irx = 0; irx < spectrum.grid.rx_count(); ++irx) {
      append_field(out, spectrum.grid.tx_azimuths_deg[itx], false);
      append_field(out, spectrum.grid.rx_azimuths_deg[irx], false);
      append_field(out, spectrum.at(itx, irx), true);
    }
  }
  return out;
}

std::string padp_csv(const Padp& padp) {
  std::string out = "az_deg,bin,delay_ns,power\n";
  for (std::size_t ib = 0; ib < padp.beam_azimuths_deg.size(); ++ib) {
    for (std::size_t bin = 0; bin < padp.delay_bins; ++bin) {
      append_field(out, padp.beam_azimuths_deg[ib], false);
      append_field(out, format_double(static_cast<double>(bin)), false);
      append_field(out, static_cast<double>(bin) * padp.delay_bin_s * 1e9, false);
      append_field(out, padp.at(ib, bin), true);
    }
  }
  return out;
}

std::string mpc_csv(std::span<const MultipathComponent> mpcs) {
  std::string out = "dod_deg,doa_deg,delay_ns,gain_db\n";
  for (const auto& m : mpcs) {
    append_field(out, m.dod_deg, false);
    append_field(out, m.doa_deg, false);
    append_field(out, m.delay_s * 1e9, false);
    append_field(out, 10.0 * std::log10(m.gain), true);
  }
  return out;
}

}  // namespace mmcs
