// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <string>
#include <vector>

#include "mmcs/beam.hpp"
#include "mmcs/capture.hpp"
#include "mmcs/delay_stats.hpp"
#include "mmcs/mpc.hpp"
#include "mmcs/pathloss.hpp"

namespace mmcs {

/// Per-location analysis results aggregated across a measurement campaign.
struct LocationSummary {
  std::string location_id;
  Scenario scenario = Scenario::Street28;
  double distance_m = 0.0;
  double pl_omni_db = 0.0;
  double pl_dir_db = 0.0;
  double rms_ds_omni_s = 0.0;
  double rms_ds_dir_s = 0.0;
};

/// Columns: location_id,scenario,distance_m,pl_omni_db,pl_dir_db,
/// rms_ds_omni_s,rms_ds_dir_s.
std::string location_summary_csv(std::span<const LocationSummary> rows);
std::vector<LocationSummary> parse_location_summary_csv(const std::string& text);

/// One fitted path-loss model row of the cross-location report. Rows for a
/// scenario without enough locations are kept but marked skipped, with all
/// numeric fields NaN.
struct ModelFitRow {
  Scenario scenario = Scenario::Street28;
  ProfileKind profile = ProfileKind::Omni;
  PathLossFamily family = PathLossFamily::CI;
  bool skipped = false;
  std::size_t sample_count = 0;
  PathLossModel model;
  double ks_statistic = 0.0;
  double ks_p = 0.0;
};

struct DelaySpreadRow {
  Scenario scenario = Scenario::Street28;
  ProfileKind profile = ProfileKind::Omni;
  bool skipped = false;
  DelaySpreadStats stats;
  /// Reference lognormal mu for this scenario's 3GPP counterpart.
  double three_gpp_mu_log = 0.0;
};

struct FitReportDoc {
  double center_freq_hz = 0.0;
  double three_gpp_mu_los_log = 0.0;
  double three_gpp_mu_nlos_log = 0.0;
  std::vector<ModelFitRow> models;
  std::vector<DelaySpreadRow> delay_spreads;
};

/// Columns: scenario,profile,family,skipped,sample_count,n,p0_db,sigma_db,
/// ks_statistic,ks_p.
std::string model_rows_csv(std::span<const ModelFitRow> rows);

/// Columns: scenario,profile,skipped,sample_count,median_s,mu_log,sigma_log,
/// ks_p,three_gpp_mu_log.
std::string delay_spread_rows_csv(std::span<const DelaySpreadRow> rows);

/// Whole fit report as a JSON document; NaN fields serialize as null.
std::string fit_report_json(const FitReportDoc& doc);

/// Columns: bin,delay_ns,power.
std::string pdp_csv(const DelayProfile& profile);

/// Columns: tx_az_deg,rx_az_deg,power.
std::string pas_csv(const AngularSpectrum& spectrum);

/// Columns: az_deg,bin,delay_ns,power.
std::string padp_csv(const Padp& padp);

/// Columns: dod_deg,doa_deg,delay_ns,gain_db.
std::string mpc_csv(std::span<const MultipathComponent> mpcs);

/// Shortest decimal form that parses back to the same double.
std::string format_double(double value);

std::string to_string(ProfileKind kind);
std::string to_string(PathLossFamily family);

}  // namespace mmcs
