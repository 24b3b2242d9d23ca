// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <span>
#include <vector>

namespace mmcs {

enum class PathLossFamily { CI, ABG };

/// pl(d) = p0_db + 10 * n * log10(d), d in meters, with lognormal shadowing
/// of standard deviation sigma_db around it.
struct PathLossModel {
  PathLossFamily family = PathLossFamily::CI;
  double n = 2.0;
  double p0_db = 0.0;
  double sigma_db = 0.0;
};

struct PathLossSample {
  double distance_m = 0.0;
  double pl_db = 0.0;
};

struct KsResult {
  double statistic = 0.0;
  double p_value = 0.0;
};

/// Fit result plus the residuals and their Gaussian goodness-of-fit. The KS
/// fields are NaN when the residuals are degenerate (n < 3 or zero variance).
struct FitReport {
  PathLossModel model;
  std::size_t sample_count = 0;
  std::vector<double> residuals_db;
  double ks_statistic = 0.0;
  double ks_p = 0.0;
};

/// Free-space path loss at 1 m: 20*log10(4*pi*f/c).
double fspl_reference(double f_hz);

/// Close-in model: p0 fixed at fspl_reference(f_hz), exponent by least squares
/// through that anchor, sigma as the population std of the residuals.
FitReport fit_ci(std::span<const PathLossSample> samples, double f_hz);

/// Floating-intercept model: ordinary least squares on 10*log10(d). Requires
/// at least two distinct distances.
FitReport fit_abg(std::span<const PathLossSample> samples);

/// Model prediction at distance d (meters, > 0).
double predict(const PathLossModel& model, double distance_m);

/// One-sample Kolmogorov-Smirnov test of the residuals against a zero-mean
/// Gaussian. sigma defaults to the maximum-likelihood estimate from the
/// residuals themselves (requires >= 3 residuals, nonzero variance); passing
/// sigma explicitly allows any sample size >= 1. The p-value uses the
/// asymptotic Kolmogorov series at sqrt(n) * D.
KsResult gaussian_ks_test(std::span<const double> residuals,
                          std::optional<double> sigma = std::nullopt);

/// Kolmogorov survival function Q(lambda) = 2 * sum_k (-1)^(k-1) exp(-2 k^2 lambda^2).
double kolmogorov_q(double lambda);

}  // namespace mmcs
