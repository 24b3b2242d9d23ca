// SPDX-License-Identifier: Apache-2.0
#include "mmcs/pathloss.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mmcs/errors.hpp"

namespace mmcs {

namespace {

constexpr double kSpeedOfLight = 299792458.0;

void check_samples(std::span<const PathLossSample> samples) {
  if (samples.empty()) throw DataError("path loss fit: no samples");
  for (const auto& s : samples) {
    if (!(s.distance_m > 0.0) || !std::isfinite(s.distance_m))
      throw DomainError("path loss fit: distances must be positive");
    if (!std::isfinite(s.pl_db))
      throw DataError("path loss fit: non-finite path loss value");
  }
}

double population_std(std::span<const double> values) {
  if (values.empty()) return 0.0;
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / static_cast<double>(values.size()));
}

void attach_ks(FitReport& report) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (report.residuals_db.size() < 3 || !(report.model.sigma_db > 0.0)) {
    report.ks_statistic = nan;
    report.ks_p = nan;
    return;
  }
  KsResult ks = gaussian_ks_test(report.residuals_db);
  report.ks_statistic = ks.statistic;
  report.ks_p = ks.p_value;
}

}  // namespace

double fspl_reference(double f_hz) {
  if (!(f_hz > 0.0) || !std::isfinite(f_hz))
    throw DomainError("fspl_reference: frequency must be positive");
  return 20.0 * std::log10(4.0 * M_PI * f_hz / kSpeedOfLight);
}

FitReport fit_ci(std::span<const PathLossSample> samples, double f_hz) {
  check_samples(samples);
  const double p0 = fspl_reference(f_hz);

  // Least squares through the fixed 1 m anchor: n = sum(A*D) / sum(D^2)
  // with D = 10*log10(d) and A the excess loss over the anchor.
  double sum_ad = 0.0;
  double sum_dd = 0.0;
  for (const auto& s : samples) {
    const double d = 10.0 * std::log10(s.distance_m);
    const double a = s.pl_db - p0;
    sum_ad += a * d;
    sum_dd += d * d;
  }
  if (sum_dd == 0.0)
    throw DegenerateError("fit_ci: all distances at 1 m, exponent undetermined");

  FitReport report;
  report.model.family = PathLossFamily::CI;
  report.model.n = sum_ad / sum_dd;
  report.model.p0_db = p0;
  report.sample_count = samples.size();
  report.residuals_db.reserve(samples.size());
  for (const auto& s : samples)
    report.residuals_db.push_back(s.pl_db - predict(report.model, s.distance_m));
  report.model.sigma_db = population_std(report.residuals_db);
  attach_ks(report);
  return report;
}

FitReport fit_abg(std::span<const PathLossSample> samples) {
  check_samples(samples);

  // Ordinary least squares of pl against 10*log10(d).
  const double count = static_cast<double>(samples.size());
  double sum_x = 0.0, sum_y = 0.0, sum_xx = 0.0, sum_xy = 0.0;
  for (const auto& s : samples) {
    const double x = 10.0 * std::log10(s.distance_m);
    sum_x += x;
    sum_y += s.pl_db;
    sum_xx += x * x;
    sum_xy += x * s.pl_db;
  }
  const double denom = count * sum_xx - sum_x * sum_x;
  if (denom == 0.0)
    throw DegenerateError("fit_abg: needs at least two distinct distances");

  FitReport report;
  report.model.family = PathLossFamily::ABG;
  report.model.n = (count * sum_xy - sum_x * sum_y) / denom;
  report.model.p0_db = (sum_y - report.model.n * sum_x) / count;
  report.sample_count = samples.size();
  report.residuals_db.reserve(samples.size());
  for (const auto& s : samples)
    report.residuals_db.push_back(s.pl_db - predict(report.model, s.distance_m));
  report.model.sigma_db = population_std(report.residuals_db);
  attach_ks(report);
  return report;
}

double predict(const PathLossModel& model, double distance_m) {
  if (!(distance_m > 0.0) || !std::isfinite(distance_m))
    throw DomainError("predict: distance must be positive");
  return model.p0_db + 10.0 * model.n * std::log10(distance_m);
}

KsResult gaussian_ks_test(std::span<const double> residuals,
                          std::optional<double> sigma) {
  if (residuals.empty()) throw DataError("gaussian_ks_test: no residuals");
  for (double r : residuals)
    if (!std::isfinite(r)) throw DataError("gaussian_ks_test: non-finite residual");

  double s;
  if (sigma.has_value()) {
    s = *sigma;
    if (!(s > 0.0) || !std::isfinite(s))
      throw DomainError("gaussian_ks_test: sigma must be positive");
  } else {
    if (residuals.size() < 3)
      throw DataError("gaussian_ks_test: need >= 3 residuals to estimate sigma");
    double ss = 0.0;
    for (double r : residuals) ss += r * r;
    s = std::sqrt(ss / static_cast<double>(residuals.size()));
    if (s == 0.0)
      throw DegenerateError("gaussian_ks_test: residuals have zero variance");
  }

  std::vector<double> sorted(residuals.begin(), residuals.end());
  std::sort(sorted.begin(), sorted.end());

  // D = sup over the sorted sample of the gap between the empirical step
  // function and the hypothesized normal CDF, checked on both step edges.
  const double count = static_cast<double>(sorted.size());
  double d_stat = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double z = sorted[i] / s;
    const double cdf = 0.5 * std::erfc(-z / std::sqrt(2.0));
    const double upper = (static_cast<double>(i) + 1.0) / count - cdf;
    const double lower = cdf - static_cast<double>(i) / count;
    d_stat = std::max({d_stat, upper, lower});
  }

  KsResult result;
  result.statistic = d_stat;
  result.p_value = kolmogorov_q(std::sqrt(count) * d_stat);
  return result;
}

double kolmogorov_q(double lambda) {
  if (!(lambda > 0.0)) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 100; ++k) {
    const double kk = static_cast<double>(k);
    sum += sign * std::exp(-2.0 * kk * kk * lambda * lambda);
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

}  // namespace mmcs
