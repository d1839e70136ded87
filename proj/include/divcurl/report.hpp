#pragma once

#include <span>
#include <string>
#include <vector>

namespace divcurl {

/// One tabulated quantity across an epsilon schedule.
struct ConvergenceSeries {
  std::string label;
  std::vector<double> values;
  double target = 0.0;
  double tolerance = 0.0;
  std::vector<double> gaps;  // |value - target|
  double rate = 0.0;         // log-log slope of gap vs eps; NaN if undetermined
  bool monotone = false;     // gaps non-increasing along the schedule
  bool pass = false;         // final gap <= tolerance
};

struct ConvergenceReport {
  std::vector<double> eps;
  double tolerance = 0.0;  // as configured; series may scale it
  std::vector<ConvergenceSeries> series;

  /// True when every series passes (vacuously true when empty).
  bool pass() const;
};

/// Least-squares slope of log(y) against log(x) over points with y > floor.
/// Returns NaN when fewer than two points qualify.
double fit_loglog_slope(std::span<const double> x, std::span<const double> y,
                        double floor = 0.0);

ConvergenceSeries make_series(std::string label, std::span<const double> eps,
                              std::vector<double> values, double target,
                              double tolerance, double floor = 1e-14);

}  // namespace divcurl
