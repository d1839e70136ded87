#include "divcurl/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace divcurl {

bool ConvergenceReport::pass() const {
  return std::all_of(series.begin(), series.end(),
                     [](const ConvergenceSeries& s) { return s.pass; });
}

double fit_loglog_slope(std::span<const double> x, std::span<const double> y,
                        double floor) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("fit_loglog_slope: size mismatch");
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int m = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(y[i] > floor) || !(x[i] > 0.0)) continue;
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++m;
  }
  if (m < 2) return std::numeric_limits<double>::quiet_NaN();
  const double denom = m * sxx - sx * sx;
  if (denom == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return (m * sxy - sx * sy) / denom;
}

ConvergenceSeries make_series(std::string label, std::span<const double> eps,
                              std::vector<double> values, double target,
                              double tolerance, double floor) {
  if (values.size() != eps.size()) {
    throw std::invalid_argument("make_series: one value per epsilon required");
  }
  ConvergenceSeries s;
  s.label = std::move(label);
  s.target = target;
  s.tolerance = tolerance;
  s.values = std::move(values);
  s.gaps.reserve(s.values.size());
  for (double v : s.values) s.gaps.push_back(std::abs(v - target));
  s.rate = fit_loglog_slope(eps, s.gaps, floor);
  s.monotone = true;
  for (std::size_t i = 1; i < s.gaps.size(); ++i) {
    if (s.gaps[i] > s.gaps[i - 1] && s.gaps[i] > floor) s.monotone = false;
  }
  s.pass = s.gaps.empty() || s.gaps.back() <= tolerance;
  return s;
}

}  // namespace divcurl
