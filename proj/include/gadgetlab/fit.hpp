#pragma once

#include <span>

namespace gadgetlab {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  double r_squared = 0.0;
  int n_points = 0;
};

// Ordinary least squares y = slope * x + intercept. Needs at least 3 points.
LineFit fit_line(std::span<const double> xs, std::span<const double> ys);

// Fit in log-log coordinates. Points with x <= 0 or y <= floor are dropped first.
LineFit fit_slope(std::span<const double> xs, std::span<const double> ys, double floor = 0.0);

}  // namespace gadgetlab
