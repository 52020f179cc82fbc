#include "gadgetlab/fit.hpp"

#include <cmath>
#include <vector>

#include "gadgetlab/errors.hpp"

namespace gadgetlab {

LineFit fit_line(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw InvalidInput("fit: x and y lengths differ");
  const auto n = static_cast<double>(xs.size());
  if (xs.size() < 3) throw InvalidInput("fit: need at least 3 points");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0.0) throw InvalidInput("fit: x values are all equal");
  LineFit f;
  f.n_points = static_cast<int>(xs.size());
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ssr = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (f.slope * xs[i] + f.intercept);
    ssr += r * r;
  }
  f.slope_stderr = std::sqrt(ssr / (n - 2.0) / sxx);
  f.r_squared = syy > 0.0 ? 1.0 - ssr / syy : 1.0;
  return f;
}

LineFit fit_slope(std::span<const double> xs, std::span<const double> ys, double floor) {
  if (xs.size() != ys.size()) throw InvalidInput("fit: x and y lengths differ");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] > 0.0 && ys[i] > floor && ys[i] > 0.0 && std::isfinite(ys[i])) {
      lx.push_back(std::log(xs[i]));
      ly.push_back(std::log(ys[i]));
    }
  }
  if (lx.size() < 3) throw InvalidInput("fit: fewer than 3 usable points");
  return fit_line(lx, ly);
}

}  // namespace gadgetlab
