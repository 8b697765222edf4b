#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace combtrie {

/// Ordinary least squares y = slope*x + intercept with the coefficient of
/// determination R^2. Two points give R^2 = 1 by convention.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

inline LineFit fit_line(const std::vector<double>& x,
                        const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("fit_line: need >= 2 matched points");
  double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw std::invalid_argument("fit_line: degenerate x");
  LineFit f;
  f.slope = (n * sxy - sx * sy) / denom;
  f.intercept = (sy - f.slope * sx) / n;
  double ss_res = 0, ss_tot = 0, ybar = sy / n;
  for (size_t i = 0; i < x.size(); ++i) {
    double e = y[i] - (f.slope * x[i] + f.intercept);
    ss_res += e * e;
    ss_tot += (y[i] - ybar) * (y[i] - ybar);
  }
  f.r2 = ss_tot == 0.0 ? 1.0 : 1.0 - ss_res / ss_tot;
  return f;
}

/// Mean and standard error of the mean.
struct MeanStderr {
  double mean = 0.0;
  double stderr_ = 0.0;
};

inline MeanStderr mean_stderr(const std::vector<double>& v) {
  if (v.empty()) throw std::invalid_argument("mean_stderr: empty sample");
  double m = 0;
  for (double x : v) m += x;
  m /= static_cast<double>(v.size());
  double var = 0;
  for (double x : v) var += (x - m) * (x - m);
  if (v.size() > 1) var /= static_cast<double>(v.size() - 1);
  return {m, std::sqrt(var / static_cast<double>(v.size()))};
}

}  // namespace combtrie
