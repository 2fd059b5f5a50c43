#pragma once

#include <span>
#include <vector>

namespace lnelab {

/// Least-squares line fit of log(y) against log(x).
struct PowerLawFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  double residual_rms = 0.0;
  int points_used = 0;
  bool ok = false;
};

PowerLawFit fit_power_law(std::span<const double> x, std::span<const double> y);

// Drops the largest-x samples while the log-log data is visibly curved
// (lowest-order behaviour not yet dominant at the coarse end), then fits.
// Keeps at least min_points samples.
PowerLawFit fit_power_law_adaptive(std::span<const double> x,
                                   std::span<const double> y,
                                   int min_points = 4,
                                   double curvature_tol = 0.1);

}  // namespace lnelab
