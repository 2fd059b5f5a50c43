#include "lnelab/regression.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace lnelab {

namespace {

PowerLawFit fit_logs(const std::vector<double>& lx, const std::vector<double>& ly) {
  PowerLawFit fit;
  const int n = static_cast<int>(lx.size());
  fit.points_used = n;
  if (n < 2) return fit;

  double mx = 0.0, my = 0.0;
  for (int i = 0; i < n; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;

  double sxx = 0.0, sxy = 0.0;
  for (int i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx <= 0.0) return fit;

  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;

  double rss = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r = ly[i] - fit.intercept - fit.slope * lx[i];
    rss += r * r;
  }
  fit.residual_rms = std::sqrt(rss / n);
  fit.slope_stderr = n > 2 ? std::sqrt(rss / (n - 2) / sxx) : 0.0;
  fit.ok = true;
  return fit;
}

// second difference of the log-log data at the coarse end, normalized by span
double coarse_end_curvature(const std::vector<double>& lx, const std::vector<double>& ly) {
  const int n = static_cast<int>(lx.size());
  if (n < 3) return 0.0;
  // samples are kept sorted by x ascending; look at the three largest
  const int i = n - 3, j = n - 2, k = n - 1;
  const double s1 = (ly[j] - ly[i]) / (lx[j] - lx[i]);
  const double s2 = (ly[k] - ly[j]) / (lx[k] - lx[j]);
  return std::abs(s2 - s1);
}

}  // namespace

PowerLawFit fit_power_law(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("fit_power_law: size mismatch");
  std::vector<double> lx, ly;
  lx.reserve(x.size());
  ly.reserve(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > 0.0 && y[i] > 0.0 && std::isfinite(x[i]) && std::isfinite(y[i])) {
      lx.push_back(std::log(x[i]));
      ly.push_back(std::log(y[i]));
    }
  }
  // sort jointly by x
  std::vector<int> order(lx.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return lx[a] < lx[b]; });
  std::vector<double> sx(lx.size()), sy(ly.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    sx[i] = lx[order[i]];
    sy[i] = ly[order[i]];
  }
  return fit_logs(sx, sy);
}

PowerLawFit fit_power_law_adaptive(std::span<const double> x, std::span<const double> y,
                                   int min_points, double curvature_tol) {
  if (x.size() != y.size()) throw std::invalid_argument("fit_power_law_adaptive: size mismatch");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > 0.0 && y[i] > 0.0 && std::isfinite(x[i]) && std::isfinite(y[i])) {
      lx.push_back(std::log(x[i]));
      ly.push_back(std::log(y[i]));
    }
  }
  std::vector<int> order(lx.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return lx[a] < lx[b]; });
  std::vector<double> sx(lx.size()), sy(ly.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    sx[i] = lx[order[i]];
    sy[i] = ly[order[i]];
  }
  while (static_cast<int>(sx.size()) > min_points &&
         coarse_end_curvature(sx, sy) > curvature_tol) {
    sx.pop_back();
    sy.pop_back();
  }
  return fit_logs(sx, sy);
}

}  // namespace lnelab
