#include "lnelab/arcs.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "lnelab/regression.hpp"

namespace lnelab::arcs {

namespace {

std::pair<long long, long long> reduced(long long num, long long den) {
  if (den <= 0) throw std::invalid_argument("arc exponent denominator must be positive");
  if (num < 0) throw std::invalid_argument("arc exponents must be non-negative");
  const long long g = std::gcd(num, den);
  return {num / g, den / g};
}

}  // namespace

MonomialArc::MonomialArc(std::vector<std::vector<ArcTerm>> components, double domain_max)
    : domain_max_(domain_max) {
  if (components.empty()) throw std::invalid_argument("arc needs at least one coordinate");
  if (domain_max <= 0.0) throw std::invalid_argument("arc domain_max must be positive");
  components_.resize(components.size());
  for (std::size_t c = 0; c < components.size(); ++c) {
    std::map<std::pair<long long, long long>, double> merged;
    for (const auto& t : components[c]) merged[reduced(t.num, t.den)] += t.coeff;
    for (const auto& [e, coeff] : merged)
      if (coeff != 0.0) components_[c].push_back({coeff, e.first, e.second});
  }
}

Vec MonomialArc::evaluate(double t) const {
  if (t < 0.0 || t > domain_max_ * (1.0 + 1e-12))
    throw std::domain_error("arc evaluated outside its domain");
  Vec x = Vec::Zero(ambient_dim());
  for (int c = 0; c < ambient_dim(); ++c)
    for (const auto& term : components_[c]) {
      if (term.num == 0) {
        x[c] += term.coeff;
      } else if (t > 0.0) {
        x[c] += term.coeff * std::pow(t, term.exponent());
      }
    }
  return x;
}

Vec MonomialArc::initial_point() const {
  Vec x = Vec::Zero(ambient_dim());
  for (int c = 0; c < ambient_dim(); ++c)
    for (const auto& term : components_[c])
      if (term.num == 0) x[c] += term.coeff;
  return x;
}

Vec MonomialArc::linear_part() const {
  Vec v = Vec::Zero(ambient_dim());
  for (int c = 0; c < ambient_dim(); ++c)
    for (const auto& term : components_[c])
      if (term.num == term.den) v[c] += term.coeff;
  return v;
}

std::string MonomialArc::to_string() const {
  std::ostringstream os;
  os << "(";
  for (int c = 0; c < ambient_dim(); ++c) {
    if (c) os << ", ";
    if (components_[c].empty()) {
      os << "0";
      continue;
    }
    for (std::size_t k = 0; k < components_[c].size(); ++k) {
      const auto& t = components_[c][k];
      if (k) os << (t.coeff >= 0 ? " + " : " - ");
      else if (t.coeff < 0) os << "-";
      const double a = std::abs(t.coeff);
      if (t.num == 0) {
        os << a;
        continue;
      }
      if (a != 1.0) os << a << " ";
      os << "t";
      if (!(t.num == 1 && t.den == 1)) {
        os << "^";
        if (t.den == 1) os << t.num;
        else os << "(" << t.num << "/" << t.den << ")";
      }
    }
  }
  os << ")";
  return os.str();
}

std::optional<double> symbolic_difference_order(const MonomialArc& a, const MonomialArc& b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw std::invalid_argument("contact order: ambient dimension mismatch");
  double lowest = kInfiniteOrder;
  double coeff_scale = 0.0;
  std::vector<std::map<std::pair<long long, long long>, double>> diff(a.ambient_dim());
  for (int c = 0; c < a.ambient_dim(); ++c) {
    for (const auto& t : a.components()[c]) {
      diff[c][{t.num, t.den}] += t.coeff;
      coeff_scale = std::max(coeff_scale, std::abs(t.coeff));
    }
    for (const auto& t : b.components()[c]) {
      diff[c][{t.num, t.den}] -= t.coeff;
      coeff_scale = std::max(coeff_scale, std::abs(t.coeff));
    }
  }
  // treat numerically annihilated coefficients as canceled
  const double tiny = 1e-12 * std::max(coeff_scale, 1.0);
  for (int c = 0; c < a.ambient_dim(); ++c)
    for (const auto& [e, coeff] : diff[c])
      if (std::abs(coeff) > tiny)
        lowest = std::min(lowest, double(e.first) / double(e.second));
  if (!std::isfinite(lowest)) return std::nullopt;
  return lowest;
}

OrderEstimate tord_outer(const MonomialArc& a, const MonomialArc& b) {
  OrderEstimate est;
  est.method = OrderEstimate::Method::symbolic_exact;
  const auto order = symbolic_difference_order(a, b);
  est.order = order ? *order : kInfiniteOrder;
  return est;
}

namespace {

OrderEstimate order_by_regression(std::span<const double> params,
                                  std::span<const double> values) {
  OrderEstimate est;
  est.method = OrderEstimate::Method::regression;
  const PowerLawFit fit = fit_power_law_adaptive(params, values);
  if (!fit.ok) {
    // nothing survived: identical arcs, report the infinite-order sentinel
    est.order = kInfiniteOrder;
    return est;
  }
  est.order = fit.slope;
  est.stderr_ = fit.slope_stderr;
  est.power_law = fit.residual_rms < 0.15;
  return est;
}

}  // namespace

OrderEstimate tord_outer(const MonomialArc& a, const MonomialArc& b,
                         std::span<const double> t_values) {
  if (t_values.size() < 4)
    throw std::invalid_argument("regression contact order needs at least 4 samples");
  std::vector<double> ts(t_values.begin(), t_values.end());
  std::sort(ts.begin(), ts.end());
  std::vector<double> gaps;
  gaps.reserve(ts.size());
  for (double t : ts) gaps.push_back((a.evaluate(t) - b.evaluate(t)).norm());
  OrderEstimate est = order_by_regression(ts, gaps);
  est.window = {ts.front(), ts.back()};
  return est;
}

OrderEstimate tord_outer_radius_param(const MonomialArc& a, const MonomialArc& b,
                                      std::span<const double> s_values) {
  if (s_values.size() < 4)
    throw std::invalid_argument("regression contact order needs at least 4 samples");
  const Vec origin_a = a.initial_point();
  const Vec origin_b = b.initial_point();

  // invert ||gamma(t) - gamma(0)|| = s by bisection; radius is monotone in t
  // near 0 for monomial arcs
  auto param_at_radius = [](const MonomialArc& arc, const Vec& origin, double s) {
    double lo = 0.0, hi = arc.domain_max();
    if ((arc.evaluate(hi) - origin).norm() < s)
      throw std::domain_error("requested radius beyond the arc's reach");
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      ((arc.evaluate(mid) - origin).norm() < s ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  };

  std::vector<double> ss(s_values.begin(), s_values.end());
  std::sort(ss.begin(), ss.end());
  std::vector<double> gaps;
  gaps.reserve(ss.size());
  for (double s : ss) {
    const double ta = param_at_radius(a, origin_a, s);
    const double tb = param_at_radius(b, origin_b, s);
    gaps.push_back((a.evaluate(ta) - b.evaluate(tb)).norm());
  }
  OrderEstimate est;
  est.method = OrderEstimate::Method::regression;
  // radius corrections decay slowly, so trim the coarse end aggressively
  const PowerLawFit fit = fit_power_law_adaptive(ss, gaps, 4, 0.05);
  if (fit.ok) {
    est.order = fit.slope;
    est.stderr_ = fit.slope_stderr;
    est.power_law = fit.residual_rms < 0.15;
  }
  est.window = {ss.front(), ss.back()};
  return est;
}

}  // namespace lnelab::arcs
