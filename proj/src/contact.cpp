#include "lnelab/contact.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lnelab/regression.hpp"
#include "lnelab/rng.hpp"

namespace lnelab::arcs {

LocalInnerDistance inner_distance_between(const variety::ImplicitGerm& germ, const Vec& a,
                                          const Vec& b, const InnerDistanceParams& params) {
  LocalInnerDistance best;
  const Vec mid = 0.5 * (a + b);
  const double gap = (a - b).norm();
  if (gap == 0.0) {
    best.distance = 0.0;
    best.certified = true;
    return best;
  }
  const double r0 = 0.5 * gap;
  double radius = params.initial_radius_factor * gap;

  for (int esc = 0; esc <= params.max_escalations; ++esc, radius *= params.escalation) {
    if (radius > params.max_radius) break;
    best.escalations = esc;
    best.radius = radius;

    const variety::SampleCloud cloud = variety::sample_ball_at(
        germ, mid, radius, params.cloud_count, mix_seed(params.seed, esc));
    best.cloud_size = cloud.size();
    if (cloud.size() < 16) continue;  // thin locus at this radius, widen

    const geodesy::ConnectionRule rule = geodesy::default_rule(cloud.points, radius);
    const geodesy::GeodesicGraph graph = geodesy::build_graph(cloud.points, rule);
    const int ia = geodesy::nearest_node(cloud.points, a);
    const int ib = geodesy::nearest_node(cloud.points, b);
    best.snap_a = (cloud.point(ia) - a).norm();
    best.snap_b = (cloud.point(ib) - b).norm();

    const double d = geodesy::shortest_paths(graph, ia, ib)[ib];
    if (!std::isfinite(d)) continue;  // endpoints not yet connected locally

    best.distance = d;
    // any path escaping B(mid, radius) is at least 2(radius - r0) long;
    // the rule's epsilon absorbs the discretization slack
    const double margin = 2.0 * rule.epsilon;
    if (d + margin <= 2.0 * (radius - r0)) {
      best.certified = true;
      return best;
    }
  }
  return best;
}

namespace {

void require_on_variety(const variety::ImplicitGerm& germ, const MonomialArc& arc,
                        std::span<const double> ts) {
  for (double t : ts) {
    const Vec x = arc.evaluate(t);
    if (germ.max_residual(x) > germ.residual_tol)
      throw std::invalid_argument("arc leaves the variety at t=" + std::to_string(t));
  }
}

struct RatioSamples {
  std::vector<double> ts, inner, outer;
};

RatioSamples sample_pairs(const variety::ImplicitGerm& germ, const MonomialArc& a,
                          const MonomialArc& b, std::span<const double> t_values,
                          const InnerOrderParams& params) {
  require_on_variety(germ, a, t_values);
  require_on_variety(germ, b, t_values);
  RatioSamples out;
  for (std::size_t i = 0; i < t_values.size(); ++i) {
    const double t = t_values[i];
    const Vec pa = a.evaluate(t);
    const Vec pb = b.evaluate(t);
    InnerDistanceParams local = params.local;
    local.seed = mix_seed(params.local.seed, i);
    const LocalInnerDistance est = inner_distance_between(germ, pa, pb, local);
    if (!std::isfinite(est.distance)) continue;
    if (est.snap_a > params.snap_fraction * t || est.snap_b > params.snap_fraction * t)
      continue;  // sampling error would contaminate the order
    out.ts.push_back(t);
    out.inner.push_back(est.distance);
    out.outer.push_back((pa - pb).norm());
  }
  return out;
}

}  // namespace

OrderEstimate tord_inner(const variety::ImplicitGerm& germ, const MonomialArc& a,
                         const MonomialArc& b, std::span<const double> t_values,
                         const InnerOrderParams& params) {
  if (t_values.size() < 4)
    throw std::invalid_argument("tord_inner needs at least 4 radii");
  const RatioSamples samples = sample_pairs(germ, a, b, t_values, params);
  OrderEstimate est;
  est.method = OrderEstimate::Method::regression;
  if (samples.ts.size() < 4) {
    est.power_law = false;
    return est;
  }
  const PowerLawFit fit = fit_power_law_adaptive(samples.ts, samples.inner);
  est.order = fit.slope;
  est.stderr_ = fit.slope_stderr;
  est.window = {*std::min_element(samples.ts.begin(), samples.ts.end()),
                *std::max_element(samples.ts.begin(), samples.ts.end())};
  est.power_law = fit.ok && fit.residual_rms < 0.15;
  return est;
}

namespace {

MonomialArc brieskorn_item1_arc(int sign, int a, int b) {
  // (sign t^(b/a), -t, 0): sign^a t^b - t^b + 0 = 0 when a is even, b odd
  return MonomialArc({{{double(sign), b, a}}, {{-1.0, 1, 1}}, {}}, 1.0);
}

MonomialArc brieskorn_item2_arc(int sign, int a, int b, int c) {
  // (sign (1/2)^(1/a) t^(c/a), (1/2)^(1/b) t^(c/b), -t):
  // x^a + y^b = t^c/2 + t^c/2 and z^c = -t^c
  const double ca = sign * std::pow(0.5, 1.0 / a);
  const double cb = std::pow(0.5, 1.0 / b);
  return MonomialArc({{{ca, c, a}}, {{cb, c, b}}, {{-1.0, 1, 1}}}, 1.0);
}

}  // namespace

WitnessArcs witness_arcs_brieskorn(int a, int b, int c) {
  if (!(1 <= a && a <= b && b <= c))
    throw std::invalid_argument("witness arcs need 1 <= a <= b <= c");
  const bool a_even = a % 2 == 0;
  const bool b_even = b % 2 == 0;
  const bool c_even = c % 2 == 0;
  if (a_even && !b_even) {
    WitnessArcs w{brieskorn_item1_arc(-1, a, b), brieskorn_item1_arc(+1, a, b),
                  double(b) / a, 1.0, 1.0 - double(b) / a, 1};
    return w;
  }
  if (a_even && b_even && a < b && !c_even) {
    WitnessArcs w{brieskorn_item2_arc(-1, a, b, c), brieskorn_item2_arc(+1, a, b, c),
                  double(c) / a, double(c) / b, double(c) / b - double(c) / a, 2};
    return w;
  }
  throw std::invalid_argument("triple (a,b,c) is LNE; no witness arcs exist");
}

WitnessArcs witness_arcs_superisolated() {
  // (+-t^(3/2), 0, -t) on x^2 - y^2 + z^3: t^3 - 0 - t^3 = 0
  MonomialArc minus({{{-1.0, 3, 2}}, {}, {{-1.0, 1, 1}}}, 1.0);
  MonomialArc plus({{{+1.0, 3, 2}}, {}, {{-1.0, 1, 1}}}, 1.0);
  return {std::move(minus), std::move(plus), 1.5, 1.0, -0.5, 1};
}

WitnessArcs witness_arcs_cusp() {
  // (0, +-t^(3/2), t) on y^2 - z^3
  MonomialArc minus({{}, {{-1.0, 3, 2}}, {{1.0, 1, 1}}}, 1.0);
  MonomialArc plus({{}, {{+1.0, 3, 2}}, {{1.0, 1, 1}}}, 1.0);
  return {std::move(minus), std::move(plus), 1.5, 1.0, -0.5, 1};
}

DirectionProbe probe_direction(const variety::ImplicitGerm& germ, const MonomialArc& a,
                               const MonomialArc& b, std::span<const double> t_values,
                               const InnerOrderParams& params) {
  const Vec va = a.linear_part();
  const Vec vb = b.linear_part();
  if (va.norm() == 0.0 || vb.norm() == 0.0)
    throw std::invalid_argument("probe_direction: arcs need a nonzero linear part");
  if ((va.normalized() - vb.normalized()).norm() > 1e-9)
    throw std::invalid_argument("probe_direction: arcs do not share a direction");

  DirectionProbe probe;
  probe.direction = va.normalized();
  const RatioSamples samples = sample_pairs(germ, a, b, t_values, params);
  std::vector<double> ratios;
  for (std::size_t i = 0; i < samples.ts.size(); ++i) {
    const double r = samples.inner[i] / samples.outer[i];
    probe.ratio_curve.push_back({samples.ts[i], r});
    ratios.push_back(r);
  }
  const PowerLawFit fit = fit_power_law_adaptive(samples.ts, ratios);
  if (fit.ok) {
    probe.divergence_slope = fit.slope;
    probe.slope_stderr = fit.slope_stderr;
    probe.evidence = fit.slope <= -0.2 && std::abs(fit.slope) > 2.0 * fit.slope_stderr;
  }
  return probe;
}

}  // namespace lnelab::arcs
