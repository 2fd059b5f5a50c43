#include "lnelab/classify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "lnelab/regression.hpp"
#include "lnelab/rng.hpp"

namespace lnelab::classify {

BrieskornParams::BrieskornParams(int a_, int b_, int c_) : a(a_), b(b_), c(c_) {
  if (!(1 <= a && a <= b && b <= c))
    throw std::invalid_argument("Brieskorn exponents need 1 <= a <= b <= c");
}

std::string to_string(Clause c) {
  switch (c) {
    case Clause::i: return "i";
    case Clause::ii: return "ii";
    case Clause::iii: return "iii";
    case Clause::n1: return "n1";
    case Clause::n2: return "n2";
  }
  return "?";
}

std::string describe(Clause c) {
  switch (c) {
    case Clause::i:
      return "all exponents even; the only real point is the origin";
    case Clause::ii:
      return "smallest exponent odd; all distortion directions are covered by "
             "bi-Lipschitz coordinate projections";
    case Clause::iii:
      return "two smallest exponents equal and even; the even-cone criterion applies";
    case Clause::n1:
      return "a even and b odd; the pair (+-t^(b/a), -t, 0) has outer contact b/a "
             "but inner contact 1";
    case Clause::n2:
      return "a, b even with a < b and c odd; the slice pair has outer contact c/a "
             "but inner contact c/b";
  }
  return "";
}

ExactVerdict classify_brieskorn(const BrieskornParams& p) {
  ExactVerdict v;
  const bool ae = p.a % 2 == 0, be = p.b % 2 == 0, ce = p.c % 2 == 0;
  if (ae && be && ce) {
    v.lne = true;
    v.clause = Clause::i;
  } else if (!ae) {
    v.lne = true;
    v.clause = Clause::ii;
  } else if (p.a == p.b) {
    v.lne = true;
    v.clause = Clause::iii;
  } else if (!be) {
    v.lne = false;
    v.clause = Clause::n1;
    v.witness = arcs::witness_arcs_brieskorn(p.a, p.b, p.c);
  } else {
    // a, b even, a < b; c odd since clause i did not fire
    v.lne = false;
    v.clause = Clause::n2;
    v.witness = arcs::witness_arcs_brieskorn(p.a, p.b, p.c);
  }
  std::ostringstream os;
  os << "x^" << p.a << " + y^" << p.b << " + z^" << p.c << " = 0: "
     << (v.lne ? "LNE" : "non-LNE") << " (clause " << to_string(v.clause) << ": "
     << describe(v.clause) << ")";
  v.description = os.str();
  return v;
}

HornVerdict classify_horn(int m, int p, int n) {
  HornVerdict v;
  std::ostringstream os;
  if (m < 1 || p < 1 || n < 1) throw std::invalid_argument("horn exponents must be positive");
  if (n < 2 || p % 2 != 0 || p > m) {
    v.applicable = false;
    os << "criterion inapplicable to (m=" << m << ", p=" << p << ", n=" << n
       << "): it needs n >= 2, p even and p <= m";
    v.description = os.str();
    return v;
  }
  v.applicable = true;
  v.lne = true;
  os << "sum of " << n << " even powers p=" << p << " equal to an axis power m=" << m
     << ": LNE" << (m == p ? " (cone case m = p)" : "");
  v.description = os.str();
  return v;
}

std::string to_string(Evidence e) {
  switch (e) {
    case Evidence::lne: return "LNE-evidence";
    case Evidence::not_lne: return "non-LNE-evidence";
    case Evidence::inconclusive: return "inconclusive";
  }
  return "?";
}

ConeCheck cone_lne_check(const variety::SampleCloud& link_cloud, const ConeCheckParams& params,
                         std::uint64_t seed) {
  ConeCheck check;
  if (link_cloud.size() < 2) return check;
  const geodesy::ConnectionRule rule = geodesy::curve_rule(link_cloud.points, 1.0);
  const geodesy::GeodesicGraph graph = geodesy::build_graph(link_cloud.points, rule);
  const geodesy::ComponentPartition parts = geodesy::components(graph);
  check.component_count = parts.component_count;
  check.d0 = parts.d0;

  bool all_finite = true;
  for (int label = 0; label < parts.component_count; ++label) {
    const geodesy::GeodesicGraph sub = geodesy::component_subgraph(graph, parts, label);
    if (sub.node_count() < 2) {
      check.component_constants.push_back(1.0);
      continue;
    }
    const geodesy::LneEstimate est =
        geodesy::lne_constant(sub, params.pair_budget, mix_seed(seed, label));
    check.component_constants.push_back(est.defined ? est.constant : 1.0);
    if (!est.defined || !std::isfinite(est.constant)) all_finite = false;
  }

  const geodesy::StabilityReport stab = geodesy::two_scale_validate(
      link_cloud.points, rule, params.pair_budget, mix_seed(seed, 99), params.stability_factor);
  check.stable = stab.stable;

  const bool separated =
      parts.component_count == 1 || (std::isfinite(parts.d0) && parts.d0 >= params.d0_floor);
  if (!check.stable) {
    check.verdict = Evidence::inconclusive;
  } else if (separated && all_finite) {
    check.verdict = Evidence::lne;
  } else if (!separated) {
    check.verdict = Evidence::not_lne;
  } else {
    check.verdict = Evidence::inconclusive;
  }
  return check;
}

RouteTrend classify_trend(std::vector<double> radii, std::vector<double> constants,
                          const linkscan::VerdictThresholds& thresholds) {
  RouteTrend trend;
  trend.radii = std::move(radii);
  trend.constants = std::move(constants);
  const PowerLawFit fit = fit_power_law(trend.radii, trend.constants);
  if (!fit.ok || static_cast<int>(trend.radii.size()) < thresholds.min_records) {
    trend.classification = linkscan::LlneClass::inconclusive;
    return trend;
  }
  trend.slope = fit.slope;
  trend.slope_stderr = fit.slope_stderr;
  if (std::abs(fit.slope) <= thresholds.bounded_slope &&
      fit.slope_stderr <= thresholds.bounded_stderr) {
    trend.classification = linkscan::LlneClass::bounded;
  } else if (fit.slope <= thresholds.diverging_slope &&
             std::abs(fit.slope) > 2.0 * fit.slope_stderr) {
    trend.classification = linkscan::LlneClass::diverging;
  } else {
    trend.classification = linkscan::LlneClass::inconclusive;
  }
  return trend;
}

CrossCheckReport cross_check_theorem(const variety::ImplicitGerm& germ,
                                     std::vector<double> schedule,
                                     const CrossCheckParams& params, std::uint64_t seed,
                                     std::optional<bool> exact_lne) {
  CrossCheckReport report;
  report.exact_lne = exact_lne;

  // route A: LNE constants of ball clouds over shrinking radii
  std::vector<double> radii, constants;
  for (std::size_t k = 0; k < schedule.size(); ++k) {
    const double r = schedule[k];
    const variety::SampleCloud ball =
        variety::sample_ball(germ, r, params.ball_count, mix_seed(seed, 1000 + k));
    if (ball.size() < params.sweep.min_slice_count) continue;
    const geodesy::GeodesicGraph graph =
        geodesy::build_graph(ball.points, geodesy::default_rule(ball.points, r));
    const geodesy::LneEstimate est =
        geodesy::lne_constant(graph, params.sweep.pair_budget, mix_seed(seed, 2000 + k));
    if (!est.defined) continue;
    radii.push_back(r);
    constants.push_back(est.constant);
  }
  report.route_a = classify_trend(std::move(radii), std::move(constants), params.thresholds);

  // route B: link sweep verdict plus separation
  const linkscan::SliceSweep sw =
      linkscan::sweep(germ, linkscan::NormSpec::euclidean(), schedule, params.sweep, seed);
  report.route_b = linkscan::llne_verdict(sw, params.thresholds);

  const auto cls_a = report.route_a.classification;
  const auto cls_b = report.route_b.classification;
  report.conclusive = cls_a != linkscan::LlneClass::inconclusive &&
                      cls_b != linkscan::LlneClass::inconclusive;
  report.agree = report.conclusive && cls_a == cls_b;

  std::ostringstream notes;
  if (!report.conclusive) notes << "at least one route is inconclusive; ";
  if (report.exact_lne) {
    auto matches = [&](linkscan::LlneClass c) {
      return c == (*report.exact_lne ? linkscan::LlneClass::bounded
                                     : linkscan::LlneClass::diverging);
    };
    report.matches_exact = matches(cls_a) && matches(cls_b);
    if (!report.matches_exact)
      notes << "numerics disagree with the exact verdict; trust the classifier; ";
  }
  report.notes = notes.str();
  return report;
}

}  // namespace lnelab::classify
