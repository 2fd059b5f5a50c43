#include "lnelab/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "lnelab/rng.hpp"

namespace lnelab::harness {

using variety::ImplicitGerm;
using variety::PolyTerm;
using variety::SampleCloud;
using variety::SparsePolynomial;

namespace {

PolyTerm axis_power(int dim, double coeff, int axis, int power) {
  PolyTerm t;
  t.coeff = coeff;
  t.exponents.assign(dim, 0);
  t.exponents[axis] = power;
  return t;
}

}  // namespace

ImplicitGerm brieskorn_germ(int a, int b, int c, double domain_radius) {
  SparsePolynomial f(3, {axis_power(3, 1, 0, a), axis_power(3, 1, 1, b),
                         axis_power(3, 1, 2, c)});
  return ImplicitGerm::make("brieskorn(" + std::to_string(a) + "," + std::to_string(b) + "," +
                                std::to_string(c) + ")",
                            {f}, Vec::Zero(3), domain_radius);
}

ImplicitGerm horn_germ(int m, int p, int n, double domain_radius) {
  std::vector<PolyTerm> terms;
  for (int i = 0; i < n; ++i) terms.push_back(axis_power(n + 1, 1, i, p));
  terms.push_back(axis_power(n + 1, -1, n, m));
  SparsePolynomial f(n + 1, terms);
  return ImplicitGerm::make("horn(" + std::to_string(m) + "," + std::to_string(p) + "," +
                                std::to_string(n) + ")",
                            {f}, Vec::Zero(n + 1), domain_radius);
}

ImplicitGerm superisolated_germ(double domain_radius) {
  SparsePolynomial f(3, {axis_power(3, 1, 0, 2), axis_power(3, -1, 1, 2),
                         axis_power(3, 1, 2, 3)});
  return ImplicitGerm::make("superisolated", {f}, Vec::Zero(3), domain_radius);
}

ImplicitGerm cusp_cylinder_germ(double domain_radius) {
  SparsePolynomial f(3, {axis_power(3, 1, 1, 2), axis_power(3, -1, 2, 3)});
  return ImplicitGerm::make("cusp_cylinder", {f}, Vec::Zero(3), domain_radius);
}

ImplicitGerm line_germ(double domain_radius) {
  SparsePolynomial fy(3, {axis_power(3, 1, 1, 1)});
  SparsePolynomial fz(3, {axis_power(3, 1, 2, 1)});
  return ImplicitGerm::make("line", {fy, fz}, Vec::Zero(3), domain_radius);
}

ImplicitGerm plane_germ(double domain_radius) {
  SparsePolynomial fz(3, {axis_power(3, 1, 2, 1)});
  return ImplicitGerm::make("plane", {fz}, Vec::Zero(3), domain_radius);
}

ImplicitGerm cone_germ(double domain_radius) {
  SparsePolynomial f(3, {axis_power(3, 1, 0, 2), axis_power(3, 1, 1, 2),
                         axis_power(3, -1, 2, 2)});
  return ImplicitGerm::make("cone", {f}, Vec::Zero(3), domain_radius);
}

double spiral_arc_length(double x1, double x2) {
  if (!(0.0 < x1 && x1 <= x2)) throw std::invalid_argument("spiral_arc_length: need 0 < x1 <= x2");
  constexpr double a = 2.0 * std::numbers::pi;
  auto antiderivative = [&](double x) {
    const double s = std::sqrt(x * x + a * a);
    return s - a * std::log((a + s) / x);
  };
  return antiderivative(x2) - antiderivative(x1);
}

SpiralCloud spiral_cloud(double x_min, double x_max, double rel_spacing) {
  if (!(0.0 < x_min && x_min < x_max))
    throw std::invalid_argument("spiral_cloud: need 0 < x_min < x_max");
  constexpr double two_pi = 2.0 * std::numbers::pi;
  SpiralCloud out;
  out.x_min = x_min;
  out.x_max = x_max;
  std::vector<double> xs;
  double x = x_max;
  while (x > x_min) {
    xs.push_back(x);
    // along-curve speed is sqrt(1 + (2 pi / x)^2)
    const double speed = std::sqrt(1.0 + two_pi * two_pi / (x * x));
    const double dx = rel_spacing * x * x / speed;
    x -= std::max(dx, x * 1e-9);
  }
  xs.push_back(x_min);
  std::reverse(xs.begin(), xs.end());  // vertices ordered inward to outward

  PointMatrix pts(xs.size(), 2);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double theta = two_pi / xs[i];
    pts(i, 0) = xs[i] * std::cos(theta);
    pts(i, 1) = xs[i] * std::sin(theta);
  }
  out.params = std::move(xs);
  out.cloud.points = std::move(pts);
  out.cloud.germ_ref = "spiral";
  out.cloud.scale = x_max;
  out.cloud.kind = variety::CloudKind::ball;
  out.cloud.center = Vec::Zero(2);
  return out;
}

SpiralCloud spiral_cloud_turns(int turns, double rel_spacing) {
  if (turns < 1) throw std::invalid_argument("spiral_cloud_turns: need at least one turn");
  return spiral_cloud(1.0 / (turns + 1), 1.0, rel_spacing);
}

SampleCloud spiral_link_slice(const SpiralCloud& spiral, double t, double band) {
  if (t <= spiral.x_min || t > spiral.x_max)
    throw std::invalid_argument("spiral_link_slice: t outside the sampled range");
  std::vector<int> keep;
  for (std::size_t i = 0; i < spiral.params.size(); ++i)
    if (std::abs(spiral.params[i] - t) <= band * t) keep.push_back(static_cast<int>(i));
  SampleCloud slice;
  slice.points.resize(keep.size(), 2);
  for (std::size_t r = 0; r < keep.size(); ++r)
    slice.points.row(r) = spiral.cloud.points.row(keep[r]);
  slice.germ_ref = "spiral";
  slice.scale = t;
  slice.kind = variety::CloudKind::sphere_slice;
  slice.center = Vec::Zero(2);
  return slice;
}

double horn_y_extent(int j) {
  if (j < 1) throw std::invalid_argument("horn index must be positive");
  // the bound keeps horn j clear of horn j-1; the outermost horn uses the
  // gap towards its inward neighbour
  const long long jj = std::max(j, 2);
  return std::pow(1.0 / (4.0 * jj * (jj - 1)), 2.0 / 3.0);
}

namespace {

// deterministic grid sample of horn j: x^2 + (z - 1/j)^2 = y^3, 0 <= y <= y_max
void sample_horn(int j, double radius, double spacing, std::vector<double>& data) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  const double tip_z = 1.0 / j;
  const double y_max = horn_y_extent(j);
  for (double y = spacing; y <= y_max; y += spacing) {
    const double rho = std::pow(y, 1.5);
    const int n_phi = std::max(1, static_cast<int>(std::ceil(two_pi * rho / spacing)));
    for (int k = 0; k < n_phi; ++k) {
      const double phi = two_pi * k / n_phi;
      const double x = rho * std::cos(phi);
      const double z = tip_z + rho * std::sin(phi);
      if (x * x + y * y + z * z <= radius * radius) {
        data.push_back(x);
        data.push_back(y);
        data.push_back(z);
      }
    }
  }
}

}  // namespace

SampleCloud horns_union_cloud(int J, double radius, double spacing) {
  if (J < 2) throw std::invalid_argument("horns_union needs J >= 2");
  if (spacing <= 0.0 || radius <= 0.0)
    throw std::invalid_argument("horns_union: spacing and radius must be positive");
  std::vector<double> data;
  // the line {x = y = 0}
  for (double z = -radius; z <= radius; z += spacing) {
    data.push_back(0.0);
    data.push_back(0.0);
    data.push_back(z);
  }
  for (int j = 1; j <= J; ++j) sample_horn(j, radius, spacing, data);

  SampleCloud cloud;
  cloud.points.resize(data.size() / 3, 3);
  for (int i = 0; i < cloud.points.rows(); ++i)
    for (int c = 0; c < 3; ++c) cloud.points(i, c) = data[3 * i + c];
  cloud.germ_ref = "horns_union(" + std::to_string(J) + ")";
  cloud.scale = radius;
  cloud.kind = variety::CloudKind::ball;
  cloud.center = Vec::Zero(3);
  return cloud;
}

SampleCloud horns_union_slice(int J, double t, double spacing) {
  if (J < 2) throw std::invalid_argument("horns_union needs J >= 2");
  (void)spacing;
  std::vector<double> data;
  // line points on the sphere of radius t
  data.insert(data.end(), {0.0, 0.0, t});
  data.insert(data.end(), {0.0, 0.0, -t});
  // horn j meets the sphere where x^2 + y^2 + z^2 = t^2; parametrized over y.
  // The sphere through the tip cuts a petal whose y-extent closes where
  // sqrt(y)(1 + y) = 2 tip_z; resolve each petal relative to its own size.
  for (int j = 1; j <= J; ++j) {
    const double tip_z = 1.0 / j;
    const double y_extent = horn_y_extent(j);
    double y_close = 4.0 * tip_z * tip_z;
    for (int it = 0; it < 60; ++it)
      y_close = std::pow(2.0 * tip_z / (1.0 + y_close), 2.0);
    const double y_reach = std::min(y_extent, y_close);
    const double step = y_reach / 350.0;
    for (double y = step; y <= y_reach; y += step) {
      const double rho = std::pow(y, 1.5);
      // sphere constraint: rho^2 + 2 tip_z rho sin(phi) + tip_z^2 + y^2 = t^2
      const double rhs = t * t - y * y - tip_z * tip_z - rho * rho;
      const double s = rhs / (2.0 * tip_z * rho);
      if (std::abs(s) > 1.0) continue;
      const double phi1 = std::asin(s);
      for (double phi : {phi1, std::numbers::pi - phi1}) {
        const double x = rho * std::cos(phi);
        const double z = tip_z + rho * std::sin(phi);
        data.push_back(x);
        data.push_back(y);
        data.push_back(z);
      }
    }
  }
  SampleCloud slice;
  slice.points.resize(data.size() / 3, 3);
  for (int i = 0; i < slice.points.rows(); ++i)
    for (int c = 0; c < 3; ++c) slice.points(i, c) = data[3 * i + c];
  slice.germ_ref = "horns_union(" + std::to_string(J) + ")";
  slice.scale = t;
  slice.kind = variety::CloudKind::sphere_slice;
  slice.center = Vec::Zero(3);
  return slice;
}

std::vector<CorpusEntry> standard_corpus() {
  using G = CorpusEntry::Generator;
  return {
      {"line", G::line, {}, true, false, false, true,
       "a straight line through the basepoint; chords are geodesics"},
      {"plane", G::plane, {}, true, false, false, true,
       "a coordinate plane; inner and outer metrics coincide"},
      {"cone", G::horn, {2, 2, 2}, true, true, false, true,
       "x^2 + y^2 = z^2; two-circle link with positive separation"},
      {"horn", G::horn, {3, 2, 2}, true, true, false, true,
       "x^2 + y^2 = z^3; even-power horn, links are round circles"},
      {"brieskorn233", G::brieskorn, {2, 3, 3}, false, true, false, true,
       "x^2 + y^3 + z^3 = 0; the pair (+-t^(3/2), -t, 0) separates the metrics"},
      {"superisolated", G::superisolated_real, {}, false, false, false, true,
       "x^2 - y^2 + z^3 = 0; ordinary projectivized tangent cone yet not LNE"},
      {"cusp", G::cusp_curve, {}, false, false, false, true,
       "cylinder over y^2 = z^3; branch pair (0, +-t^(3/2), t)"},
      {"spiral", G::spiral, {20}, false, false, true, false,
       "planar spiral x e^(2 pi i / x); every circle slice is a single point, "
       "so the link route is trivially bounded while the germ is not LNE"},
      {"horns_union", G::horns_union, {6}, true, false, true, true,
       "a line with horn tips accumulating at the basepoint; slice constants "
       "at t = 1/j grow with j although the union is LNE"},
  };
}

const CorpusEntry& corpus_entry(const std::string& name) {
  static const std::vector<CorpusEntry> corpus = standard_corpus();
  for (const auto& entry : corpus)
    if (entry.name == name) return entry;
  throw std::invalid_argument("unknown corpus entry: " + name);
}

variety::ImplicitGerm corpus_germ(const CorpusEntry& entry, double domain_radius) {
  using G = CorpusEntry::Generator;
  switch (entry.generator) {
    case G::line: return line_germ(domain_radius);
    case G::plane: return plane_germ(domain_radius);
    case G::brieskorn:
      return brieskorn_germ(entry.int_params.at(0), entry.int_params.at(1),
                            entry.int_params.at(2), domain_radius);
    case G::horn:
      return horn_germ(entry.int_params.at(0), entry.int_params.at(1),
                       entry.int_params.at(2), domain_radius);
    case G::superisolated_real: return superisolated_germ(domain_radius);
    case G::cusp_curve: return cusp_cylinder_germ(domain_radius);
    case G::spiral:
    case G::horns_union:
      throw std::invalid_argument("corpus entry '" + entry.name +
                                  "' is cloud-only, it has no implicit germ");
  }
  throw std::invalid_argument("unknown generator");
}

std::optional<bool> corpus_exact_lne(const CorpusEntry& entry) {
  if (!entry.exact_classifier) return std::nullopt;
  using G = CorpusEntry::Generator;
  if (entry.generator == G::brieskorn) {
    const classify::BrieskornParams p(entry.int_params.at(0), entry.int_params.at(1),
                                      entry.int_params.at(2));
    return classify::classify_brieskorn(p).lne;
  }
  if (entry.generator == G::horn) {
    const classify::HornVerdict v = classify::classify_horn(
        entry.int_params.at(0), entry.int_params.at(1), entry.int_params.at(2));
    if (v.applicable) return v.lne;
  }
  return std::nullopt;
}

double spiral_oracle_constant(const SpiralCloud& spiral) {
  double best = 0.0;
  const auto& xs = spiral.params;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double inner_param = xs[i] / (1.0 + xs[i]);  // one turn inward, same angle
    if (inner_param < xs.front()) continue;
    const auto it = std::lower_bound(xs.begin(), xs.end(), inner_param);
    const std::size_t j = static_cast<std::size_t>(it - xs.begin());
    if (j >= i) continue;
    const double chord =
        (spiral.cloud.points.row(i) - spiral.cloud.points.row(j)).norm();
    if (chord <= 0.0) continue;
    best = std::max(best, spiral_arc_length(xs[j], xs[i]) / chord);
  }
  return best;
}

classify::CrossCheckReport spiral_cross_check(const std::vector<double>& schedule,
                                              std::int64_t pair_budget, std::uint64_t seed) {
  classify::CrossCheckReport report;

  // route A: polyline constants on ball-restricted regenerations; the curve
  // order is recovered by each vertex adopting its single nearest neighbour
  std::vector<double> radii, constants;
  for (std::size_t k = 0; k < schedule.size(); ++k) {
    const double r = schedule[k];
    const SpiralCloud sp = spiral_cloud(r / 6.0, r);
    const geodesy::GeodesicGraph graph =
        geodesy::build_graph(sp.cloud.points, geodesy::ConnectionRule::k_nearest(1));
    const geodesy::LneEstimate est =
        geodesy::lne_constant(graph, pair_budget, mix_seed(seed, k));
    if (!est.defined) continue;
    radii.push_back(r);
    constants.push_back(est.constant);
  }
  report.route_a = classify::classify_trend(std::move(radii), std::move(constants));

  // route B: circle slices of one inward-extended cloud; each is a short
  // connected arc, trivially close to its chord
  const double t_min = schedule.back();
  const SpiralCloud full = spiral_cloud(t_min / 2.0, 1.0);
  linkscan::SliceSweep sweep;
  sweep.germ_ref = "spiral";
  sweep.schedule = schedule;
  for (double t : schedule) {
    const double band = std::min(0.02, 0.15 * t);
    const variety::SampleCloud slice = spiral_link_slice(full, t, band);
    linkscan::SweepRecord rec;
    rec.t = t;
    rec.n_samples = slice.size();
    if (slice.size() >= 2) {
      rec.empty = false;
      const geodesy::ConnectionRule rule = geodesy::curve_rule(slice.points);
      const geodesy::GeodesicGraph graph = geodesy::build_graph(slice.points, rule);
      const geodesy::ComponentPartition parts = geodesy::components(graph);
      rec.n_components = parts.component_count;
      rec.d0 = parts.d0;
      const geodesy::LneEstimate est = geodesy::lne_constant(graph, pair_budget, seed);
      rec.constant = est.defined ? std::max(1.0, est.constant) : 1.0;
      rec.stable = true;  // a polyline arc has no scale to lose
    }
    sweep.records.push_back(rec);
  }
  report.route_b = linkscan::llne_verdict(sweep);

  report.conclusive =
      report.route_a.classification != linkscan::LlneClass::inconclusive &&
      report.route_b.classification != linkscan::LlneClass::inconclusive;
  report.agree = report.conclusive &&
                 report.route_a.classification == report.route_b.classification;
  report.notes =
      "spiral: single-point circle slices keep the link route bounded while the "
      "direct route diverges; the routes are not expected to agree here";
  return report;
}

std::vector<std::pair<double, double>> horns_union_slice_constants(int J, double spacing,
                                                                   std::int64_t pair_budget,
                                                                   std::uint64_t seed) {
  std::vector<std::pair<double, double>> out;
  for (int j = 2; j <= J; ++j) {
    const double t = 1.0 / j;
    const variety::SampleCloud slice = horns_union_slice(J, t, spacing);
    if (slice.size() < 8) continue;
    const geodesy::ConnectionRule rule = geodesy::curve_rule(slice.points, t);
    const geodesy::GeodesicGraph graph = geodesy::build_graph(slice.points, rule);
    const geodesy::ComponentPartition parts = geodesy::components(graph);
    double constant = 1.0;
    for (int label = 0; label < parts.component_count; ++label) {
      const geodesy::GeodesicGraph sub = geodesy::component_subgraph(graph, parts, label);
      if (sub.node_count() < 2) continue;
      const geodesy::LneEstimate est =
          geodesy::lne_constant(sub, pair_budget, mix_seed(seed, j));
      if (est.defined) constant = std::max(constant, est.constant);
    }
    out.push_back({t, constant});
  }
  return out;
}

classify::CrossCheckReport horns_union_cross_check(int J, std::int64_t pair_budget,
                                                   std::uint64_t seed) {
  classify::CrossCheckReport report;

  std::vector<double> radii, constants;
  for (std::size_t k = 0; k < 4; ++k) {
    const double r = 0.9 * std::pow(2.0, -double(k));
    const variety::SampleCloud ball = horns_union_cloud(J, r, r / 60.0);
    const geodesy::GeodesicGraph graph =
        geodesy::build_graph(ball.points, geodesy::default_rule(ball.points, r));
    const geodesy::LneEstimate est =
        geodesy::lne_constant(graph, pair_budget, mix_seed(seed, k));
    if (!est.defined) continue;
    radii.push_back(r);
    constants.push_back(est.constant);
  }
  report.route_a = classify::classify_trend(std::move(radii), std::move(constants));

  linkscan::SliceSweep sweep;
  sweep.germ_ref = "horns_union(" + std::to_string(J) + ")";
  for (const auto& [t, c] : horns_union_slice_constants(J, 0.01, pair_budget, seed)) {
    linkscan::SweepRecord rec;
    rec.t = t;
    rec.empty = false;
    rec.stable = true;
    rec.n_samples = 0;
    rec.n_components = 2;
    rec.constant = c;
    sweep.records.push_back(rec);
    sweep.schedule.push_back(t);
  }
  report.route_b = linkscan::llne_verdict(sweep);
  report.conclusive =
      report.route_a.classification != linkscan::LlneClass::inconclusive &&
      report.route_b.classification != linkscan::LlneClass::inconclusive;
  report.agree = report.conclusive &&
                 report.route_a.classification == report.route_b.classification;
  report.notes =
      "truncated horns union: slice constants at t = 1/j grow with j, so the link "
      "route drifts although the union is well embedded at the basepoint";
  return report;
}

}  // namespace lnelab::harness
