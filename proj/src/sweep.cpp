#include "lnelab/sweep.hpp"

#include <algorithm>
#include <functional>
#include <cmath>
#include <stdexcept>

#include "lnelab/regression.hpp"
#include "lnelab/rng.hpp"

namespace lnelab::linkscan {

namespace {

void check_schedule(const std::vector<double>& schedule, double domain) {
  if (schedule.empty()) throw std::invalid_argument("sweep: empty schedule");
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    if (schedule[i] <= 0.0) throw std::invalid_argument("sweep: radii must be positive");
    if (schedule[i] > domain * (1.0 + 1e-12))
      throw std::invalid_argument("sweep: radius exceeds domain_radius");
    if (i > 0 && schedule[i] >= schedule[i - 1])
      throw std::invalid_argument("sweep: schedule must be strictly decreasing");
  }
}

struct SliceAnalysis {
  int n_components = 0;
  double d0 = geodesy::kNoSeparation;
  std::vector<double> component_constants;
  double constant = 1.0;
};

SliceAnalysis analyze_slice(const PointMatrix& points, const geodesy::ConnectionRule& rule,
                            std::int64_t pair_budget, std::uint64_t seed) {
  SliceAnalysis out;
  const geodesy::GeodesicGraph graph = geodesy::build_graph(points, rule);
  const geodesy::ComponentPartition parts = geodesy::components(graph);
  out.n_components = parts.component_count;
  out.d0 = parts.d0;
  for (int label = 0; label < parts.component_count; ++label) {
    const geodesy::GeodesicGraph sub = geodesy::component_subgraph(graph, parts, label);
    if (sub.node_count() < 2) {
      out.component_constants.push_back(1.0);  // singleton components are trivially fine
      continue;
    }
    const geodesy::LneEstimate est =
        geodesy::lne_constant(sub, pair_budget, mix_seed(seed, 101 + label));
    out.component_constants.push_back(est.defined ? est.constant : 1.0);
  }
  for (double c : out.component_constants) out.constant = std::max(out.constant, c);
  return out;
}

// The stability pass re-samples the slice at double density (the connection
// radius shrinks with the spacing) and requires the constant to hold still.
SweepRecord record_for_slice(const variety::SampleCloud& slice, double t, double rule_scale,
                             const SweepParams& params, std::uint64_t seed,
                             const std::function<variety::SampleCloud()>& resample_denser) {
  SweepRecord rec;
  rec.t = t;
  rec.n_samples = slice.size();
  if (slice.size() < params.min_slice_count) return rec;  // recorded as empty
  rec.empty = false;

  const geodesy::ConnectionRule rule = geodesy::curve_rule(slice.points, rule_scale);
  const SliceAnalysis base = analyze_slice(slice.points, rule, params.pair_budget, seed);
  rec.n_components = base.n_components;
  rec.d0 = base.d0;
  rec.component_constants = base.component_constants;
  rec.constant = base.constant;

  const variety::SampleCloud denser = resample_denser();
  if (denser.size() >= slice.size()) {
    const SliceAnalysis fine =
        analyze_slice(denser.points, geodesy::curve_rule(denser.points, rule_scale),
                      params.pair_budget, mix_seed(seed, 7));
    const double lo = std::min(base.constant, fine.constant);
    const double hi = std::max(base.constant, fine.constant);
    rec.stable = hi <= params.stability_factor * std::max(lo, 1e-300);
  } else {
    rec.stable = true;  // nothing denser to compare against
  }
  return rec;
}

}  // namespace

std::vector<double> default_schedule(const variety::ImplicitGerm& germ, int count) {
  std::vector<double> s;
  const double t0 = germ.domain_radius / 4.0;
  for (int k = 0; k < count; ++k) s.push_back(t0 * std::pow(2.0, -k));
  return s;
}

SliceSweep sweep(const variety::ImplicitGerm& germ, const NormSpec& norm,
                 std::vector<double> schedule, const SweepParams& params,
                 std::uint64_t seed) {
  check_schedule(schedule, germ.domain_radius);
  SliceSweep out;
  out.germ_ref = germ.name;
  out.norm = norm;
  out.schedule = schedule;
  for (std::size_t k = 0; k < schedule.size(); ++k) {
    const double t = schedule[k];
    const std::uint64_t slice_seed = mix_seed(seed, k);
    const variety::LinkSlice slice =
        variety::sample_sphere_slice(germ, norm, t, params.per_slice_count, slice_seed);
    auto denser = [&, t, slice_seed] {
      return variety::sample_sphere_slice(germ, norm, t, 2 * params.per_slice_count,
                                          mix_seed(slice_seed, 777));
    };
    out.records.push_back(record_for_slice(slice, t, t, params, slice_seed, denser));
  }
  return out;
}

SliceSweep section_sweep(const variety::ImplicitGerm& germ, Vec w,
                         std::vector<double> schedule, const SweepParams& params,
                         std::uint64_t seed) {
  check_schedule(schedule, germ.domain_radius);
  SliceSweep out;
  out.germ_ref = germ.name + " | sections";
  out.schedule = schedule;
  for (std::size_t k = 0; k < schedule.size(); ++k) {
    const double t = schedule[k];
    const std::uint64_t slice_seed = mix_seed(seed, k);
    const variety::SampleCloud slice =
        variety::sample_section_slice(germ, w, t, params.per_slice_count, slice_seed);
    auto denser = [&, t, slice_seed] {
      return variety::sample_section_slice(germ, w, t, 2 * params.per_slice_count,
                                           mix_seed(slice_seed, 777));
    };
    // sections extend to the domain boundary, so the radius cap stays off
    out.records.push_back(record_for_slice(slice, t, std::numeric_limits<double>::infinity(),
                                           params, slice_seed, denser));
  }
  return out;
}

std::string to_string(LlneClass c) {
  switch (c) {
    case LlneClass::bounded: return "bounded";
    case LlneClass::diverging: return "diverging";
    case LlneClass::inconclusive: return "inconclusive";
  }
  return "?";
}

LlneVerdict llne_verdict(const SliceSweep& sweep, const VerdictThresholds& thresholds) {
  LlneVerdict v;
  std::vector<double> ts, cs;
  for (const auto& rec : sweep.records) {
    if (rec.empty || !rec.stable) continue;
    ts.push_back(rec.t);
    cs.push_back(rec.constant);
    if (rec.n_components >= 2 && std::isfinite(rec.d0))
      v.separation_K = std::min(v.separation_K, rec.d0 / rec.t);
  }
  v.records_used = static_cast<int>(ts.size());

  const PowerLawFit fit = fit_power_law(ts, cs);
  if (fit.ok) {
    v.slope = fit.slope;
    v.slope_stderr = fit.slope_stderr;
  }
  if (v.records_used < thresholds.min_records || !fit.ok) {
    v.classification = LlneClass::inconclusive;
    return v;
  }
  if (std::abs(v.slope) <= thresholds.bounded_slope &&
      v.slope_stderr <= thresholds.bounded_stderr) {
    v.classification = LlneClass::bounded;
    v.uniform_constant_estimate = *std::max_element(cs.begin(), cs.end());
  } else if (v.slope <= thresholds.diverging_slope &&
             std::abs(v.slope) > 2.0 * v.slope_stderr) {
    v.classification = LlneClass::diverging;
  } else {
    v.classification = LlneClass::inconclusive;
  }
  return v;
}

NormAgreement norm_invariance_check(const variety::ImplicitGerm& germ,
                                    const std::vector<NormSpec>& norms,
                                    std::vector<double> schedule, const SweepParams& params,
                                    std::uint64_t seed) {
  if (norms.size() < 2)
    throw std::invalid_argument("norm_invariance_check needs at least two norms");
  NormAgreement out;
  out.norms = norms;
  for (std::size_t i = 0; i < norms.size(); ++i) {
    const SliceSweep sw = sweep(germ, norms[i], schedule, params, mix_seed(seed, i));
    out.verdicts.push_back(llne_verdict(sw));
  }
  out.conclusive = std::all_of(out.verdicts.begin(), out.verdicts.end(), [](const auto& v) {
    return v.classification != LlneClass::inconclusive;
  });
  out.agree = out.conclusive &&
              std::all_of(out.verdicts.begin(), out.verdicts.end(), [&](const auto& v) {
                return v.classification == out.verdicts.front().classification;
              });
  return out;
}

}  // namespace lnelab::linkscan
