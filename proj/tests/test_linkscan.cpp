#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lnelab/corpus.hpp"
#include "lnelab/sweep.hpp"

using namespace lnelab;
using namespace lnelab::linkscan;

namespace {

SliceSweep synthetic_sweep(const std::vector<double>& ts,
                           const std::vector<double>& cs, int components = 1,
                           double d0_over_t = 0.0) {
  SliceSweep sw;
  sw.schedule = ts;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    SweepRecord rec;
    rec.t = ts[i];
    rec.n_samples = 100;
    rec.n_components = components;
    rec.constant = cs[i];
    rec.d0 = components >= 2 ? d0_over_t * ts[i] : geodesy::kNoSeparation;
    rec.stable = true;
    rec.empty = false;
    sw.records.push_back(rec);
  }
  return sw;
}

}  // namespace

TEST_CASE("norm values and gradients") {
  Vec x(3);
  x << 0.3, -0.4, 0.1;
  const auto euclid = NormSpec::euclidean();
  CHECK(euclid.value(x) == doctest::Approx(x.norm()));

  Vec w(3);
  w << 1, 1, 2;
  const auto maxv = NormSpec::max_weighted(w);
  CHECK(maxv.value(x) == doctest::Approx(0.4));
  const Vec g = maxv.gradient(x);
  CHECK(g[1] == doctest::Approx(-1.0));
  CHECK(g[0] == 0.0);

  // max(|x0|, ||(x1,x2)||_4)
  const auto onep = NormSpec::one_p(4, 0);
  const double block = std::pow(std::pow(0.4, 4) + std::pow(0.1, 4), 0.25);
  CHECK(onep.value(x) == doctest::Approx(std::max(0.3, block)));

  // max(||(x0,x1)||_4, |x2|)
  const auto bone = NormSpec::b_one(4, 2);
  const double head = std::pow(std::pow(0.3, 4) + std::pow(0.4, 4), 0.25);
  CHECK(bone.value(x) == doctest::Approx(head));

  CHECK_THROWS_AS(NormSpec::one_p(3, 0), std::invalid_argument);
  CHECK_THROWS_AS(NormSpec::b_one(5, 2), std::invalid_argument);
  Vec bad(2);
  bad << -1.0, 1.0;
  CHECK_THROWS_AS(NormSpec::max_weighted(bad), std::invalid_argument);
}

TEST_CASE("line germ sweeps to two singletons with d0 = 2t") {
  const auto germ = harness::line_germ();
  SweepParams params;
  params.per_slice_count = 40;
  params.min_slice_count = 2;
  const SliceSweep sw = sweep(germ, NormSpec::euclidean(), {0.4, 0.2, 0.1}, params, 3);
  REQUIRE(sw.records.size() == 3);
  for (const auto& rec : sw.records) {
    REQUIRE_FALSE(rec.empty);
    CHECK(rec.n_components == 2);
    CHECK(rec.constant == doctest::Approx(1.0));
    CHECK(rec.d0 == doctest::Approx(2.0 * rec.t).epsilon(1e-4));
  }
  const LlneVerdict v = llne_verdict(sw, {.min_records = 3});
  CHECK(v.classification == LlneClass::bounded);
  CHECK(v.uniform_constant_estimate == doctest::Approx(1.0));
  CHECK(v.separation_K == doctest::Approx(2.0).epsilon(1e-3));
}

TEST_CASE("verdict classification from synthetic records") {
  const std::vector<double> ts = {0.4, 0.2, 0.1, 0.05, 0.025};
  std::vector<double> flat(ts.size(), 2.0);
  CHECK(llne_verdict(synthetic_sweep(ts, flat)).classification == LlneClass::bounded);

  std::vector<double> diverging;
  for (double t : ts) diverging.push_back(1.3 / std::sqrt(t));
  const LlneVerdict dv = llne_verdict(synthetic_sweep(ts, diverging));
  CHECK(dv.classification == LlneClass::diverging);
  CHECK(dv.slope == doctest::Approx(-0.5).epsilon(1e-6));

  // too few stable records
  SliceSweep thin = synthetic_sweep({0.4, 0.2, 0.1}, {2.0, 2.0, 2.0});
  CHECK(llne_verdict(thin).classification == LlneClass::inconclusive);

  // a slope in the dead zone stays inconclusive
  std::vector<double> drifting;
  for (double t : ts) drifting.push_back(std::pow(t, -0.15));
  CHECK(llne_verdict(synthetic_sweep(ts, drifting)).classification ==
        LlneClass::inconclusive);
}

TEST_CASE("verdict is invariant under record reordering") {
  const std::vector<double> ts = {0.4, 0.2, 0.1, 0.05, 0.025};
  std::vector<double> cs;
  for (double t : ts) cs.push_back(1.1 / std::sqrt(t));
  SliceSweep sw = synthetic_sweep(ts, cs, 2, 1.4);
  const LlneVerdict before = llne_verdict(sw);
  std::reverse(sw.records.begin(), sw.records.end());
  const LlneVerdict after = llne_verdict(sw);
  CHECK(before.classification == after.classification);
  CHECK(before.slope == doctest::Approx(after.slope));
  CHECK(before.separation_K == doctest::Approx(after.separation_K));
}

TEST_CASE("homogeneous cone: flat slope and scale-linear separation") {
  const auto germ = harness::cone_germ();
  for (const auto& eq : germ.equations) CHECK(eq.is_homogeneous());
  SweepParams params;
  params.per_slice_count = 700;
  const SliceSweep sw =
      sweep(germ, NormSpec::euclidean(), default_schedule(germ, 5), params, 11);
  const LlneVerdict v = llne_verdict(sw);
  CHECK(v.classification == LlneClass::bounded);
  CHECK(std::abs(v.slope) <= 0.1);
  // d0(X_t) = sqrt(2) t for the two-circle link, so K tracks d0(X_1)
  CHECK(v.separation_K == doctest::Approx(std::sqrt(2.0)).epsilon(0.1));
}

TEST_CASE("slice of x^2 + y^4 + z^5 under the split norm is the z = -t section") {
  const auto germ = harness::brieskorn_germ(2, 4, 5);
  const auto norm = NormSpec::b_one(4, 2);  // max(||(x,y)||_4, |z|)
  const double t = 0.2;
  const auto slice = variety::sample_sphere_slice(germ, norm, t, 300, 41);
  REQUIRE(slice.size() >= 100);
  int on_plane = 0;
  for (int i = 0; i < slice.size(); ++i) {
    const Vec p = slice.point(i);
    if (std::abs(p[2] + t) <= 1e-5) {
      ++on_plane;
      // there x^2 + y^4 = t^5
      CHECK(std::pow(p[0], 2) + std::pow(p[1], 4) ==
            doctest::Approx(std::pow(t, 5)).epsilon(1e-6));
    }
  }
  CHECK(on_plane >= slice.size() * 9 / 10);
}

TEST_CASE("norm invariance on the line germ") {
  const auto germ = harness::line_germ();
  Vec w(3);
  w << 2, 1, 1;
  SweepParams params;
  params.per_slice_count = 30;
  params.min_slice_count = 2;
  const NormAgreement agreement =
      norm_invariance_check(germ, {NormSpec::euclidean(), NormSpec::max_weighted(w)},
                            {0.4, 0.2, 0.1, 0.05}, params, 7);
  CHECK(agreement.conclusive);
  CHECK(agreement.agree);
  for (const auto& v : agreement.verdicts)
    CHECK(v.classification == LlneClass::bounded);
}

TEST_CASE("sections of the even horn along its axis are uniformly round") {
  const auto germ = harness::horn_germ(3, 2, 2);
  Vec w(3);
  w << 0, 0, 1;
  SweepParams params;
  params.per_slice_count = 500;
  const SliceSweep sw = section_sweep(germ, w, {0.4, 0.3, 0.2, 0.15, 0.1}, params, 9);
  const LlneVerdict v = llne_verdict(sw);
  CHECK(v.classification == LlneClass::bounded);
  for (const auto& rec : sw.records) {
    REQUIRE_FALSE(rec.empty);
    CHECK(rec.n_components == 1);
    CHECK(rec.constant <= 2.0);  // circles measure about pi/2
    CHECK(rec.constant >= 1.2);
  }
}

TEST_CASE("sections of a plane clamped to a half-plane are segments") {
  const auto germ = harness::plane_germ();
  Vec w(3);
  w << 1, 0, 0;
  variety::SampleOptions opts;
  opts.projection.lower = Vec(3);
  *opts.projection.lower << 0.0, -1e30, -1e30;  // keep x >= 0
  const auto slice = variety::sample_section_slice(germ, w, 0.3, 200, 17, opts);
  REQUIRE(slice.size() >= 50);
  const auto graph =
      geodesy::build_graph(slice.points, geodesy::default_rule(slice.points));
  const auto est = geodesy::lne_constant(graph, 4'000'000, 3);
  REQUIRE(est.defined);
  CHECK(est.constant == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("cusp cylinder sections never stabilize with resolution") {
  // X = {y^2 = z^3} x R sectioned at x = t: every section is the same cusp
  // curve, whose measured constant keeps growing as the window shrinks
  const auto germ = harness::cusp_cylinder_germ();
  Vec w(3);
  w << 1, 0, 0;
  SweepParams params;
  params.per_slice_count = 900;
  const SliceSweep sw = section_sweep(germ, w, {0.3, 0.2}, params, 13);
  for (const auto& rec : sw.records) {
    REQUIRE_FALSE(rec.empty);
    CHECK(rec.constant >= 2.0);
  }

  // within one section, pairs closer to the cusp vertex distort more:
  // windowed constants grow as the window shrinks
  const auto slice = variety::sample_section_slice(germ, w, 0.25, 1200, 19);
  REQUIRE(slice.size() >= 600);
  std::vector<double> windowed;
  for (double window : {0.4, 0.1}) {
    std::vector<int> keep;
    for (int i = 0; i < slice.size(); ++i)
      if (std::abs(slice.points(i, 2)) <= window) keep.push_back(i);
    PointMatrix pts(keep.size(), 3);
    for (std::size_t r = 0; r < keep.size(); ++r) pts.row(r) = slice.points.row(keep[r]);
    const auto graph = geodesy::build_graph(pts, geodesy::default_rule(pts));
    const auto est = geodesy::lne_constant(graph, 4'000'000, 5);
    REQUIRE(est.defined);
    windowed.push_back(est.constant);
  }
  CHECK(windowed[1] >= 1.4 * windowed[0]);
}
