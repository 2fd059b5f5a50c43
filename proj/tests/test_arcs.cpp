#include <doctest.h>

#include <cmath>

#include "lnelab/contact.hpp"
#include "lnelab/corpus.hpp"
#include "lnelab/rng.hpp"
#include "lnelab/tangent_cone.hpp"

using namespace lnelab;
using namespace lnelab::arcs;

namespace {

MonomialArc planar(double c0, long long n0, long long d0, double c1, long long n1,
                   long long d1) {
  return MonomialArc({{{c0, n0, d0}}, {{c1, n1, d1}}}, 1.0);
}

}  // namespace

TEST_CASE("arc evaluation") {
  const MonomialArc arc = planar(1, 1, 1, 1, 2, 1);  // (t, t^2)
  const Vec x = arc.evaluate(0.5);
  CHECK(x[0] == doctest::Approx(0.5));
  CHECK(x[1] == doctest::Approx(0.25));

  const WitnessArcs w = witness_arcs_superisolated();
  const Vec p = w.arc_plus.evaluate(0.04);  // (t^(3/2), 0, -t)
  CHECK(p[0] == doctest::Approx(0.008));
  CHECK(p[1] == 0.0);
  CHECK(p[2] == doctest::Approx(-0.04));

  const Vec at0 = w.arc_plus.evaluate(0.0);
  CHECK(at0.norm() == 0.0);
  CHECK_THROWS_AS(w.arc_plus.evaluate(2.0), std::domain_error);
  CHECK_THROWS_AS(w.arc_plus.evaluate(-0.1), std::domain_error);
}

TEST_CASE("symbolic outer contact order") {
  const MonomialArc a = planar(1, 1, 1, 0, 0, 1);  // (t, 0)
  const MonomialArc b = planar(1, 1, 1, 1, 2, 1);  // (t, t^2)
  const OrderEstimate exact = tord_outer(a, b);
  CHECK(exact.method == OrderEstimate::Method::symbolic_exact);
  CHECK(exact.order == doctest::Approx(2.0));

  // the pair (+-t^(3/2), -t, 0): the linear parts cancel, t^(3/2) survives
  const WitnessArcs w = witness_arcs_brieskorn(2, 3, 3);
  const OrderEstimate pair = tord_outer(w.arc_minus, w.arc_plus);
  CHECK(pair.order == doctest::Approx(1.5));

  CHECK(std::isinf(tord_outer(a, a).order));
  CHECK(tord_outer(b, a).order == tord_outer(a, b).order);
}

TEST_CASE("regression estimate agrees with the exact order") {
  const WitnessArcs w = witness_arcs_brieskorn(2, 3, 3);
  const std::vector<double> ts = {0.2, 0.1, 0.05, 0.025};
  const OrderEstimate reg = tord_outer(w.arc_minus, w.arc_plus, ts);
  CHECK(reg.method == OrderEstimate::Method::regression);
  CHECK(std::abs(reg.order - 1.5) <= 0.05);
}

TEST_CASE("orders survive reparametrization by distance to the origin") {
  // the order is a limit at radius zero; radius corrections demand a window
  // deeper than the one plain t-regression gets away with
  const std::vector<double> ss = {0.02, 0.014, 0.01, 0.007, 0.005, 0.0035, 0.0025, 0.00125};
  for (auto [a, b, c] : {std::array<int, 3>{2, 3, 3}, std::array<int, 3>{2, 4, 5}}) {
    const WitnessArcs w = witness_arcs_brieskorn(a, b, c);
    const OrderEstimate exact = tord_outer(w.arc_minus, w.arc_plus);
    const OrderEstimate reg = tord_outer_radius_param(w.arc_minus, w.arc_plus, ss);
    CHECK(std::abs(reg.order - exact.order) <= 0.05);
  }
  const WitnessArcs sup = witness_arcs_superisolated();
  const OrderEstimate exact = tord_outer(sup.arc_minus, sup.arc_plus);
  const OrderEstimate reg = tord_outer_radius_param(sup.arc_minus, sup.arc_plus, ss);
  CHECK(std::abs(reg.order - exact.order) <= 0.05);
}

TEST_CASE("brieskorn witness arcs match their clauses") {
  const WitnessArcs w1 = witness_arcs_brieskorn(2, 3, 3);
  CHECK(w1.clause == 1);
  CHECK(w1.outer_order == doctest::Approx(1.5));
  CHECK(w1.inner_order == doctest::Approx(1.0));
  CHECK(w1.ratio_slope == doctest::Approx(-0.5));

  const WitnessArcs w2 = witness_arcs_brieskorn(2, 4, 5);
  CHECK(w2.clause == 2);
  CHECK(w2.outer_order == doctest::Approx(2.5));
  CHECK(w2.inner_order == doctest::Approx(1.25));
  CHECK(w2.ratio_slope == doctest::Approx(-1.25));

  CHECK_THROWS_AS(witness_arcs_brieskorn(3, 4, 5), std::invalid_argument);
  CHECK_THROWS_AS(witness_arcs_brieskorn(2, 2, 4), std::invalid_argument);
}

TEST_CASE("witness arcs lie on their surfaces exactly") {
  const auto check_on = [](const variety::ImplicitGerm& germ, const WitnessArcs& w) {
    for (double t : {0.3, 0.1, 0.01}) {
      CHECK(germ.max_residual(w.arc_minus.evaluate(t)) <= germ.residual_tol);
      CHECK(germ.max_residual(w.arc_plus.evaluate(t)) <= germ.residual_tol);
    }
  };
  check_on(harness::brieskorn_germ(2, 3, 3), witness_arcs_brieskorn(2, 3, 3));
  check_on(harness::brieskorn_germ(2, 4, 5), witness_arcs_brieskorn(2, 4, 5));
  check_on(harness::superisolated_germ(), witness_arcs_superisolated());
  check_on(harness::cusp_cylinder_germ(), witness_arcs_cusp());
}

TEST_CASE("inner contact of a flat pair is the outer contact") {
  // two arcs on the plane z = 0 with difference t^2
  const auto germ = harness::plane_germ(2.0);
  const MonomialArc a({{{1.0, 1, 1}}, {}, {}}, 1.0);             // (t, 0, 0)
  const MonomialArc b({{{1.0, 1, 1}}, {{1.0, 2, 1}}, {}}, 1.0);  // (t, t^2, 0)
  const std::vector<double> ts = {0.4, 0.3, 0.2, 0.15, 0.1};
  InnerOrderParams params;
  params.local.cloud_count = 4000;
  params.local.seed = 5;
  const OrderEstimate est = tord_inner(germ, a, b, ts, params);
  CHECK(std::abs(est.order - 2.0) <= 0.25);
}

TEST_CASE("tord_inner rejects arcs off the variety") {
  const auto germ = harness::plane_germ(2.0);
  const MonomialArc off({{{1.0, 1, 1}}, {}, {{1.0, 1, 1}}}, 1.0);  // (t, 0, t)
  const MonomialArc on({{{1.0, 1, 1}}, {}, {}}, 1.0);
  const std::vector<double> ts = {0.4, 0.3, 0.2, 0.1};
  InnerOrderParams params;
  CHECK_THROWS_AS(tord_inner(germ, off, on, ts, params), std::invalid_argument);
}

TEST_CASE("probe_direction requires a shared direction and flags divergence") {
  const auto germ = harness::plane_germ(2.0);
  const MonomialArc a({{{1.0, 1, 1}}, {}, {}}, 1.0);
  const MonomialArc b({{{1.0, 1, 1}}, {{1.0, 2, 1}}, {}}, 1.0);
  const std::vector<double> ts = {0.4, 0.3, 0.2, 0.15, 0.1};
  InnerOrderParams params;
  params.local.cloud_count = 3000;
  const DirectionProbe flat = probe_direction(germ, a, b, ts, params);
  CHECK_FALSE(flat.evidence);
  CHECK(std::abs(flat.divergence_slope) <= 0.15);

  const MonomialArc other({{}, {{1.0, 1, 1}}, {}}, 1.0);  // direction e2
  CHECK_THROWS_AS(probe_direction(germ, a, other, ts, params), std::invalid_argument);
}

TEST_CASE("hausdorff distance basics and metric behaviour") {
  PointMatrix a(1, 2), b(1, 2);
  a << 0, 0;
  b << 3, 4;
  CHECK(hausdorff_distance(a, a) == 0.0);
  CHECK(hausdorff_distance(a, b) == doctest::Approx(5.0));
  CHECK_THROWS_AS(hausdorff_distance(PointMatrix(0, 2), b), std::invalid_argument);

  Rng rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    auto sample = [&](int n) {
      PointMatrix m(n, 2);
      for (int i = 0; i < n; ++i) m.row(i) << rng.uniform(), rng.uniform();
      return m;
    };
    const PointMatrix x = sample(6), y = sample(5), z = sample(7);
    const double dxy = hausdorff_distance(x, y);
    const double dyx = hausdorff_distance(y, x);
    CHECK(dxy == dyx);
    CHECK(dxy <= hausdorff_distance(x, z) + hausdorff_distance(z, y) + 1e-12);
  }
}

TEST_CASE("shifted circle clouds sit at the shift in hausdorff distance") {
  const int n = 256;
  PointMatrix a(n, 2), b(n, 2);
  for (int i = 0; i < n; ++i) {
    const double t = 2.0 * 3.14159265358979 * i / n;
    a.row(i) << std::cos(t), std::sin(t);
    b.row(i) << std::cos(t) + 0.1, std::sin(t);
  }
  const double spacing = 2.0 * 3.14159265358979 / n;
  const double d = hausdorff_distance(a, b);
  CHECK(d >= 0.1 - 1e-9);
  CHECK(d <= 0.1 + spacing);
}

TEST_CASE("rescaled links of a cone are stationary") {
  const auto germ = harness::cone_germ();
  const std::vector<double> ts = {0.4, 0.2, 0.1};
  const TangentConeSample tc = tangent_cone_sample(germ, ts, 500, 23);
  REQUIRE(tc.hausdorff_steps.size() == 2);
  for (double h : tc.hausdorff_steps) CHECK(h <= 0.1);  // sampling noise only
}

TEST_CASE("rescaled links of the even horn collapse to the pole") {
  const auto germ = harness::horn_germ(3, 2, 2);
  const std::vector<double> ts = {0.4, 0.2, 0.1, 0.05};
  const TangentConeSample tc = tangent_cone_sample(germ, ts, 400, 29);
  // u_x^2 + u_y^2 = t u_z^3 concentrates at (0, 0, 1)
  const PointMatrix& last = tc.rescaled.back();
  double worst = 0.0;
  for (int i = 0; i < last.rows(); ++i) {
    Vec u = last.row(i).transpose();
    u[2] -= 1.0;
    worst = std::max(worst, u.norm());
  }
  CHECK(worst <= 0.4);
  CHECK(tc.hausdorff_steps.back() <= tc.hausdorff_steps.front() + 0.05);
}
