#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lnelab/corpus.hpp"
#include "lnelab/lne.hpp"
#include "lnelab/rng.hpp"
#include "lnelab/sampling.hpp"
#include "oracles.hpp"

using namespace lnelab;
using namespace lnelab::geodesy;

namespace {

PointMatrix collinear(int n, double spacing) {
  PointMatrix pts(n, 2);
  for (int i = 0; i < n; ++i) {
    pts(i, 0) = i * spacing;
    pts(i, 1) = 0.0;
  }
  return pts;
}

// both branches of y^2 = z^3 as a polyline through the origin, z in [0, z_max]
PointMatrix cusp_branches(double z_max, double dz) {
  std::vector<double> zs;
  for (double z = dz; z <= z_max + 1e-12; z += dz) zs.push_back(z);
  PointMatrix pts(2 * zs.size() + 1, 2);
  pts.row(0) << 0.0, 0.0;
  for (std::size_t i = 0; i < zs.size(); ++i) {
    const double y = std::pow(zs[i], 1.5);
    pts.row(1 + 2 * i) << y, zs[i];
    pts.row(2 + 2 * i) << -y, zs[i];
  }
  return pts;
}

}  // namespace

TEST_CASE("epsilon rule connects exactly what it should") {
  const PointMatrix pts = collinear(3, 0.1);
  const GeodesicGraph path = build_graph(pts, ConnectionRule::epsilon_ball(0.15));
  CHECK(path.edge_count() == 2);
  CHECK(path.degree(1) == 2);

  const GeodesicGraph edgeless = build_graph(pts, ConnectionRule::epsilon_ball(0.05));
  CHECK(edgeless.edge_count() == 0);
}

TEST_CASE("k_nearest(2) on a circle gives a single cycle") {
  const PointMatrix pts = testing::circle_points(100);
  const GeodesicGraph graph = build_graph(pts, ConnectionRule::k_nearest(2));
  for (int i = 0; i < graph.node_count(); ++i) CHECK(graph.degree(i) == 2);
  const ComponentPartition parts = components(graph);
  CHECK(parts.component_count == 1);
}

TEST_CASE("shortest path length along a path graph") {
  const PointMatrix pts = collinear(3, 1.0);
  const GeodesicGraph graph = build_graph(pts, ConnectionRule::epsilon_ball(1.5));
  CHECK(inner_distance(graph, 0, 2) == doctest::Approx(2.0));
  CHECK(inner_distance(graph, 1, 1) == 0.0);
}

TEST_CASE("inner distance equals the brute-force oracle on tiny clouds") {
  Rng rng(404);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 4 + static_cast<int>(rng.uniform() * 7);
    PointMatrix pts(n, 2);
    for (int i = 0; i < n; ++i) {
      pts(i, 0) = rng.uniform();
      pts(i, 1) = rng.uniform();
    }
    const GeodesicGraph graph =
        build_graph(pts, ConnectionRule::epsilon_ball(0.3 + 0.4 * rng.uniform()));
    const int src = static_cast<int>(rng.uniform() * n) % n;
    const int dst = static_cast<int>(rng.uniform() * n) % n;
    const double via_dijkstra = inner_distance(graph, src, dst);
    const double via_brute = testing::brute_force_inner_distance(graph, src, dst);
    if (std::isinf(via_brute)) {
      CHECK(std::isinf(via_dijkstra));
    } else {
      CHECK(via_dijkstra == via_brute);  // exact, same accumulation order
    }
  }
}

TEST_CASE("components and d0 of two separated clusters") {
  PointMatrix pts(8, 2);
  for (int i = 0; i < 4; ++i) pts.row(i) << 0.05 * i, 0.0;
  for (int i = 0; i < 4; ++i) pts.row(4 + i) << 0.15 + 0.3 + 0.05 * i, 0.0;
  const GeodesicGraph graph = build_graph(pts, ConnectionRule::epsilon_ball(0.1));
  const ComponentPartition parts = components(graph);
  CHECK(parts.component_count == 2);
  CHECK(parts.d0 == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("a cycle is one component with the no-separation sentinel") {
  const GeodesicGraph graph =
      build_graph(testing::circle_points(60), ConnectionRule::k_nearest(2));
  const ComponentPartition parts = components(graph);
  CHECK(parts.component_count == 1);
  CHECK(std::isinf(parts.d0));
}

TEST_CASE("cone slice splits into two circles separated by 2t/sqrt(2)") {
  const auto germ = harness::cone_germ();
  const auto slice =
      variety::sample_sphere_slice(germ, linkscan::NormSpec::euclidean(), 0.3, 600, 21);
  REQUIRE(slice.size() >= 300);
  const GeodesicGraph graph =
      build_graph(slice.points, curve_rule(slice.points, slice.scale));
  const ComponentPartition parts = components(graph);
  CHECK(parts.component_count == 2);
  CHECK(parts.d0 == doctest::Approx(2.0 * 0.3 / std::sqrt(2.0)).epsilon(0.02));
}

TEST_CASE("straight segments have constant 1") {
  const PointMatrix pts = collinear(60, 0.01);
  const GeodesicGraph graph = build_graph(pts, ConnectionRule::epsilon_ball(0.015));
  const LneEstimate est = lne_constant(graph, 4'000'000, 1);
  REQUIRE(est.defined);
  CHECK(est.constant == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("cusp branches distort by about z_min^(-1/2)") {
  // branches meet only through the region near the origin; the witness pairs
  // sit at the small-z end of the window
  const PointMatrix pts = cusp_branches(0.2, 0.002);
  const GeodesicGraph graph = build_graph(pts, ConnectionRule::epsilon_ball(0.008));
  const ComponentPartition parts = components(graph);
  REQUIRE(parts.component_count == 1);
  const LneEstimate est = lne_constant(graph, 4'000'000, 2);
  REQUIRE(est.defined);
  const double z_min = 0.05;  // inner/outer = 2z / 2z^(3/2) at the window edge
  const double predicted = 1.0 / std::sqrt(z_min);
  CHECK(est.constant >= 0.5 * predicted);
  CHECK(est.constant <= 2.0 * predicted);
}

TEST_CASE("circle constant approaches pi/2 with density") {
  const double target = std::numbers::pi / 2.0;
  double err_coarse = 0.0, err_fine = 0.0;
  for (int n : {200, 800}) {
    const GeodesicGraph graph =
        build_graph(testing::circle_points(n), ConnectionRule::k_nearest(2));
    const LneEstimate est = lne_constant(graph, 4'000'000, 3);
    REQUIRE(est.defined);
    (n == 200 ? err_coarse : err_fine) = std::abs(est.constant - target);
  }
  CHECK(err_fine <= err_coarse);
  CHECK(err_fine <= 0.05 * target);
}

TEST_CASE("inner distance dominates the chord on random pairs") {
  const auto germ = harness::brieskorn_germ(2, 3, 3);
  const auto cloud = variety::sample_ball(germ, 0.4, 800, 31);
  const GeodesicGraph graph =
      build_graph(cloud.points, default_rule(cloud.points, 0.4));
  Rng rng(17);
  const ComponentPartition parts = components(graph);
  for (int k = 0; k < 200; ++k) {
    const int i = static_cast<int>(rng.uniform() * graph.node_count());
    const int j = static_cast<int>(rng.uniform() * graph.node_count());
    if (i == j || parts.labels[i] != parts.labels[j]) continue;
    const double inner = inner_distance(graph, i, j);
    const double outer = (graph.node_points.row(i) - graph.node_points.row(j)).norm();
    CHECK(inner >= outer * (1.0 - 1e-12));
  }
}

TEST_CASE("constant is invariant under uniform scaling and rotation") {
  const PointMatrix base = cusp_branches(0.2, 0.004);
  const ConnectionRule rule = ConnectionRule::epsilon_ball(0.01);
  const double c0 = lne_constant(build_graph(base, rule), 4'000'000, 5).constant;

  PointMatrix scaled = base * 3.7;
  const ConnectionRule scaled_rule = ConnectionRule::epsilon_ball(0.01 * 3.7);
  const double c1 = lne_constant(build_graph(scaled, scaled_rule), 4'000'000, 5).constant;
  CHECK(c1 == doctest::Approx(c0).epsilon(1e-9));

  const double theta = 0.83;
  Eigen::Matrix2d rot;
  rot << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  PointMatrix rotated = base * rot.transpose();
  const double c2 = lne_constant(build_graph(rotated, rule), 4'000'000, 5).constant;
  CHECK(c2 == doctest::Approx(c0).epsilon(1e-9));
}

TEST_CASE("d0 is symmetric and permutation invariant") {
  Rng rng(88);
  PointMatrix pts(40, 2);
  for (int i = 0; i < 20; ++i) pts.row(i) << rng.uniform(), rng.uniform();
  for (int i = 20; i < 40; ++i) pts.row(i) << 5.0 + rng.uniform(), rng.uniform();
  const ConnectionRule rule = ConnectionRule::epsilon_ball(0.8);
  const double d0 = components(build_graph(pts, rule)).d0;

  PointMatrix shuffled = pts;
  for (int i = 39; i > 0; --i) {
    const int j = static_cast<int>(rng.uniform() * (i + 1));
    shuffled.row(i).swap(shuffled.row(j));
  }
  CHECK(components(build_graph(shuffled, rule)).d0 == d0);
}

TEST_CASE("two-scale validation accepts clean geometry and flags shortcuts") {
  const PointMatrix segment = collinear(80, 0.01);
  const StabilityReport seg =
      two_scale_validate(segment, ConnectionRule::epsilon_ball(0.015));
  CHECK(seg.stable);

  // branches sampled away from the origin, connected only by edges jumping
  // the inter-branch gap: refining the radius exposes the fake connection
  std::vector<double> zs;
  for (double z = 0.05; z <= 0.2 + 1e-12; z += 0.004) zs.push_back(z);
  PointMatrix window(2 * zs.size(), 2);
  for (std::size_t i = 0; i < zs.size(); ++i) {
    const double y = std::pow(zs[i], 1.5);
    window.row(2 * i) << y, zs[i];
    window.row(2 * i + 1) << -y, zs[i];
  }
  const StabilityReport bad =
      two_scale_validate(window, ConnectionRule::epsilon_ball(0.03));
  CHECK_FALSE(bad.stable);

  const StabilityReport good = two_scale_validate(
      testing::circle_points(400), ConnectionRule::epsilon_ball(0.05));
  CHECK(good.stable);
}
