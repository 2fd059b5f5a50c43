#include "lnelab/lne.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "lnelab/rng.hpp"

namespace lnelab::geodesy {

namespace {

struct Best {
  double ratio = 0.0;
  int a = -1, b = -1;
  std::int64_t examined = 0;

  void consider(double r, int i, int j) {
    ++examined;
    if (r > ratio) {
      ratio = r;
      a = i;
      b = j;
    }
  }
};

void scan_from_source(const GeodesicGraph& graph, const ComponentPartition& parts,
                      int source, Best& best) {
  const std::vector<double> dist = shortest_paths(graph, source);
  const int n = graph.node_count();
  for (int j = 0; j < n; ++j) {
    if (j == source || parts.labels[j] != parts.labels[source]) continue;
    const double outer = (graph.node_points.row(j) - graph.node_points.row(source)).norm();
    if (outer <= 0.0 || !std::isfinite(dist[j])) continue;
    best.consider(dist[j] / outer, source, j);
  }
}

// 5th percentile of pairwise distances, estimated from a seeded pair sample
double near_pair_threshold(const GeodesicGraph& graph, Rng& rng) {
  const int n = graph.node_count();
  const std::int64_t samples = std::min<std::int64_t>(200'000, std::int64_t(n) * (n - 1) / 2);
  std::vector<double> d;
  d.reserve(samples);
  for (std::int64_t s = 0; s < samples; ++s) {
    const int i = static_cast<int>(rng.uniform() * n);
    const int j = static_cast<int>(rng.uniform() * n);
    if (i == j || i >= n || j >= n) continue;
    d.push_back((graph.node_points.row(i) - graph.node_points.row(j)).norm());
  }
  if (d.empty()) return 0.0;
  const std::size_t q = d.size() / 20;
  std::nth_element(d.begin(), d.begin() + q, d.end());
  return d[q];
}

}  // namespace

LneEstimate lne_constant(const GeodesicGraph& graph, std::int64_t pair_budget,
                         std::uint64_t seed) {
  const int n = graph.node_count();
  LneEstimate est;
  if (n < 2) return est;
  const ComponentPartition parts = components(graph);
  Best best;

  if (std::int64_t(n) * n <= pair_budget) {
    for (int i = 0; i < n; ++i) scan_from_source(graph, parts, i, best);
  } else {
    Rng rng(seed);
    std::unordered_set<int> sources;
    const int base_sources =
        std::clamp<int>(static_cast<int>(pair_budget / std::max(1, n)), 16, n);
    while (static_cast<int>(sources.size()) < base_sources)
      sources.insert(static_cast<int>(rng.uniform() * n) % n);

    // augment with the sources of outer-close same-component pairs
    const double q05 = near_pair_threshold(graph, rng);
    if (q05 > 0.0) {
      const auto knn = k_nearest_all(graph.node_points, 8);
      std::vector<std::pair<double, int>> near_sources;
      for (int i = 0; i < n; ++i) {
        for (const auto& [dij, j] : knn[i]) {
          if (dij > q05) break;
          if (parts.labels[j] != parts.labels[i]) continue;
          // skip graph-adjacent pairs; an edge means no distortion to see
          bool adjacent = false;
          for (int e = graph.offsets[i]; e < graph.offsets[i + 1] && !adjacent; ++e)
            adjacent = graph.adjacency[e].first == j;
          if (!adjacent) {
            near_sources.push_back({dij, i});
            break;
          }
        }
      }
      std::sort(near_sources.begin(), near_sources.end());
      const int cap = std::max<int>(128, static_cast<int>(pair_budget / (4 * std::max(1, n))));
      for (std::size_t r = 0; r < near_sources.size() && r < static_cast<std::size_t>(cap); ++r)
        sources.insert(near_sources[r].second);
    }

    std::vector<int> ordered(sources.begin(), sources.end());
    std::sort(ordered.begin(), ordered.end());
    for (int s : ordered) scan_from_source(graph, parts, s, best);
  }

  est.pairs_examined = best.examined;
  if (best.a >= 0) {
    est.defined = true;
    est.constant = std::max(1.0, best.ratio);
    est.witness_pair = {best.a, best.b};
  }
  return est;
}

StabilityReport two_scale_validate(const PointMatrix& points, ConnectionRule rule,
                                   std::int64_t pair_budget, std::uint64_t seed,
                                   double factor) {
  StabilityReport rep;
  const GeodesicGraph coarse_graph = build_graph(points, rule);
  const GeodesicGraph fine_graph = build_graph(points, rule.refined());
  const LneEstimate coarse = lne_constant(coarse_graph, pair_budget, seed);
  const LneEstimate fine = lne_constant(fine_graph, pair_budget, seed);
  rep.constant_coarse = coarse.constant;
  rep.constant_fine = fine.constant;
  rep.defined = coarse.defined && fine.defined;
  // a refinement that shatters the cloud into loose chains measured nothing;
  // it cannot refute the base estimate. A split into as many pieces as the
  // coarse graph had (plus a gap or two) is the interesting case: the coarse
  // connectivity was carried by edges that do not survive refinement.
  const bool shattered =
      rep.defined &&
      components(fine_graph).component_count > components(coarse_graph).component_count + 2;
  if (!rep.defined || shattered) {
    rep.vacuous = true;
    rep.stable = true;
    return rep;
  }
  rep.change_factor = std::max(coarse.constant, fine.constant) /
                      std::max(1e-300, std::min(coarse.constant, fine.constant));
  rep.stable = rep.change_factor <= factor;
  return rep;
}

StabilityReport two_scale_validate(const variety::SampleCloud& cloud, ConnectionRule rule,
                                   std::int64_t pair_budget, std::uint64_t seed,
                                   double factor) {
  return two_scale_validate(cloud.points, rule, pair_budget, seed, factor);
}

}  // namespace lnelab::geodesy
