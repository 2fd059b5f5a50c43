#pragma once

// Test-only oracles, kept independent of the implementation paths they check.

#include <algorithm>
#include <limits>
#include <vector>

#include "lnelab/graph.hpp"

namespace lnelab::testing {

// Exhaustive minimum over all simple paths; only usable on tiny graphs.
// Accumulates edge weights front-to-back, matching the summation order of a
// shortest-path relaxation, so agreement can be checked exactly.
inline double brute_force_inner_distance(const geodesy::GeodesicGraph& graph, int src,
                                         int dst) {
  const int n = graph.node_count();
  std::vector<char> visited(n, 0);
  double best = std::numeric_limits<double>::infinity();
  auto dfs = [&](auto&& self, int u, double len) -> void {
    if (u == dst) {
      best = std::min(best, len);
      return;
    }
    for (int e = graph.offsets[u]; e < graph.offsets[u + 1]; ++e) {
      const auto& [v, w] = graph.adjacency[e];
      if (visited[v]) continue;
      visited[v] = 1;
      self(self, v, len + w);
      visited[v] = 0;
    }
  };
  if (src == dst) return 0.0;
  visited[src] = 1;
  dfs(dfs, src, 0.0);
  return best;
}

inline PointMatrix circle_points(int n, double radius = 1.0, double phase = 0.0) {
  PointMatrix pts(n, 2);
  for (int i = 0; i < n; ++i) {
    const double a = phase + 2.0 * 3.141592653589793238 * i / n;
    pts(i, 0) = radius * std::cos(a);
    pts(i, 1) = radius * std::sin(a);
  }
  return pts;
}

}  // namespace lnelab::testing
