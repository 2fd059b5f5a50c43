#pragma once

#include <array>
#include <cstdint>

#include "lnelab/graph.hpp"

namespace lnelab::geodesy {

// Largest observed inner/outer distance ratio over examined node pairs.
struct LneEstimate {
  double constant = 1.0;
  std::array<int, 2> witness_pair = {-1, -1};
  std::int64_t pairs_examined = 0;
  double scale = 0.0;
  bool defined = false;
};

// All pairs are examined when node_count^2 fits the budget. Otherwise a
// seeded sample of source nodes is used, augmented by the sources of
// outer-close same-component pairs (below the 5th percentile of pairwise
// distances), which is where distortion concentrates. Pairs across
// components are excluded; their story is told by d0.
LneEstimate lne_constant(const GeodesicGraph& graph, std::int64_t pair_budget,
                         std::uint64_t seed);

struct StabilityReport {
  double constant_coarse = 0.0;
  double constant_fine = 0.0;
  double change_factor = 1.0;
  bool stable = false;
  bool defined = false;
  bool vacuous = false;  // the refined graph had nothing left to measure
};

/// Recomputes the constant with the connection rule at half resolution and
/// flags the estimate unstable when it moves by more than `factor`. Guards
/// against short-circuit edges bridging narrow ambient gaps.
StabilityReport two_scale_validate(const variety::SampleCloud& cloud, ConnectionRule rule,
                                   std::int64_t pair_budget = 4'000'000,
                                   std::uint64_t seed = 1, double factor = 1.5);

StabilityReport two_scale_validate(const PointMatrix& points, ConnectionRule rule,
                                   std::int64_t pair_budget = 4'000'000,
                                   std::uint64_t seed = 1, double factor = 1.5);

}  // namespace lnelab::geodesy
