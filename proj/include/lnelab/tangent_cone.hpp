#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lnelab/sampling.hpp"

namespace lnelab::arcs {

/// Symmetrized max-min distance between nonempty finite clouds.
double hausdorff_distance(const PointMatrix& a, const PointMatrix& b);

// Directional clouds (1/t)(X_t - p) on the unit sphere for a decreasing
// radius list; the last cloud approximates the tangent-cone link.
struct TangentConeSample {
  std::vector<double> t_list;
  std::vector<PointMatrix> rescaled;
  std::vector<double> hausdorff_steps;  // between consecutive rescaled clouds
};

TangentConeSample tangent_cone_sample(const variety::ImplicitGerm& germ,
                                      std::span<const double> t_list, int count,
                                      std::uint64_t seed);

}  // namespace lnelab::arcs
