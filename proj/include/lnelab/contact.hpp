#pragma once

#include "lnelab/arcs.hpp"
#include "lnelab/graph.hpp"
#include "lnelab/sampling.hpp"

namespace lnelab::arcs {

struct InnerDistanceParams {
  int cloud_count = 16000;
  std::uint64_t seed = 1;
  double initial_radius_factor = 3.0;  // times the endpoint gap
  double escalation = 1.8;
  int max_escalations = 24;
  double max_radius = std::numeric_limits<double>::infinity();
};

struct LocalInnerDistance {
  double distance = std::numeric_limits<double>::infinity();
  double radius = 0.0;
  int escalations = 0;
  bool certified = false;
  int cloud_size = 0;
  double snap_a = 0.0;
  double snap_b = 0.0;
};

// Graph-geodesic estimate of the inner distance between two on-variety
// points, using a cloud sampled around their midpoint. The ball radius
// escalates until the found path is shorter than any path that could leave
// the ball (length >= 2(R - r0)), which certifies the localization.
LocalInnerDistance inner_distance_between(const variety::ImplicitGerm& germ, const Vec& a,
                                          const Vec& b, const InnerDistanceParams& params);

struct InnerOrderParams {
  InnerDistanceParams local;
  double snap_fraction = 0.1;  // drop a t-sample when snapping exceeds t/10
};

/// Inner contact order of two on-variety arcs by regression of the estimated
/// inner distance against t. Throws if an arc leaves the variety.
OrderEstimate tord_inner(const variety::ImplicitGerm& germ, const MonomialArc& a,
                         const MonomialArc& b, std::span<const double> t_values,
                         const InnerOrderParams& params);

struct WitnessArcs {
  MonomialArc arc_minus;
  MonomialArc arc_plus;
  double outer_order = 0.0;
  double inner_order = 0.0;
  double ratio_slope = 0.0;  // of inner/outer distance against t
  int clause = 0;            // which non-LNE mechanism the pair witnesses
};

/// Witness pair for a non-LNE Brieskorn triple x^a + y^b + z^c = 0 with
/// a <= b <= c. Throws std::invalid_argument for LNE triples.
WitnessArcs witness_arcs_brieskorn(int a, int b, int c);

/// Witness pair (+-t^(3/2), 0, -t) on x^2 - y^2 + z^3 = 0.
WitnessArcs witness_arcs_superisolated();

/// Witness pair (0, +-t^(3/2), t) on the cusp cylinder y^2 = z^3.
WitnessArcs witness_arcs_cusp();

struct DirectionProbe {
  Vec direction;
  std::vector<std::pair<double, double>> ratio_curve;  // (t, d_inner / d_outer)
  double divergence_slope = 0.0;
  double slope_stderr = 0.0;
  bool evidence = false;  // points to a non-LNE direction
};

/// Ratio curve for an arc pair sharing the same first-order direction;
/// `evidence` is set when the ratio grows like a negative power of t.
DirectionProbe probe_direction(const variety::ImplicitGerm& germ, const MonomialArc& a,
                               const MonomialArc& b, std::span<const double> t_values,
                               const InnerOrderParams& params);

}  // namespace lnelab::arcs
