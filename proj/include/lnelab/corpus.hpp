#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lnelab/classify.hpp"
#include "lnelab/germ.hpp"

namespace lnelab::harness {

variety::ImplicitGerm brieskorn_germ(int a, int b, int c, double domain_radius = 1.0);
/// x_n^m = x_0^p + ... + x_{n-1}^p with the axis coordinate last.
variety::ImplicitGerm horn_germ(int m, int p, int n, double domain_radius = 1.0);
variety::ImplicitGerm superisolated_germ(double domain_radius = 1.0);  // x^2 - y^2 + z^3
variety::ImplicitGerm cusp_cylinder_germ(double domain_radius = 1.0);  // y^2 = z^3 in R^3
variety::ImplicitGerm line_germ(double domain_radius = 1.0);           // {y = z = 0} in R^3
variety::ImplicitGerm plane_germ(double domain_radius = 1.0);          // {z = 0} in R^3
variety::ImplicitGerm cone_germ(double domain_radius = 1.0);           // x^2 + y^2 = z^2

// Planar spiral x -> x e^{2 pi i / x} delivered as a polyline cloud; it is
// not an algebraic germ, so only cloud-level operations apply. Along-curve
// spacing shrinks like rel_spacing * x^2 to keep consecutive turns resolved.
struct SpiralCloud {
  variety::SampleCloud cloud;
  std::vector<double> params;  // the x value of each polyline vertex
  double x_min = 0.0;
  double x_max = 0.0;
};

SpiralCloud spiral_cloud(double x_min, double x_max, double rel_spacing = 0.3);
SpiralCloud spiral_cloud_turns(int turns, double rel_spacing = 0.3);

/// Exact arc length of the spiral between parameters x1 < x2.
double spiral_arc_length(double x1, double x2);

/// Sub-polyline with |radius - t| <= band * t; the spiral meets each circle
/// once, so this is a short connected arc.
variety::SampleCloud spiral_link_slice(const SpiralCloud& spiral, double t,
                                       double band = 0.02);

// Union of the z-axis line and J horns x^2 + (z - 1/j)^2 = y^3 with tips at
// (0, 0, 1/j), each truncated where it would meet its neighbour.
variety::SampleCloud horns_union_cloud(int J, double radius, double spacing);
variety::SampleCloud horns_union_slice(int J, double t, double spacing);
double horn_y_extent(int j);

struct CorpusEntry {
  enum class Generator {
    line,
    plane,
    brieskorn,
    horn,
    superisolated_real,
    cusp_curve,
    spiral,
    horns_union,
  };

  std::string name;
  Generator generator;
  std::vector<int> int_params;
  bool lne = false;              // expected verdict at the basepoint
  bool exact_classifier = false; // classify_brieskorn / classify_horn covers it
  bool llne_exception = false;   // link-route disagreement is the documented outcome
  bool subanalytic = true;
  std::string rationale;
};

std::vector<CorpusEntry> standard_corpus();
const CorpusEntry& corpus_entry(const std::string& name);

/// Germ for algebraic entries; throws for cloud-only entries (spiral, horns).
variety::ImplicitGerm corpus_germ(const CorpusEntry& entry, double domain_radius = 1.0);

/// Exact verdict where a classifier applies, nullopt otherwise.
std::optional<bool> corpus_exact_lne(const CorpusEntry& entry);

/// Largest arc-length/chord ratio over aligned consecutive-turn vertex pairs,
/// using the closed-form arc length. Independent check on the graph route.
double spiral_oracle_constant(const SpiralCloud& spiral);

/// Two-route comparison for the spiral cloud: ball-restricted polyline
/// constants over shrinking radii against circle-slice records. The spiral is
/// outside the algebraic setting, so the documented outcome is a bounded
/// link route next to a diverging direct route.
classify::CrossCheckReport spiral_cross_check(const std::vector<double>& schedule,
                                              std::int64_t pair_budget, std::uint64_t seed);

/// Per-slice constants of the truncated horns union at t = 1/j, j = 2..J.
std::vector<std::pair<double, double>> horns_union_slice_constants(int J, double spacing,
                                                                   std::int64_t pair_budget,
                                                                   std::uint64_t seed);

classify::CrossCheckReport horns_union_cross_check(int J, std::int64_t pair_budget,
                                                   std::uint64_t seed);

}  // namespace lnelab::harness
