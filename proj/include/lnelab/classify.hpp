#pragma once

#include <optional>
#include <string>

#include "lnelab/contact.hpp"
#include "lnelab/sweep.hpp"

namespace lnelab::classify {

struct BrieskornParams {
  int a, b, c;
  BrieskornParams(int a, int b, int c);  // requires 1 <= a <= b <= c
};

// Decision clauses for x^a + y^b + z^c = 0, a <= b <= c. The first three are
// the LNE cases, the last two the non-LNE mechanisms; exactly one applies.
enum class Clause {
  i,    // a, b, c all even: the origin is the only real point
  ii,   // a odd: graph-like over a coordinate plane in every direction
  iii,  // a = b (a even, c odd): rotationally tame, the horn criterion covers it
  n1,   // a even, b odd: outer contact b/a beats inner contact 1
  n2,   // a, b even, a < b, c odd: outer contact c/a beats inner contact c/b
};

std::string to_string(Clause c);
std::string describe(Clause c);

struct ExactVerdict {
  bool lne = false;
  Clause clause = Clause::i;
  std::optional<arcs::WitnessArcs> witness;  // present for non-LNE clauses
  std::string description;
};

ExactVerdict classify_brieskorn(const BrieskornParams& p);

// x_n^m = x_0^p + ... + x_{n-1}^p (axis coordinate last). The criterion
// needs n >= 2, p even and p <= m; anything else is out of its reach and
// reported inapplicable rather than non-LNE.
struct HornVerdict {
  bool applicable = false;
  bool lne = false;
  std::string description;
};

HornVerdict classify_horn(int m, int p, int n);

enum class Evidence { lne, not_lne, inconclusive };
std::string to_string(Evidence e);

struct ConeCheck {
  int component_count = 0;
  double d0 = 0.0;
  std::vector<double> component_constants;
  bool stable = false;
  Evidence verdict = Evidence::inconclusive;
};

struct ConeCheckParams {
  std::int64_t pair_budget = 4'000'000;
  double d0_floor = 0.05;  // minimum link separation accepted as "away from 0"
  double stability_factor = 1.5;
};

/// Numerical test of the cone criterion on a unit-link cloud: separated
/// components, finitely many of them, each with a finite stable constant.
ConeCheck cone_lne_check(const variety::SampleCloud& link_cloud, const ConeCheckParams& params,
                         std::uint64_t seed);

struct RouteTrend {
  std::vector<double> radii;
  std::vector<double> constants;
  double slope = 0.0;
  double slope_stderr = 0.0;
  linkscan::LlneClass classification = linkscan::LlneClass::inconclusive;
};

struct CrossCheckParams {
  int ball_count = 3000;
  linkscan::SweepParams sweep;
  linkscan::VerdictThresholds thresholds;
};

struct CrossCheckReport {
  RouteTrend route_a;                // direct ball constants over shrinking radii
  linkscan::LlneVerdict route_b;     // link sweep verdict + separation
  std::optional<bool> exact_lne;
  bool conclusive = false;
  bool agree = false;                // bounded/diverging classifications coincide
  bool matches_exact = true;
  std::string notes;
};

/// Compares the direct-ball route and the link-sweep route to an LNE
/// verdict; they must agree for subanalytic germs. Where an exact verdict is
/// supplied both routes are checked against it too.
CrossCheckReport cross_check_theorem(const variety::ImplicitGerm& germ,
                                     std::vector<double> schedule,
                                     const CrossCheckParams& params, std::uint64_t seed,
                                     std::optional<bool> exact_lne = std::nullopt);

/// Route-A style classification for a precomputed constants-vs-radius trend.
RouteTrend classify_trend(std::vector<double> radii, std::vector<double> constants,
                          const linkscan::VerdictThresholds& thresholds = {});

}  // namespace lnelab::classify
