#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "lnelab/germ.hpp"
#include "lnelab/norms.hpp"

namespace lnelab::variety {

inline constexpr double kSliceTol = 1e-6;  // relative on-sphere tolerance

struct ProjectionOptions {
  int max_iter = 60;
  double cond_cap = 1e12;       // reject iterates with a worse-conditioned Jacobian
  std::optional<Vec> lower;     // componentwise clamps, both optional
  std::optional<Vec> upper;
};

// Additional scalar equation driven to zero alongside the defining system.
struct ScalarConstraint {
  std::function<double(const Vec&)> value;
  std::function<Vec(const Vec&)> gradient;
  double tol = 1e-9;
};

/// Gauss-Newton least-squares projection of `seed` onto the germ's zero set.
/// Returns nullopt on non-convergence or a degenerate Jacobian.
std::optional<Vec> project_to_variety(const ImplicitGerm& germ, Vec seed,
                                      const ProjectionOptions& opts = {});

std::optional<Vec> project_constrained(const ImplicitGerm& germ, Vec seed,
                                       const std::vector<ScalarConstraint>& constraints,
                                       const ProjectionOptions& opts = {});

struct SampleOptions {
  int min_count = -1;       // default: count / 20, at least 1
  int oversample = 40;      // attempts per requested point
  ProjectionOptions projection;
};

SampleCloud sample_ball(const ImplicitGerm& germ, double t, int count, std::uint64_t seed,
                        const SampleOptions& opts = {});

/// Ball sample around an arbitrary center, for localized geodesic work.
SampleCloud sample_ball_at(const ImplicitGerm& germ, const Vec& center, double radius,
                           int count, std::uint64_t seed, const SampleOptions& opts = {});

LinkSlice sample_sphere_slice(const ImplicitGerm& germ, const linkscan::NormSpec& norm,
                              double t, int count, std::uint64_t seed,
                              const SampleOptions& opts = {});

/// Hyperplane section {x : <x - p, w> = t} within the domain ball.
SampleCloud sample_section_slice(const ImplicitGerm& germ, Vec w, double t, int count,
                                 std::uint64_t seed, const SampleOptions& opts = {});

bool meets_min_count(const SampleCloud& cloud, int requested, const SampleOptions& opts = {});

// Re-checks every point of a cloud against the residual and region
// constraints. `norm` is needed for sphere_slice clouds, `w` for sections.
struct CloudAudit {
  bool ok = false;
  double worst_residual = 0.0;
  double worst_region_violation = 0.0;
};
CloudAudit audit_cloud(const ImplicitGerm& germ, const SampleCloud& cloud,
                       const linkscan::NormSpec* norm = nullptr, const Vec* w = nullptr);

}  // namespace lnelab::variety
