#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lnelab/polynomial.hpp"

namespace lnelab::variety {

// Real algebraic germ (X, p): common zero set of a polynomial system,
// studied inside the ball of radius domain_radius around the basepoint.
struct ImplicitGerm {
  std::string name;
  std::vector<SparsePolynomial> equations;
  Vec basepoint;
  double residual_tol = 1e-9;  // absolute membership tolerance per equation
  double domain_radius = 1.0;

  int ambient_dim() const { return static_cast<int>(basepoint.size()); }

  double max_residual(const Vec& x) const;
  bool on_variety(const Vec& x) const { return max_residual(x) <= residual_tol; }

  // residual_tol is derived as rel_tol * max(1, ||coefficients||) over the
  // system; basepoint membership is validated.
  static ImplicitGerm make(std::string name, std::vector<SparsePolynomial> equations,
                           Vec basepoint, double domain_radius, double rel_tol = 1e-9);
};

enum class CloudKind { ball, sphere_slice, section_slice };

std::string to_string(CloudKind kind);

// Finite point sample of a germ region. `center`/`scale` describe the region
// the kind claims: ball of radius scale, norm sphere of radius scale, or a
// hyperplane section at offset scale.
struct SampleCloud {
  PointMatrix points;  // one point per row
  std::string germ_ref;
  double scale = 0.0;
  CloudKind kind = CloudKind::ball;
  std::uint64_t rng_seed = 0;
  Vec center;

  int size() const { return static_cast<int>(points.rows()); }
  int dim() const { return static_cast<int>(points.cols()); }
  Vec point(int i) const { return points.row(i).transpose(); }
};

using LinkSlice = SampleCloud;

}  // namespace lnelab::variety
