#include "lnelab/germ.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lnelab::variety {

double ImplicitGerm::max_residual(const Vec& x) const {
  double worst = 0.0;
  for (const auto& eq : equations) worst = std::max(worst, std::abs(eq.evaluate(x)));
  return worst;
}

ImplicitGerm ImplicitGerm::make(std::string name, std::vector<SparsePolynomial> equations,
                                Vec basepoint, double domain_radius, double rel_tol) {
  if (equations.empty()) throw std::invalid_argument("germ needs at least one equation");
  if (domain_radius <= 0.0) throw std::invalid_argument("domain_radius must be positive");
  const int n = static_cast<int>(basepoint.size());
  double coeff_scale = 1.0;
  for (const auto& eq : equations) {
    if (eq.ambient_dim() != n)
      throw std::invalid_argument("equation ambient dimension does not match basepoint");
    coeff_scale = std::max(coeff_scale, eq.coefficient_norm());
  }
  ImplicitGerm g{std::move(name), std::move(equations), std::move(basepoint),
                 rel_tol * coeff_scale, domain_radius};
  if (g.max_residual(g.basepoint) > g.residual_tol)
    throw std::invalid_argument("basepoint is not on the variety");
  return g;
}

std::string to_string(CloudKind kind) {
  switch (kind) {
    case CloudKind::ball: return "ball";
    case CloudKind::sphere_slice: return "sphere_slice";
    case CloudKind::section_slice: return "section_slice";
  }
  return "?";
}

}  // namespace lnelab::variety
