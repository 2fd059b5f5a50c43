#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lnelab/polynomial.hpp"

namespace lnelab::arcs {

inline constexpr double kInfiniteOrder = std::numeric_limits<double>::infinity();

// coeff * t^(num/den); exponents are kept as reduced integer fractions so
// contact orders can be computed exactly
struct ArcTerm {
  double coeff = 0.0;
  long long num = 0;
  long long den = 1;

  double exponent() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// Arc gamma(t), t in [0, domain_max], with finitely many monomial terms per
// coordinate. gamma(0) is given by the constant terms.
class MonomialArc {
 public:
  MonomialArc(std::vector<std::vector<ArcTerm>> components, double domain_max);

  int ambient_dim() const { return static_cast<int>(components_.size()); }
  double domain_max() const { return domain_max_; }
  const std::vector<std::vector<ArcTerm>>& components() const { return components_; }

  Vec evaluate(double t) const;  // throws std::domain_error outside [0, domain_max]
  Vec initial_point() const;
  /// Coefficients of the t^1 terms; the arc's tangent direction when
  /// parametrized to first order.
  Vec linear_part() const;

  std::string to_string() const;

 private:
  std::vector<std::vector<ArcTerm>> components_;
  double domain_max_;
};

/// Lowest surviving exponent of gamma1 - gamma2 after exact cancellation;
/// nullopt when the arcs are identical.
std::optional<double> symbolic_difference_order(const MonomialArc& a, const MonomialArc& b);

struct OrderEstimate {
  enum class Method { symbolic_exact, regression };
  double order = kInfiniteOrder;
  double stderr_ = 0.0;
  std::pair<double, double> window = {0.0, 0.0};
  Method method = Method::symbolic_exact;
  bool power_law = true;  // false when the log-log fit is not linear
};

OrderEstimate tord_outer(const MonomialArc& a, const MonomialArc& b);
OrderEstimate tord_outer(const MonomialArc& a, const MonomialArc& b,
                         std::span<const double> t_values);

/// Outer contact order with both arcs reparametrized by distance to their
/// common initial point, at the radii in `s_values`.
OrderEstimate tord_outer_radius_param(const MonomialArc& a, const MonomialArc& b,
                                      std::span<const double> s_values);

}  // namespace lnelab::arcs
