#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace lnelab {

using Vec = Eigen::VectorXd;
// points stored one per row
using PointMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

namespace variety {

struct PolyTerm {
  double coeff = 0.0;
  std::vector<int> exponents;  // one per ambient coordinate, all >= 0
};

// Sparse multivariate polynomial with non-negative integer exponents.
// Terms with equal exponent vectors are merged at construction and zero
// coefficients dropped, so the stored form is canonical.
class SparsePolynomial {
 public:
  SparsePolynomial(int ambient_dim, std::vector<PolyTerm> terms);

  int ambient_dim() const { return ambient_dim_; }
  const std::vector<PolyTerm>& terms() const { return terms_; }

  double evaluate(const Vec& x) const;
  Vec gradient(const Vec& x) const;

  int total_degree() const;
  bool is_homogeneous() const;
  double coefficient_norm() const;

  /// Display form such as "x0^2 + 3 x1 x2^3".
  std::string to_string() const;

  /// Single monomial c * x_index^power.
  static SparsePolynomial monomial(int ambient_dim, double c, int index, int power);

 private:
  int ambient_dim_;
  std::vector<PolyTerm> terms_;
};

}  // namespace variety
}  // namespace lnelab
