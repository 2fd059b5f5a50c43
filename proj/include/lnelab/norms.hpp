#pragma once

#include <string>

#include "lnelab/polynomial.hpp"

namespace lnelab::linkscan {

// Norm used to carve sphere slices out of a germ. Besides the Euclidean norm
// this covers the weighted max norm max_i v_i |x_i| and the two split norms
// max(|x_s|, ||rest||_p) used when one coordinate plays a distinguished role.
class NormSpec {
 public:
  enum class Kind { euclidean, max_v, one_p, b_one };

  static NormSpec euclidean();
  static NormSpec max_weighted(Vec weights);               // weights > 0
  static NormSpec one_p(int p, int split_index = 0);       // max(|x_s|, ||others||_p)
  static NormSpec b_one(int b, int split_index);           // max(||others||_b, |x_s|)

  Kind kind() const { return kind_; }
  int p() const { return p_; }
  int split_index() const { return split_; }
  const Vec& weights() const { return weights_; }

  double value(const Vec& x) const;
  // gradient of value() where it is differentiable; on a max-norm edge the
  // active-branch subgradient is returned
  Vec gradient(const Vec& x) const;

  std::string to_string() const;

 private:
  NormSpec() = default;

  Kind kind_ = Kind::euclidean;
  Vec weights_;
  int p_ = 2;
  int split_ = 0;
};

}  // namespace lnelab::linkscan
