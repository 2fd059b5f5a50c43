#include "lnelab/tangent_cone.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lnelab/rng.hpp"

namespace lnelab::arcs {

double hausdorff_distance(const PointMatrix& a, const PointMatrix& b) {
  if (a.rows() == 0 || b.rows() == 0)
    throw std::invalid_argument("hausdorff_distance: empty cloud");
  if (a.cols() != b.cols())
    throw std::invalid_argument("hausdorff_distance: dimension mismatch");
  auto directed = [](const PointMatrix& from, const PointMatrix& to) {
    double worst = 0.0;
    for (int i = 0; i < from.rows(); ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (int j = 0; j < to.rows(); ++j)
        best = std::min(best, (from.row(i) - to.row(j)).squaredNorm());
      worst = std::max(worst, best);
    }
    return std::sqrt(worst);
  };
  return std::max(directed(a, b), directed(b, a));
}

TangentConeSample tangent_cone_sample(const variety::ImplicitGerm& germ,
                                      std::span<const double> t_list, int count,
                                      std::uint64_t seed) {
  if (t_list.empty()) throw std::invalid_argument("tangent_cone_sample: empty t list");
  for (std::size_t i = 1; i < t_list.size(); ++i)
    if (t_list[i] >= t_list[i - 1])
      throw std::invalid_argument("tangent_cone_sample: t list must be decreasing");

  TangentConeSample out;
  const linkscan::NormSpec euclid = linkscan::NormSpec::euclidean();
  for (std::size_t k = 0; k < t_list.size(); ++k) {
    const double t = t_list[k];
    const variety::LinkSlice slice =
        variety::sample_sphere_slice(germ, euclid, t, count, mix_seed(seed, k));
    if (slice.size() == 0)
      throw std::runtime_error("tangent_cone_sample: empty slice at t=" + std::to_string(t));
    PointMatrix dirs(slice.size(), slice.dim());
    for (int i = 0; i < slice.size(); ++i)
      dirs.row(i) = (slice.points.row(i) - germ.basepoint.transpose()) / t;
    out.t_list.push_back(t);
    out.rescaled.push_back(std::move(dirs));
  }
  for (std::size_t k = 0; k + 1 < out.rescaled.size(); ++k)
    out.hausdorff_steps.push_back(hausdorff_distance(out.rescaled[k], out.rescaled[k + 1]));
  return out;
}

}  // namespace lnelab::arcs
