#include "lnelab/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>
#include <unordered_map>

#include "lnelab/rng.hpp"

namespace lnelab::variety {

namespace {

void clamp_in_place(Vec& x, const ProjectionOptions& opts) {
  if (opts.lower)
    for (int i = 0; i < x.size(); ++i) x[i] = std::max(x[i], (*opts.lower)[i]);
  if (opts.upper)
    for (int i = 0; i < x.size(); ++i) x[i] = std::min(x[i], (*opts.upper)[i]);
}

struct ResidualSystem {
  const ImplicitGerm* germ;
  const std::vector<ScalarConstraint>* constraints;

  int rows() const {
    return static_cast<int>(germ->equations.size() +
                            (constraints ? constraints->size() : 0));
  }

  Vec eval(const Vec& x) const {
    Vec f(rows());
    int r = 0;
    for (const auto& eq : germ->equations) f[r++] = eq.evaluate(x);
    if (constraints)
      for (const auto& c : *constraints) f[r++] = c.value(x);
    return f;
  }

  Eigen::MatrixXd jacobian(const Vec& x) const {
    Eigen::MatrixXd J(rows(), x.size());
    int r = 0;
    for (const auto& eq : germ->equations) J.row(r++) = eq.gradient(x).transpose();
    if (constraints)
      for (const auto& c : *constraints) J.row(r++) = c.gradient(x).transpose();
    return J;
  }

  bool satisfied(const Vec& x) const {
    if (germ->max_residual(x) > germ->residual_tol) return false;
    if (constraints)
      for (const auto& c : *constraints)
        if (std::abs(c.value(x)) > c.tol) return false;
    return true;
  }
};

std::optional<Vec> gauss_newton(const ResidualSystem& sys, Vec x,
                                const ProjectionOptions& opts) {
  clamp_in_place(x, opts);
  for (int iter = 0; iter < opts.max_iter; ++iter) {
    if (sys.satisfied(x)) return x;

    const Vec f = sys.eval(x);
    const Eigen::MatrixXd J = sys.jacobian(x);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(J, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double smax = sv.size() ? sv[0] : 0.0;
    const double smin = sv.size() ? sv[sv.size() - 1] : 0.0;
    if (smax <= 0.0 || smax / std::max(smin, 1e-300) > opts.cond_cap)
      return std::nullopt;  // degenerate Jacobian; likely near the singular locus

    Vec step = svd.solve(-f);
    const double f0 = f.norm();
    // damped acceptance: keep halving until the residual actually drops
    double lambda = 1.0;
    bool moved = false;
    for (int bt = 0; bt < 8; ++bt) {
      Vec trial = x + lambda * step;
      clamp_in_place(trial, opts);
      if (sys.eval(trial).norm() < f0) {
        x = trial;
        moved = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!moved) return std::nullopt;  // stalled
  }
  return sys.satisfied(x) ? std::optional<Vec>(x) : std::nullopt;
}

// uniform direction on the Euclidean unit sphere
Vec random_direction(Rng& rng, int dim) {
  Vec d(dim);
  double n2 = 0.0;
  do {
    for (int i = 0; i < dim; ++i) d[i] = rng.normal();
    n2 = d.squaredNorm();
  } while (n2 == 0.0);
  return d / std::sqrt(n2);
}

// Collects accepted points and rejects near-duplicates. The separation floor
// is a small fraction of the region scale, so a locus that is really a single
// point (every projection collapses to it) yields one sample, not `count`
// copies smeared across the membership tolerance.
class CloudBuilder {
 public:
  CloudBuilder(int dim, double min_separation)
      : dim_(dim), min_sep_(min_separation), cell_(std::max(min_separation, 1e-300)) {}

  bool add(const Vec& x) {
    if (min_sep_ > 0.0) {
      std::vector<long long> base(dim_);
      for (int c = 0; c < dim_; ++c)
        base[c] = static_cast<long long>(std::floor(x[c] / cell_));
      std::vector<long long> key(dim_);
      // scan the 3^d neighbourhood of the cell for a too-close point
      std::vector<int> offset(dim_, -1);
      while (true) {
        for (int c = 0; c < dim_; ++c) key[c] = base[c] + offset[c];
        auto it = cells_.find(pack(key));
        if (it != cells_.end()) {
          for (int idx : it->second) {
            double d2 = 0.0;
            for (int c = 0; c < dim_; ++c) {
              const double dc = data_[idx * dim_ + c] - x[c];
              d2 += dc * dc;
            }
            if (d2 < min_sep_ * min_sep_) return false;
          }
        }
        int c = 0;
        while (c < dim_) {
          if (++offset[c] <= 1) break;
          offset[c] = -1;
          ++c;
        }
        if (c == dim_) break;
      }
      cells_[pack(base)].push_back(count_);
    }
    data_.insert(data_.end(), x.data(), x.data() + dim_);
    ++count_;
    return true;
  }

  int count() const { return count_; }

  PointMatrix take() {
    PointMatrix m(count_, dim_);
    std::memcpy(m.data(), data_.data(), data_.size() * sizeof(double));
    return m;
  }

 private:
  static std::uint64_t pack(const std::vector<long long>& k) {
    std::uint64_t h = 1469598103934665603ULL;
    for (long long v : k) {
      h ^= static_cast<std::uint64_t>(v);
      h *= 1099511628211ULL;
    }
    return h;
  }

  int dim_;
  double min_sep_;
  double cell_;
  int count_ = 0;
  std::vector<double> data_;
  std::unordered_map<std::uint64_t, std::vector<int>> cells_;
};

}  // namespace

std::optional<Vec> project_to_variety(const ImplicitGerm& germ, Vec seed,
                                      const ProjectionOptions& opts) {
  if (seed.size() != germ.ambient_dim())
    throw std::invalid_argument("project_to_variety: dimension mismatch");
  ResidualSystem sys{&germ, nullptr};
  return gauss_newton(sys, std::move(seed), opts);
}

std::optional<Vec> project_constrained(const ImplicitGerm& germ, Vec seed,
                                       const std::vector<ScalarConstraint>& constraints,
                                       const ProjectionOptions& opts) {
  if (seed.size() != germ.ambient_dim())
    throw std::invalid_argument("project_constrained: dimension mismatch");
  ResidualSystem sys{&germ, &constraints};
  return gauss_newton(sys, std::move(seed), opts);
}

SampleCloud sample_ball_at(const ImplicitGerm& germ, const Vec& center, double radius,
                           int count, std::uint64_t seed, const SampleOptions& opts) {
  if (radius <= 0.0) throw std::invalid_argument("sample_ball: radius must be positive");
  const int n = germ.ambient_dim();
  Rng rng(seed);
  CloudBuilder builder(n, 1e-4 * radius);
  const long max_attempts = static_cast<long>(opts.oversample) * count + 256;
  const double inv_n = 1.0 / n;
  for (long a = 0; a < max_attempts && builder.count() < count; ++a) {
    const Vec dir = random_direction(rng, n);
    const double r = radius * std::pow(rng.uniform(), inv_n);
    std::optional<Vec> x = project_to_variety(germ, center + r * dir, opts.projection);
    if (!x) continue;
    if ((*x - center).norm() > radius * (1.0 + 1e-12)) continue;
    builder.add(*x);
  }
  SampleCloud cloud;
  cloud.points = builder.take();
  cloud.germ_ref = germ.name;
  cloud.scale = radius;
  cloud.kind = CloudKind::ball;
  cloud.rng_seed = seed;
  cloud.center = center;
  return cloud;
}

SampleCloud sample_ball(const ImplicitGerm& germ, double t, int count, std::uint64_t seed,
                        const SampleOptions& opts) {
  if (t > germ.domain_radius * (1.0 + 1e-12))
    throw std::invalid_argument("sample_ball: t exceeds domain_radius");
  return sample_ball_at(germ, germ.basepoint, t, count, seed, opts);
}

LinkSlice sample_sphere_slice(const ImplicitGerm& germ, const linkscan::NormSpec& norm,
                              double t, int count, std::uint64_t seed,
                              const SampleOptions& opts) {
  if (t <= 0.0) throw std::invalid_argument("sample_sphere_slice: t must be positive");
  if (t > germ.domain_radius * (1.0 + 1e-12))
    throw std::invalid_argument("sample_sphere_slice: t exceeds domain_radius");
  const int n = germ.ambient_dim();
  const Vec p = germ.basepoint;
  const double tol = kSliceTol * t;

  std::vector<ScalarConstraint> constraints{
      {[&, t](const Vec& x) { return norm.value(x - p) - t; },
       [&](const Vec& x) { return norm.gradient(x - p); },
       tol}};

  Rng rng(seed);
  CloudBuilder builder(n, 1e-4 * t);
  const long max_attempts = static_cast<long>(opts.oversample) * count + 256;
  for (long a = 0; a < max_attempts && builder.count() < count; ++a) {
    Vec dir = random_direction(rng, n);
    const double nv = norm.value(dir);
    if (nv <= 0.0) continue;
    Vec seed_pt = p + (t / nv) * dir;  // exactly on the norm sphere
    std::optional<Vec> x = project_constrained(germ, seed_pt, constraints, opts.projection);
    if (!x) continue;
    if (std::abs(norm.value(*x - p) - t) > tol) continue;
    builder.add(*x);
  }
  SampleCloud cloud;
  cloud.points = builder.take();
  cloud.germ_ref = germ.name;
  cloud.scale = t;
  cloud.kind = CloudKind::sphere_slice;
  cloud.rng_seed = seed;
  cloud.center = p;
  return cloud;
}

SampleCloud sample_section_slice(const ImplicitGerm& germ, Vec w, double t, int count,
                                 std::uint64_t seed, const SampleOptions& opts) {
  const int n = germ.ambient_dim();
  if (w.size() != n) throw std::invalid_argument("section direction dimension mismatch");
  const double wn = w.norm();
  if (wn == 0.0) throw std::invalid_argument("section direction must be nonzero");
  w /= wn;
  if (std::abs(t) > germ.domain_radius)
    throw std::invalid_argument("section offset outside domain");
  const Vec p = germ.basepoint;
  const double tol = kSliceTol * std::max(std::abs(t), 1e-6);

  std::vector<ScalarConstraint> constraints{
      {[&, t](const Vec& x) { return (x - p).dot(w) - t; },
       [&](const Vec&) { return w; },
       tol}};

  // orthonormal tangent frame of the hyperplane
  Eigen::MatrixXd frame = Eigen::MatrixXd::Zero(n, n - 1);
  {
    Eigen::MatrixXd basis(n, n);
    basis.col(0) = w;
    for (int i = 1; i < n; ++i) basis.col(i) = Vec::Unit(n, (i - 1));
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(basis);
    Eigen::MatrixXd Q = qr.householderQ();
    if ((Q.col(0) - w).norm() > 1.0) Q = -Q;  // fix the sign convention
    frame = Q.rightCols(n - 1);
  }
  const double tangential = std::sqrt(
      std::max(germ.domain_radius * germ.domain_radius - t * t, 1e-12));

  Rng rng(seed);
  CloudBuilder builder(n, 1e-4 * std::max(std::abs(t), tangential));
  const long max_attempts = static_cast<long>(opts.oversample) * count + 256;
  const double inv_d = 1.0 / std::max(1, n - 1);
  for (long a = 0; a < max_attempts && builder.count() < count; ++a) {
    Vec u = random_direction(rng, n - 1);
    const double r = tangential * std::pow(rng.uniform(), inv_d);
    Vec seed_pt = p + t * w + frame * (r * u);
    std::optional<Vec> x = project_constrained(germ, seed_pt, constraints, opts.projection);
    if (!x) continue;
    if (std::abs((*x - p).dot(w) - t) > tol) continue;
    if ((*x - p).norm() > germ.domain_radius * (1.0 + 1e-12)) continue;
    builder.add(*x);
  }
  SampleCloud cloud;
  cloud.points = builder.take();
  cloud.germ_ref = germ.name;
  cloud.scale = t;
  cloud.kind = CloudKind::section_slice;
  cloud.rng_seed = seed;
  cloud.center = p + t * w;
  return cloud;
}

bool meets_min_count(const SampleCloud& cloud, int requested, const SampleOptions& opts) {
  const int min_count = opts.min_count > 0 ? opts.min_count : std::max(1, requested / 20);
  return cloud.size() >= min_count;
}

CloudAudit audit_cloud(const ImplicitGerm& germ, const SampleCloud& cloud,
                       const linkscan::NormSpec* norm, const Vec* w) {
  CloudAudit audit;
  audit.ok = true;
  for (int i = 0; i < cloud.size(); ++i) {
    const Vec x = cloud.point(i);
    audit.worst_residual = std::max(audit.worst_residual, germ.max_residual(x));
    double violation = 0.0;
    switch (cloud.kind) {
      case CloudKind::ball:
        violation = std::max(0.0, (x - cloud.center).norm() - cloud.scale);
        break;
      case CloudKind::sphere_slice: {
        const linkscan::NormSpec euclid = linkscan::NormSpec::euclidean();
        const auto& nm = norm ? *norm : euclid;
        violation = std::abs(nm.value(x - germ.basepoint) - cloud.scale) -
                    kSliceTol * cloud.scale;
        break;
      }
      case CloudKind::section_slice:
        if (w) violation = std::abs((x - germ.basepoint).dot(*w) - cloud.scale);
        break;
    }
    audit.worst_region_violation = std::max(audit.worst_region_violation, violation);
  }
  if (audit.worst_residual > germ.residual_tol) audit.ok = false;
  if (audit.worst_region_violation > germ.residual_tol) audit.ok = false;
  return audit;
}

}  // namespace lnelab::variety
