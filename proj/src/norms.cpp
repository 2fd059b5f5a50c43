#include "lnelab/norms.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace lnelab::linkscan {

NormSpec NormSpec::euclidean() {
  NormSpec n;
  n.kind_ = Kind::euclidean;
  return n;
}

NormSpec NormSpec::max_weighted(Vec weights) {
  for (int i = 0; i < weights.size(); ++i)
    if (weights[i] <= 0.0) throw std::invalid_argument("max_v weights must be positive");
  NormSpec n;
  n.kind_ = Kind::max_v;
  n.weights_ = std::move(weights);
  return n;
}

NormSpec NormSpec::one_p(int p, int split_index) {
  if (p < 2 || p % 2 != 0) throw std::invalid_argument("one_p requires an even p >= 2");
  NormSpec n;
  n.kind_ = Kind::one_p;
  n.p_ = p;
  n.split_ = split_index;
  return n;
}

NormSpec NormSpec::b_one(int b, int split_index) {
  if (b < 2 || b % 2 != 0) throw std::invalid_argument("b_one requires an even b >= 2");
  NormSpec n;
  n.kind_ = Kind::b_one;
  n.p_ = b;
  n.split_ = split_index;
  return n;
}

namespace {

double p_norm_excluding(const Vec& x, int p, int skip) {
  double s = 0.0;
  for (int i = 0; i < x.size(); ++i) {
    if (i == skip) continue;
    s += std::pow(std::abs(x[i]), p);
  }
  return std::pow(s, 1.0 / p);
}

}  // namespace

double NormSpec::value(const Vec& x) const {
  switch (kind_) {
    case Kind::euclidean:
      return x.norm();
    case Kind::max_v: {
      if (weights_.size() != x.size())
        throw std::invalid_argument("max_v weight dimension mismatch");
      double m = 0.0;
      for (int i = 0; i < x.size(); ++i) m = std::max(m, weights_[i] * std::abs(x[i]));
      return m;
    }
    case Kind::one_p:
    case Kind::b_one: {
      const int s = split_;
      if (s < 0 || s >= x.size()) throw std::invalid_argument("split index out of range");
      return std::max(std::abs(x[s]), p_norm_excluding(x, p_, s));
    }
  }
  return 0.0;
}

Vec NormSpec::gradient(const Vec& x) const {
  Vec g = Vec::Zero(x.size());
  switch (kind_) {
    case Kind::euclidean: {
      const double r = x.norm();
      if (r > 0.0) g = x / r;
      return g;
    }
    case Kind::max_v: {
      int arg = 0;
      double best = -1.0;
      for (int i = 0; i < x.size(); ++i) {
        const double v = weights_[i] * std::abs(x[i]);
        if (v > best) {
          best = v;
          arg = i;
        }
      }
      g[arg] = weights_[arg] * (x[arg] >= 0.0 ? 1.0 : -1.0);
      return g;
    }
    case Kind::one_p:
    case Kind::b_one: {
      const int s = split_;
      const double block = p_norm_excluding(x, p_, s);
      if (std::abs(x[s]) >= block) {
        g[s] = x[s] >= 0.0 ? 1.0 : -1.0;
        return g;
      }
      if (block == 0.0) return g;
      const double scale = std::pow(block, 1 - p_);
      for (int i = 0; i < x.size(); ++i) {
        if (i == s) continue;
        // p is even, so |x|^(p-1) sign(x) = x^(p-1)
        g[i] = scale * std::pow(x[i], p_ - 1);
      }
      return g;
    }
  }
  return g;
}

std::string NormSpec::to_string() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::euclidean:
      os << "euclidean";
      break;
    case Kind::max_v:
      os << "max_v(";
      for (int i = 0; i < weights_.size(); ++i) os << (i ? "," : "") << weights_[i];
      os << ")";
      break;
    case Kind::one_p:
      os << "one_p(p=" << p_ << ",split=" << split_ << ")";
      break;
    case Kind::b_one:
      os << "b_one(b=" << p_ << ",split=" << split_ << ")";
      break;
  }
  return os.str();
}

}  // namespace lnelab::linkscan
