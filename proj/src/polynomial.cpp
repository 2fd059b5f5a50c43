#include "lnelab/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace lnelab::variety {

SparsePolynomial::SparsePolynomial(int ambient_dim, std::vector<PolyTerm> terms)
    : ambient_dim_(ambient_dim) {
  if (ambient_dim <= 0) throw std::invalid_argument("ambient_dim must be positive");
  std::map<std::vector<int>, double> merged;
  for (auto& t : terms) {
    if (static_cast<int>(t.exponents.size()) != ambient_dim)
      throw std::invalid_argument("term exponent vector has wrong length");
    for (int e : t.exponents)
      if (e < 0) throw std::invalid_argument("negative exponent");
    merged[t.exponents] += t.coeff;
  }
  for (auto& [expo, c] : merged) {
    if (c != 0.0) terms_.push_back({c, expo});
  }
}

double SparsePolynomial::evaluate(const Vec& x) const {
  if (x.size() != ambient_dim_) throw std::invalid_argument("evaluate: dimension mismatch");
  double acc = 0.0;
  for (const auto& t : terms_) {
    double m = t.coeff;
    for (int i = 0; i < ambient_dim_; ++i) {
      const int e = t.exponents[i];
      if (e == 1) {
        m *= x[i];
      } else if (e > 1) {
        m *= std::pow(x[i], e);
      }
    }
    acc += m;
  }
  return acc;
}

Vec SparsePolynomial::gradient(const Vec& x) const {
  if (x.size() != ambient_dim_) throw std::invalid_argument("gradient: dimension mismatch");
  Vec g = Vec::Zero(ambient_dim_);
  for (const auto& t : terms_) {
    for (int j = 0; j < ambient_dim_; ++j) {
      const int ej = t.exponents[j];
      if (ej == 0) continue;
      double m = t.coeff * ej;
      for (int i = 0; i < ambient_dim_; ++i) {
        int e = t.exponents[i];
        if (i == j) e -= 1;
        if (e == 1) {
          m *= x[i];
        } else if (e > 1) {
          m *= std::pow(x[i], e);
        }
      }
      g[j] += m;
    }
  }
  return g;
}

int SparsePolynomial::total_degree() const {
  int deg = 0;
  for (const auto& t : terms_) {
    int d = 0;
    for (int e : t.exponents) d += e;
    deg = std::max(deg, d);
  }
  return deg;
}

bool SparsePolynomial::is_homogeneous() const {
  if (terms_.empty()) return true;
  int d0 = -1;
  for (const auto& t : terms_) {
    int d = 0;
    for (int e : t.exponents) d += e;
    if (d0 < 0) d0 = d;
    if (d != d0) return false;
  }
  return true;
}

double SparsePolynomial::coefficient_norm() const {
  double s = 0.0;
  for (const auto& t : terms_) s += t.coeff * t.coeff;
  return std::sqrt(s);
}

std::string SparsePolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) os << (t.coeff >= 0 ? " + " : " - ");
    if (first && t.coeff < 0) os << "-";
    first = false;
    const double a = std::abs(t.coeff);
    bool printed = false;
    if (a != 1.0) {
      os << a;
      printed = true;
    }
    for (int i = 0; i < ambient_dim_; ++i) {
      const int e = t.exponents[i];
      if (e == 0) continue;
      if (printed) os << " ";
      os << "x" << i;
      if (e > 1) os << "^" << e;
      printed = true;
    }
    if (!printed) os << a;
  }
  return os.str();
}

SparsePolynomial SparsePolynomial::monomial(int ambient_dim, double c, int index, int power) {
  std::vector<int> expo(ambient_dim, 0);
  expo.at(index) = power;
  return SparsePolynomial(ambient_dim, {{c, expo}});
}

}  // namespace lnelab::variety
