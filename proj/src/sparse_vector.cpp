#include "hscomp/sparse_vector.hpp"

#include <cmath>
#include <cstdio>

namespace hscomp {

void SparseVector::check_space(const SparseVector& o) const {
  if (!space_.empty() && !o.space_.empty() && space_ != o.space_)
    throw ConfigError("incompatible key spaces: " + space_ + " vs " + o.space_);
}

double SparseVector::inner(const SparseVector& o) const {
  check_space(o);
  const auto& small = c_.size() <= o.c_.size() ? c_ : o.c_;
  const auto& big = c_.size() <= o.c_.size() ? o.c_ : c_;
  double s = 0.0;
  for (const auto& [k, v] : small) {
    auto it = big.find(k);
    if (it != big.end()) s += v * it->second;
  }
  return s;
}

double SparseVector::norm2() const {
  double s = 0.0;
  for (const auto& [k, v] : c_) s += v * v;
  return s;
}

double SparseVector::norm() const { return std::sqrt(norm2()); }

SparseVector& SparseVector::operator+=(const SparseVector& o) {
  check_space(o);
  if (space_.empty()) space_ = o.space_;
  for (const auto& [k, v] : o.c_) add(k, v);
  return *this;
}

SparseVector& SparseVector::operator-=(const SparseVector& o) {
  check_space(o);
  if (space_.empty()) space_ = o.space_;
  for (const auto& [k, v] : o.c_) add(k, -v);
  return *this;
}

SparseVector& SparseVector::operator*=(double s) {
  if (s == 0.0) {
    c_.clear();
    return *this;
  }
  for (auto& [k, v] : c_) v *= s;
  return *this;
}

std::string SparseVector::dump() const {
  std::string out;
  char buf[64];
  for (const auto& [k, v] : c_) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out += k;
    out += '\t';
    out += buf;
    out += '\n';
  }
  return out;
}

double dist(const SparseVector& a, const SparseVector& b) {
  double s = a.norm2() + b.norm2() - 2.0 * a.inner(b);
  return std::sqrt(std::max(0.0, s));
}

}  // namespace hscomp
