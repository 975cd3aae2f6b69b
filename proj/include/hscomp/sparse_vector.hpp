#pragma once

#include <map>
#include <string>

#include "hscomp/group.hpp"

namespace hscomp {

// Finitely supported real vector keyed by structured strings. Zero
// coefficients are never stored. The optional space tag guards against
// mixing key spaces from unrelated embeddings.
class SparseVector {
 public:
  SparseVector() = default;
  explicit SparseVector(std::string space) : space_(std::move(space)) {}

  const std::string& space() const { return space_; }

  void set(const std::string& k, double v) {
    if (v == 0.0)
      c_.erase(k);
    else
      c_[k] = v;
  }
  void add(const std::string& k, double v) {
    if (v == 0.0) return;
    auto [it, fresh] = c_.emplace(k, v);
    if (!fresh) {
      it->second += v;
      if (it->second == 0.0) c_.erase(it);
    }
  }
  double get(const std::string& k) const {
    auto it = c_.find(k);
    return it == c_.end() ? 0.0 : it->second;
  }
  size_t support_size() const { return c_.size(); }
  const std::map<std::string, double>& coeffs() const { return c_; }

  double inner(const SparseVector& o) const;
  double norm2() const;
  double norm() const;

  SparseVector& operator+=(const SparseVector& o);
  SparseVector& operator-=(const SparseVector& o);
  SparseVector& operator*=(double s);
  friend SparseVector operator+(SparseVector a, const SparseVector& b) { return a += b; }
  friend SparseVector operator-(SparseVector a, const SparseVector& b) { return a -= b; }
  friend SparseVector operator*(double s, SparseVector a) { return a *= s; }

  // Debug serialization: one "key\tvalue" line per entry, keys sorted.
  std::string dump() const;

 private:
  void check_space(const SparseVector& o) const;
  std::string space_;
  std::map<std::string, double> c_;
};

double dist(const SparseVector& a, const SparseVector& b);

}  // namespace hscomp
