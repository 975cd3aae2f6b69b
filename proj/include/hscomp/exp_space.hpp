#pragma once

#include <functional>

#include "hscomp/sparse_vector.hpp"

namespace hscomp {

// Symmetrized truncation of Exp(z) = 1 (+) z (+) z@z/sqrt(2!) (+) ... .
// The order-k component is stored in the symmetric tensor basis: one entry
// per exponent vector (e_1..e_d) over the support of z, with coefficient
// prod z_i^{e_i} / sqrt(prod e_i!). Plain coefficientwise inner products of
// two truncations then reproduce sum_{k<=N} <z,z'>^k / k! without ever
// forming <z,z'> directly.
struct TruncatedExpVector {
  SparseVector v;
  int order = 0;
};

TruncatedExpVector truncated_exp(const SparseVector& zeta, int order);

// <Exp(z), Exp(z')> in closed form.
double exp_inner(const SparseVector& zeta, const SparseVector& zeta_prime);

// Scale so that ||xi_x - xi_y|| <= eps_bar whenever ||f(x)-f(y)|| <= rho_plus.
// Requires 0 < eps_bar < sqrt(2) and rho_plus > 0.
double choose_t(double eps_bar, double rho_plus_at_R);

// Unit-vector family xi_x = e^{-t||f(x)||^2} Exp(sqrt(2t) f(x)), represented
// implicitly: only inner products are ever computed.
struct KernelUnitFamily {
  std::function<SparseVector(const std::string&)> f;  // underlying embedding by element key
  double t = 1.0;

  double xi_inner(const std::string& x, const std::string& y) const;
  double xi_dist(const std::string& x, const std::string& y) const;

  // Inner product from already-evaluated embedding values.
  double xi_inner_vec(const SparseVector& fx, const SparseVector& fy) const;
};

}  // namespace hscomp
