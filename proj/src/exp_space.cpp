#include "hscomp/exp_space.hpp"

#include <cmath>
#include <vector>

namespace hscomp {

namespace {

void emit_exponent_vectors(const std::vector<std::pair<std::string, double>>& support, size_t pos,
                           int remaining, std::string& key_acc, double coeff_acc,
                           SparseVector& out, int order) {
  if (pos == support.size()) {
    if (remaining == 0) out.add("T" + std::to_string(order) + "|" + key_acc, coeff_acc);
    return;
  }
  if (pos + 1 == support.size()) {
    // last slot takes the rest
    int e = remaining;
    double c = coeff_acc;
    for (int j = 1; j <= e; ++j) c *= support[pos].second / std::sqrt(static_cast<double>(j));
    std::string k = key_acc;
    if (e > 0) k += support[pos].first + "^" + std::to_string(e) + ";";
    out.add("T" + std::to_string(order) + "|" + k, c);
    return;
  }
  double c = coeff_acc;
  for (int e = 0; e <= remaining; ++e) {
    std::string k = key_acc;
    if (e > 0) k += support[pos].first + "^" + std::to_string(e) + ";";
    emit_exponent_vectors(support, pos + 1, remaining - e, k, c, out, order);
    c *= support[pos].second / std::sqrt(static_cast<double>(e + 1));
  }
}

double binom(double n, double k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= (n - i) / (i + 1);
  return r;
}

}  // namespace

TruncatedExpVector truncated_exp(const SparseVector& zeta, int order) {
  if (order < 0) throw ConfigError("truncation order must be nonnegative");
  std::vector<std::pair<std::string, double>> support(zeta.coeffs().begin(), zeta.coeffs().end());
  const double d = static_cast<double>(std::max<size_t>(support.size(), 1));
  double entries = 0.0;
  for (int k = 0; k <= order; ++k) entries += binom(k + d - 1, d - 1);
  if (entries > 2e6) throw BallTooLarge("truncation too deep");

  TruncatedExpVector t;
  t.order = order;
  t.v = SparseVector("exp:" + zeta.space());
  t.v.add("T0|", 1.0);
  for (int k = 1; k <= order; ++k) {
    if (support.empty()) break;  // 0-vector: only the order-0 component survives
    std::string acc;
    emit_exponent_vectors(support, 0, k, acc, 1.0, t.v, k);
  }
  return t;
}

double exp_inner(const SparseVector& zeta, const SparseVector& zeta_prime) {
  return std::exp(zeta.inner(zeta_prime));
}

double choose_t(double eps_bar, double rho_plus_at_R) {
  if (!(eps_bar > 0.0) || !(eps_bar < std::sqrt(2.0)))
    throw std::invalid_argument("eps_bar must lie in (0, sqrt(2))");
  if (!(rho_plus_at_R > 0.0)) throw std::invalid_argument("rho_plus must be positive");
  return -std::log(1.0 - 0.5 * eps_bar * eps_bar) / (rho_plus_at_R * rho_plus_at_R);
}

double KernelUnitFamily::xi_inner(const std::string& x, const std::string& y) const {
  if (x == y) return 1.0;
  SparseVector fx = f(x), fy = f(y);
  return xi_inner_vec(fx, fy);
}

double KernelUnitFamily::xi_inner_vec(const SparseVector& fx, const SparseVector& fy) const {
  double d2 = fx.norm2() + fy.norm2() - 2.0 * fx.inner(fy);
  return std::exp(-t * std::max(0.0, d2));
}

double KernelUnitFamily::xi_dist(const std::string& x, const std::string& y) const {
  return std::sqrt(std::max(0.0, 2.0 - 2.0 * xi_inner(x, y)));
}

}  // namespace hscomp
