#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "opineq/core/matrix.hpp"

namespace opineq {

// Taylor coefficients of a finite Blaschke product with a certified tail.
struct BlaschkeExpansion {
  std::vector<Complex> coeffs;  // c_0 .. c_{N-1}
  double tail_l2 = 0.0;         // (sum_{k >= N} |c_k|^2)^{1/2} <= tail_l2
};

namespace detail {

inline void require_open_disc(const std::vector<Complex>& zeros) {
  for (const Complex& a : zeros)
    if (!(std::abs(a) < 1.0))
      throw DomainError("blaschke: zero outside the open unit disc");
}

// Cauchy estimate on |z| = rho for a Blaschke product:
// |c_k| <= M(rho) rho^{-k},  M(rho) = prod (rho + |a|) / (1 - rho |a|).
// Returns min over a grid of rho in (1, 1/max|a|) of the requested tail bound.
// order = 2 gives the l2 tail, order = 1 the l1 tail.
inline double blaschke_tail(const std::vector<Complex>& zeros, std::size_t n, int order) {
  double q = 0.0;
  for (const Complex& a : zeros) q = std::max(q, std::abs(a));
  if (q == 0.0) return n > zeros.size() ? 0.0 : std::numeric_limits<double>::infinity();
  const double rho_max = 1.0 / q;
  double best = std::numeric_limits<double>::infinity();
  for (int i = 1; i < 64; ++i) {
    const double rho = 1.0 + (rho_max - 1.0) * i / 64.0;
    double log_m = 0.0;
    for (const Complex& a : zeros) {
      const double r = std::abs(a);
      log_m += std::log(rho + r) - std::log(1.0 - rho * r);
    }
    double bound;
    if (order == 2) {
      bound = std::exp(log_m - static_cast<double>(n) * std::log(rho)) /
              std::sqrt(1.0 - 1.0 / (rho * rho));
    } else {
      bound = std::exp(log_m - static_cast<double>(n) * std::log(rho)) / (1.0 - 1.0 / rho);
    }
    best = std::min(best, bound);
  }
  return best;
}

}  // namespace detail

// First N coefficients of u * prod_j (z - a_j) / (1 - conj(a_j) z).
inline BlaschkeExpansion blaschke_coeffs(const std::vector<Complex>& zeros, std::size_t n,
                                         Complex unimodular = 1.0) {
  detail::require_open_disc(zeros);
  std::vector<Complex> c(n, Complex(0.0));
  if (n > 0) c[0] = unimodular;
  std::vector<Complex> g(n);
  for (const Complex& a : zeros) {
    // g = c / (1 - conj(a) z), then c = (z - a) g.
    const Complex ab = std::conj(a);
    for (std::size_t k = 0; k < n; ++k) g[k] = c[k] + (k > 0 ? ab * g[k - 1] : Complex(0.0));
    for (std::size_t k = 0; k < n; ++k) c[k] = (k > 0 ? g[k - 1] : Complex(0.0)) - a * g[k];
  }
  return {std::move(c), detail::blaschke_tail(zeros, n, 2)};
}

// Value of u * prod (z - a_j)/(1 - conj(a_j) z).
inline Complex blaschke_eval(const std::vector<Complex>& zeros, Complex z,
                             Complex unimodular = 1.0) {
  Complex v = unimodular;
  for (const Complex& a : zeros) v *= (z - a) / (1.0 - std::conj(a) * z);
  return v;
}

}  // namespace opineq
