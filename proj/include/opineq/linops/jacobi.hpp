#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "opineq/core/matrix.hpp"

namespace opineq {

// Eigenvalues in ascending order and matching orthonormal eigenvectors (columns).
struct SpectralDecomposition {
  RealVector eigenvalues;
  ComplexMatrix eigenvectors;

  ComplexMatrix reconstruct() const {
    return eigenvectors * eigenvalues.cast<Complex>().asDiagonal() * eigenvectors.adjoint();
  }
};

struct JacobiOptions {
  double relative_tol = 1e-13;  // stop when off-diagonal Frobenius mass <= tol * ||H||_F
  int max_sweeps = 100;
};

// Cyclic complex Jacobi method for a Hermitian matrix. Pivots are visited in
// row-major order (p < q), so results are deterministic.
inline SpectralDecomposition jacobi_eigh(const ComplexMatrix& h_in, JacobiOptions opt = {}) {
  require_square(h_in, "jacobi_eigh");
  require_finite(h_in, "jacobi_eigh");
  const Eigen::Index n = h_in.rows();
  const double scale = h_in.norm();
  if (hermitian_defect(h_in) > 1e-10 * std::max(scale, 1e-300))
    throw DomainError("jacobi_eigh: matrix is not Hermitian");

  ComplexMatrix a = 0.5 * (h_in + h_in.adjoint());
  ComplexMatrix v = identity(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) a(i, i) = a(i, i).real();

  auto off_mass = [&]() {
    double s = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i + 1; j < n; ++j) s += std::norm(a(i, j));
    return std::sqrt(2.0 * s);
  };

  const double threshold = opt.relative_tol * scale;
  int sweep = 0;
  while (off_mass() > threshold) {
    if (++sweep > opt.max_sweeps)
      throw NumericalFailure("jacobi_eigh: no convergence after " +
                             std::to_string(opt.max_sweeps) + " sweeps");
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        // Phase that makes the pivot real, then a real rotation.
        const Complex phase = apq / mag;
        const double tau = (aqq - app) / (2.0 * mag);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // J = [[c, s], [-s conj(phase), c conj(phase)]] acting on columns p, q.
        const Complex jpp = c, jpq = s;
        const Complex jqp = -s * std::conj(phase), jqq = c * std::conj(phase);

        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * jpp + akq * jqp;
          a(k, q) = akp * jpq + akq * jqq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
          a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * jpp + vkq * jqp;
          v(k, q) = vkp * jpq + vkq * jqq;
        }
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index x, Eigen::Index y) { return a(x, x).real() < a(y, y).real(); });

  SpectralDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    out.eigenvalues(k) = a(src, src).real();
    out.eigenvectors.col(k) = v.col(src);
  }
  return out;
}

}  // namespace opineq
