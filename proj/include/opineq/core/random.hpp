#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "opineq/core/matrix.hpp"

namespace opineq {

// SplitMix64 finalizer; used to derive independent seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed of instance `index` under master seed `master`.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(splitmix64(master) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

// Deterministic generator. The standard distributions are implementation
// defined, so uniforms and normals are produced from raw engine output.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t bits() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  // Uniform integer in [0, n).
  std::size_t index(std::size_t n) {
    return static_cast<std::size_t>(uniform() * static_cast<double>(n));
  }

  // Standard normal via Box-Muller, caching the second variate.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(t);
    has_spare_ = true;
    return r * std::cos(t);
  }

  // Standard complex normal: E|z|^2 = 1.
  Complex complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
  }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

inline ComplexMatrix gaussian_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
  ComplexMatrix g = zeros(rows, cols);
  for (Eigen::Index i = 0; i < g.rows(); ++i)
    for (Eigen::Index j = 0; j < g.cols(); ++j) g(i, j) = rng.complex_normal();
  return g;
}

inline ComplexVector gaussian_vector(Rng& rng, std::size_t n) {
  ComplexVector v(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = rng.complex_normal();
  return v;
}

// Uniformly distributed point on the complex unit sphere.
inline ComplexVector unit_vector(Rng& rng, std::size_t n) {
  ComplexVector v = gaussian_vector(rng, n);
  double nrm = v.norm();
  while (nrm == 0.0) {
    v = gaussian_vector(rng, n);
    nrm = v.norm();
  }
  return v / nrm;
}

// G*G + eps I, scaled to unit spectral norm.
inline ComplexMatrix psd_matrix(Rng& rng, std::size_t n, double eps = 1e-6) {
  const ComplexMatrix g = gaussian_matrix(rng, n, n);
  ComplexMatrix p = g.adjoint() * g;
  p += eps * identity(n);
  p = 0.5 * (p + p.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(p, Eigen::EigenvaluesOnly);
  return p / es.eigenvalues().maxCoeff();
}

inline ComplexMatrix hermitian_matrix(Rng& rng, std::size_t n) {
  const ComplexMatrix g = gaussian_matrix(rng, n, n);
  return 0.5 * (g + g.adjoint());
}

// Modified Gram-Schmidt on the columns of a Gaussian matrix, left to right.
inline ComplexMatrix unitary_matrix(Rng& rng, std::size_t n) {
  ComplexMatrix q = gaussian_matrix(rng, n, n);
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index k = 0; k < j; ++k) {
        const Complex r = q.col(k).dot(q.col(j));
        q.col(j) -= r * q.col(k);
      }
    }
    q.col(j) /= q.col(j).norm();
  }
  return q;
}

}  // namespace opineq
