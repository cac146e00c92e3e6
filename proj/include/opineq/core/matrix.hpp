#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>

#include <Eigen/Dense>

#include "opineq/core/errors.hpp"

namespace opineq {

using Complex = std::complex<double>;

// Dense complex matrix. Entries are stored row-major, matching the JSON layout.
using ComplexMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

inline ComplexMatrix identity(std::size_t n) {
  return ComplexMatrix::Identity(static_cast<Eigen::Index>(n),
                                 static_cast<Eigen::Index>(n));
}

inline ComplexMatrix zeros(std::size_t r, std::size_t c) {
  return ComplexMatrix::Zero(static_cast<Eigen::Index>(r),
                             static_cast<Eigen::Index>(c));
}

inline ComplexVector basis_vector(std::size_t n, std::size_t k) {
  ComplexVector e = ComplexVector::Zero(static_cast<Eigen::Index>(n));
  e(static_cast<Eigen::Index>(k)) = 1.0;
  return e;
}

inline ComplexMatrix adjoint(const ComplexMatrix& a) { return a.adjoint(); }

inline bool all_finite(const ComplexMatrix& a) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const Complex z = a.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

inline void require_finite(const ComplexMatrix& a, const std::string& what) {
  if (!all_finite(a)) throw DomainError(what + ": matrix has non-finite entries");
}

inline void require_square(const ComplexMatrix& a, const std::string& what) {
  if (a.rows() != a.cols())
    throw DomainError(what + ": expected a square matrix, got " +
                      std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
}

// Frobenius norm of the skew-Hermitian part A - A*.
inline double hermitian_defect(const ComplexMatrix& a) {
  return (a - a.adjoint()).norm();
}

inline bool is_diagonal(const ComplexMatrix& a) {
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (i != j && a(i, j) != Complex(0.0)) return false;
  return true;
}

// <A x, x> for a square A.
inline Complex quadratic_form(const ComplexMatrix& a, const ComplexVector& x) {
  return x.dot(a * x);
}

// Kronecker product in the lexicographic basis e_i (x) e_j -> i * cols(B) + j.
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

// Integer power by repeated squaring.
inline ComplexMatrix matrix_power(const ComplexMatrix& a, unsigned n) {
  require_square(a, "matrix_power");
  ComplexMatrix result = identity(static_cast<std::size_t>(a.rows()));
  ComplexMatrix base = a;
  while (n > 0) {
    if (n & 1u) result = result * base;
    n >>= 1u;
    if (n > 0) base = base * base;
  }
  return result;
}

}  // namespace opineq
