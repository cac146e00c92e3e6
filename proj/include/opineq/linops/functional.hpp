#pragma once

#include <cmath>
#include <functional>
#include <sstream>

#include "opineq/linops/jacobi.hpp"

namespace opineq {

using RealFunction = std::function<double(double)>;

// Q f(Lambda) Q* for Hermitian H.
inline ComplexMatrix herm_fun(const SpectralDecomposition& sd, const RealFunction& f) {
  RealVector fv(sd.eigenvalues.size());
  for (Eigen::Index k = 0; k < fv.size(); ++k) {
    const double lam = sd.eigenvalues(k);
    const double y = f(lam);
    if (!std::isfinite(y)) {
      std::ostringstream os;
      os.precision(17);
      os << "herm_fun: function undefined at eigenvalue " << lam;
      throw DomainError(os.str());
    }
    fv(k) = y;
  }
  ComplexMatrix out = sd.eigenvectors * fv.cast<Complex>().asDiagonal() * sd.eigenvectors.adjoint();
  return 0.5 * (out + out.adjoint());
}

inline ComplexMatrix herm_fun(const ComplexMatrix& h, const RealFunction& f) {
  require_square(h, "herm_fun");
  if (hermitian_defect(h) > 1e-10 * std::max(h.norm(), 1e-300))
    throw DomainError("herm_fun: matrix is not Hermitian");
  return herm_fun(jacobi_eigh(h), f);
}

namespace detail {

// Eigenvalues of a PSD matrix with roundoff negatives clamped to zero.
inline SpectralDecomposition psd_spectrum(const ComplexMatrix& p, const char* who) {
  SpectralDecomposition sd = jacobi_eigh(p);
  const double scale = sd.eigenvalues.size() ? sd.eigenvalues.cwiseAbs().maxCoeff() : 0.0;
  for (Eigen::Index k = 0; k < sd.eigenvalues.size(); ++k) {
    double& lam = sd.eigenvalues(k);
    if (lam < 0.0) {
      if (lam < -1e-12 * scale) {
        std::ostringstream os;
        os.precision(17);
        os << who << ": matrix is not positive semidefinite (eigenvalue " << lam << ")";
        throw DomainError(os.str());
      }
      lam = 0.0;
    }
  }
  return sd;
}

inline double power_with_zero(double t, double p) {
  if (t == 0.0) return p == 0.0 ? 1.0 : 0.0;
  return std::pow(t, p);
}

}  // namespace detail

// P^p for PSD P and p >= 0 (P^0 = I).
inline ComplexMatrix frac_power(const ComplexMatrix& p, double expo) {
  require_square(p, "frac_power");
  if (!(expo >= 0.0)) throw DomainError("frac_power: exponent must be nonnegative");
  if (hermitian_defect(p) > 1e-10 * std::max(p.norm(), 1e-300))
    throw DomainError("frac_power: matrix is not Hermitian");
  const auto sd = detail::psd_spectrum(p, "frac_power");
  return herm_fun(sd, [expo](double t) { return detail::power_with_zero(t, expo); });
}

// |A| = (A*A)^{1/2}.
inline ComplexMatrix abs_op(const ComplexMatrix& a) {
  require_square(a, "abs_op");
  ComplexMatrix g = a.adjoint() * a;
  g = 0.5 * (g + g.adjoint()).eval();
  return frac_power(g, 0.5);
}

// |A|^s = (A*A)^{s/2}, with |A|^0 = I.
inline ComplexMatrix abs_power(const ComplexMatrix& a, double s) {
  require_square(a, "abs_power");
  ComplexMatrix g = a.adjoint() * a;
  g = 0.5 * (g + g.adjoint()).eval();
  return frac_power(g, 0.5 * s);
}

// Largest eigenvalue of a Hermitian matrix, eigenvalues only.
inline double lambda_max(const ComplexMatrix& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalFailure("lambda_max: eigensolver failed");
  return es.eigenvalues()(es.eigenvalues().size() - 1);
}

// Largest singular value, from the top eigenvalue of the smaller Gram matrix.
inline double op_norm(const ComplexMatrix& a) {
  require_finite(a, "op_norm");
  if (a.size() == 0) return 0.0;
  const double scale = a.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  const ComplexMatrix b = a / scale;
  ComplexMatrix g = a.rows() >= a.cols() ? ComplexMatrix(b.adjoint() * b) : ComplexMatrix(b * b.adjoint());
  g = 0.5 * (g + g.adjoint()).eval();
  return scale * std::sqrt(std::max(0.0, lambda_max(g)));
}

}  // namespace opineq
