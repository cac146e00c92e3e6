#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/SVD>

#include "opineq/linops/compress.hpp"

namespace opineq::isom {

/// Weighted shift with ||z^n||^2 = n + 1, weights sqrt((n + 2) / (n + 1)).
inline OperatorExpr dirichlet_shift() { return OperatorExpr::weighted_shift(SequenceRule::dirichlet()); }

/// Analytic Toeplitz operator of the finite Blaschke product u * prod (z - a) / (1 - conj(a) z).
inline OperatorExpr inner_toeplitz(std::vector<Complex> zeros, Complex unimodular = 1.0) {
  return OperatorExpr::toeplitz(ToeplitzSymbol::blaschke(std::move(zeros), unimodular));
}

/// Largest entry of U*U - I.
inline double unitarity_defect(const ComplexMatrix& u) {
  if (u.size() == 0) return 0.0;
  return (u.adjoint() * u - identity(static_cast<std::size_t>(u.cols()))).cwiseAbs().maxCoeff();
}

/// Q (S^(m) + U) Q*, where S^(m) is the direct sum of m unweighted shifts, U a
/// unitary block placed first, and Q a unitary acting on the leading
/// coordinates (identity beyond them). Empty U or Q means none.
inline OperatorExpr wold_model(std::size_t multiplicity, const ComplexMatrix& unitary,
                               const ComplexMatrix& conjugator = ComplexMatrix()) {
  if (unitary.size() > 0) {
    require_square(unitary, "wold_model");
    if (unitarity_defect(unitary) > 1e-12) throw DomainError("wold_model: unitary part is not unitary");
  }
  if (conjugator.size() > 0) {
    require_square(conjugator, "wold_model");
    if (unitarity_defect(conjugator) > 1e-12) throw DomainError("wold_model: conjugator is not unitary");
  }
  std::vector<OperatorExpr> parts;
  if (unitary.size() > 0) parts.push_back(OperatorExpr::dense(unitary));
  for (std::size_t j = 0; j < multiplicity; ++j) parts.push_back(OperatorExpr::shift());
  if (parts.empty()) throw DomainError("wold_model: needs a shift or a unitary part");
  OperatorExpr core = parts.size() == 1 ? parts.front() : OperatorExpr::direct_sum(parts);
  if (conjugator.size() == 0) return core;

  OperatorExpr q = OperatorExpr::dense(conjugator);
  if (!core.dim()) {
    q = OperatorExpr::direct_sum({q, OperatorExpr::identity()});
  } else if (*core.dim() != static_cast<std::size_t>(conjugator.rows())) {
    throw DomainError("wold_model: conjugator size must match the finite model");
  }
  return OperatorExpr::product({q, core, q.adjoint()});
}

/// Orthonormal basis of the numerical kernel of V* on vectors supported in the first N indices.
struct WanderingBasis {
  ComplexMatrix basis;                 // N x dim, orthonormal columns
  std::vector<double> singular_values; // of the section of V*, ascending
  double residual = 0.0;               // largest ||V* b|| over basis columns, including cut bounds
  std::size_t dimension() const { return static_cast<std::size_t>(basis.cols()); }
};

/// Counts singular values <= tol of the (N + u) x N section of V*, u being the
/// upper bandwidth of V, which is exact on vectors supported in [0, N). The
/// count is accepted only when the next singular value is at least 10 tol.
inline WanderingBasis wandering_basis(const OperatorExpr& v, std::size_t n, double tol) {
  if (n == 0) throw DomainError("wandering_basis: N must be at least 1");
  if (!(tol > 0.0)) throw DomainError("wandering_basis: tol must be positive");
  if (v.dim()) n = std::min(n, *v.dim());
  const OperatorExpr vs = v.adjoint();
  std::size_t rows = opineq::detail::sat_add(n, vs.cut_band().lower);
  if (v.dim()) rows = std::min(rows, *v.dim());
  double cut = 0.0;
  const ComplexMatrix m = opineq::detail::compress_rect(vs, rows, n, cut);

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(Eigen::MatrixXcd(m), Eigen::ComputeFullV);
  const Eigen::VectorXd sv = svd.singularValues();  // descending, length min(rows, n)
  std::vector<double> asc(static_cast<std::size_t>(n), 0.0);
  for (Eigen::Index k = 0; k < sv.size(); ++k) asc[static_cast<std::size_t>(sv.size() - 1 - k)] = sv(k);
  // rows < n only for finite V, where the missing singular values are exact zeros.
  std::sort(asc.begin(), asc.end());

  std::size_t dim = 0;
  while (dim < asc.size() && asc[dim] <= tol) ++dim;
  if (dim < asc.size() && asc[dim] < 10.0 * tol)
    throw Inconclusive("wandering_basis: no singular-value gap at N = " + std::to_string(n) + " (sigma = " +
                       std::to_string(asc[dim]) + " within a factor 10 of tol); try a larger N");

  WanderingBasis out;
  out.singular_values = asc;
  const Eigen::MatrixXcd& vmat = svd.matrixV();
  out.basis = vmat.rightCols(static_cast<Eigen::Index>(dim));
  for (Eigen::Index j = 0; j < out.basis.cols(); ++j) {
    const ComplexVector r = m * out.basis.col(j);
    out.residual = std::max(out.residual, r.norm() + cut);
  }
  return out;
}

/// Ratios ||V*^k x|| / ||x|| for k = 0..K.
struct DecayProfile {
  std::vector<std::pair<std::size_t, double>> ratios;
  double cut_error = 0.0;  // accumulated truncation bound on V*^k x
  // No decay at all: the last ratio is 1 up to roundoff, evidence of a unitary part.
  bool not_pure() const { return !ratios.empty() && ratios.back().second >= 1.0 - 1e-12; }
  bool non_increasing(double tol = 1e-12) const {
    for (std::size_t i = 1; i < ratios.size(); ++i)
      if (ratios[i].second > ratios[i - 1].second + tol) return false;
    return true;
  }
};

inline DecayProfile purity_decay(const OperatorExpr& v, const ComplexVector& x, std::size_t k_max) {
  const double x_norm = x.norm();
  if (x.size() == 0 || x_norm == 0.0) throw DomainError("purity_decay: x must be nonzero");
  if (v.dim() && static_cast<std::size_t>(x.size()) > *v.dim())
    throw DomainError("purity_decay: x is longer than the operator dimension");
  DecayProfile out;
  out.ratios.emplace_back(0, 1.0);
  ComplexVector y = x;
  for (std::size_t k = 1; k <= k_max; ++k) {
    std::size_t len = opineq::detail::sat_add(static_cast<std::size_t>(y.size()), v.cut_band().upper);
    if (v.dim()) len = std::min(len, *v.dim());
    y = apply_adjoint(v, y, len, &out.cut_error);
    out.ratios.emplace_back(k, y.norm() / x_norm);
  }
  return out;
}

}  // namespace opineq::isom
