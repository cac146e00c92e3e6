#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "opineq/linops/functional.hpp"
#include "opineq/range/estimate.hpp"

namespace opineq {

struct CrossCheckReport {
  // omega(sqrt(S)) against sqrt(omega(S)) for S = sum A_i* X A_i.
  double sqrt_lhs = 0.0;
  double sqrt_rhs = 0.0;
  double equality_gap = 0.0;
  // omega(A)^p <= omega(|A|^p).
  double p = 2.0;
  double lemma_lhs = 0.0;
  double lemma_rhs = 0.0;
  double lemma_margin = 0.0;
};

inline CrossCheckReport mat_fun_cross_checks(const ComplexMatrix& a, const ComplexMatrix& x,
                                             const std::vector<ComplexMatrix>& ai, double p = 2.0,
                                             double tol = 1e-13) {
  require_square(a, "mat_fun_cross_checks");
  require_square(x, "mat_fun_cross_checks");
  if (ai.empty()) throw DomainError("mat_fun_cross_checks: need at least one A_i");
  if (!(p > 0.0)) throw DomainError("mat_fun_cross_checks: p must be positive");
  if (hermitian_defect(x) > 1e-10 * std::max(x.norm(), 1e-300))
    throw DomainError("mat_fun_cross_checks: X is not Hermitian");
  detail::psd_spectrum(x, "mat_fun_cross_checks");

  ComplexMatrix s = zeros(static_cast<std::size_t>(ai.front().cols()),
                          static_cast<std::size_t>(ai.front().cols()));
  for (const auto& m : ai) {
    if (m.rows() != x.rows() || m.cols() != s.cols())
      throw DomainError("mat_fun_cross_checks: A_i shapes do not match X");
    s += m.adjoint() * x * m;
  }
  s = 0.5 * (s + s.adjoint());

  CrossCheckReport r;
  r.sqrt_lhs = range::omega(frac_power(s, 0.5), tol);
  r.sqrt_rhs = std::sqrt(range::omega(s, tol));
  r.equality_gap = std::abs(r.sqrt_lhs - r.sqrt_rhs);
  r.p = p;
  r.lemma_lhs = std::pow(range::omega(a, tol), p);
  r.lemma_rhs = range::omega(abs_power(a, p), tol);
  r.lemma_margin = r.lemma_rhs - r.lemma_lhs;
  return r;
}

}  // namespace opineq
