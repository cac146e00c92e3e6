#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "opineq/linops/compress.hpp"

namespace opineq {

struct TwoIsometryDefect {
  double defect = 0.0;     // max |entry| of V*^2 V^2 + I - 2 V*V on the window
  std::size_t window = 0;  // leading indices on which the section is exact
};

// Evaluates V*^2 V^2 + I - 2 V*V on the N x N section. For infinite V with
// lower bandwidth L the last 2L indices see truncated columns of V^2 and are
// excluded.
inline TwoIsometryDefect two_isometry_report(const OperatorExpr& v, std::size_t n) {
  if (n == 0) throw DomainError("two_isometry_defect: N must be at least 1");
  if (!v.column_exact())
    throw UnsupportedOperator("two_isometry_defect: operator columns are not finitely supported");
  std::size_t window = n;
  if (v.dim() && n >= *v.dim()) {
    n = *v.dim();
    window = n;
  } else {
    const std::size_t lower = v.band().lower;
    if (2 * lower >= n)
      throw DomainError("two_isometry_defect: N = " + std::to_string(n) +
                        " leaves no exact interior window");
    window = n - 2 * lower;
  }
  const ComplexMatrix m = compress(v, n);
  const ComplexMatrix m2 = m * m;
  const ComplexMatrix d = m2.adjoint() * m2 + identity(n) - 2.0 * (m.adjoint() * m);
  const auto w = static_cast<Eigen::Index>(window);
  return {d.topLeftCorner(w, w).cwiseAbs().maxCoeff(), window};
}

inline double two_isometry_defect(const OperatorExpr& v, std::size_t n) {
  return two_isometry_report(v, n).defect;
}

}  // namespace opineq
