#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/LU>

#include "opineq/core/matrix.hpp"

namespace opineq::range {

// Extreme eigenpairs of H(theta) = (e^{-i theta} A + e^{i theta} A*) / 2.
// lambda_max is the support value of W(A) in direction theta, -lambda_min the
// support value in direction theta + pi.
struct SupportSample {
  double theta = 0.0;
  double lambda_max = 0.0;
  double lambda_min = 0.0;
  ComplexVector top;     // unit eigenvector for lambda_max (empty if not requested)
  ComplexVector bottom;  // unit eigenvector for lambda_min (empty if not requested)
};

inline ComplexMatrix hermitian_part(const ComplexMatrix& a, double theta) {
  const Complex ph = std::polar(1.0, -theta);
  ComplexMatrix h = 0.5 * (ph * a + std::conj(ph) * a.adjoint());
  return h;
}

namespace detail {

// Unit eigenvector for an eigenvalue lam known to full accuracy, by two steps
// of inverse iteration. Used for large matrices, where Eigen's eigenvector
// accumulation dominates the cost of a direction.
inline ComplexVector inverse_iteration(const ComplexMatrix& h, double lam) {
  const Eigen::Index n = h.rows();
  const double scale = std::max(h.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());
  const double shift = lam + 64.0 * std::numeric_limits<double>::epsilon() * scale * static_cast<double>(n);
  ComplexMatrix m = h;
  m.diagonal().array() -= shift;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(m);
  ComplexVector x(n);
  for (Eigen::Index i = 0; i < n; ++i) x(i) = Complex(1.0 + 0.618 * static_cast<double>(i % 7), 0.1 * static_cast<double>(i % 3));
  x.normalize();
  for (int it = 0; it < 3; ++it) {
    ComplexVector y = lu.solve(x);
    const double nrm = y.norm();
    if (!std::isfinite(nrm) || nrm == 0.0) break;
    x = y / nrm;
  }
  return x;
}

inline constexpr Eigen::Index kInverseIterationSize = 24;

}  // namespace detail

inline SupportSample support_sample(const ComplexMatrix& a, double theta, bool vectors = true) {
  require_square(a, "support_sample");
  const Eigen::MatrixXcd h = hermitian_part(a, theta);
  const Eigen::Index n = h.rows();
  const bool direct = vectors && n < detail::kInverseIterationSize;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
      h, direct ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw NumericalFailure("support_sample: eigensolver did not converge");
  SupportSample s;
  s.theta = theta;
  s.lambda_max = es.eigenvalues()(n - 1);
  s.lambda_min = es.eigenvalues()(0);
  if (direct) {
    s.top = es.eigenvectors().col(n - 1);
    s.bottom = es.eigenvectors().col(0);
  } else if (vectors) {
    s.top = detail::inverse_iteration(h, s.lambda_max);
    s.bottom = detail::inverse_iteration(-h, -s.lambda_min);
  }
  return s;
}

// Values of the support function h in a direction and its opposite, with the
// corresponding boundary points when available.
struct DirectionPair {
  double h = 0.0;           // h(theta)
  double h_opposite = 0.0;  // h(theta + pi)
  Complex point{};          // support point in direction theta
  Complex point_opposite{};
  bool has_points = false;
};

// Support function evaluator for one matrix. Diagonal matrices are handled in
// O(n) per direction, everything else through support_sample.
class SupportOracle {
 public:
  SupportOracle(const ComplexMatrix& a, bool want_points)
      : a_(a), want_points_(want_points), diagonal_(is_diagonal(a)) {
    if (diagonal_) diag_ = a.diagonal();
  }

  bool diagonal() const { return diagonal_; }

  DirectionPair operator()(double theta) const {
    DirectionPair out;
    if (diagonal_) {
      const Complex ph = std::polar(1.0, -theta);
      double hi = -std::numeric_limits<double>::infinity();
      double lo = std::numeric_limits<double>::infinity();
      Eigen::Index ihi = 0, ilo = 0;
      for (Eigen::Index i = 0; i < diag_.size(); ++i) {
        const double v = (ph * diag_(i)).real();
        if (v > hi) { hi = v; ihi = i; }
        if (v < lo) { lo = v; ilo = i; }
      }
      out.h = hi;
      out.h_opposite = -lo;
      out.point = diag_(ihi);
      out.point_opposite = diag_(ilo);
      out.has_points = true;
      return out;
    }
    const SupportSample s = support_sample(a_, theta, want_points_);
    out.h = s.lambda_max;
    out.h_opposite = -s.lambda_min;
    if (want_points_) {
      out.point = quadratic_form(a_, s.top);
      out.point_opposite = quadratic_form(a_, s.bottom);
      out.has_points = true;
    }
    return out;
  }

 private:
  const ComplexMatrix& a_;
  bool want_points_;
  bool diagonal_;
  ComplexVector diag_;
};

}  // namespace opineq::range
