#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "opineq/range/support.hpp"

namespace opineq::range {

struct BoundaryPoint {
  double theta = 0.0;
  Complex point{};      // <A x, x> for the top eigenvector x of H(theta): inner polygon vertex
  double support = 0.0; // lambda_max(H(theta)): the line Re(e^{-i theta} z) = support bounds W
};

struct RangeBoundary {
  std::vector<BoundaryPoint> samples;
  std::vector<Complex> outer;  // vertices of the polygon cut out by the support lines
};

// Samples at theta_k = 2 pi k / n_theta, k = 0 .. n_theta - 1.
inline RangeBoundary range_boundary(const ComplexMatrix& a, std::size_t n_theta) {
  require_square(a, "range_boundary");
  require_finite(a, "range_boundary");
  if (n_theta < 3) throw DomainError("range_boundary: need at least 3 directions");
  const SupportOracle oracle(a, true);
  RangeBoundary out;
  out.samples.reserve(n_theta);
  for (std::size_t k = 0; k < n_theta; ++k) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n_theta);
    const DirectionPair d = oracle(theta);
    out.samples.push_back({theta, d.point, d.h});
  }
  // Consecutive support lines meet at the outer vertices (needs gaps < pi).
  for (std::size_t k = 0; k < n_theta; ++k) {
    const auto& s = out.samples[k];
    const auto& t = out.samples[(k + 1) % n_theta];
    const double ca = std::cos(s.theta), sa = std::sin(s.theta);
    const double cb = std::cos(t.theta), sb = std::sin(t.theta);
    const double det = ca * sb - sa * cb;
    if (std::abs(det) < 1e-300) {
      out.outer.push_back(s.point);
      continue;
    }
    const double x = (s.support * sb - t.support * sa) / det;
    const double y = (ca * t.support - cb * s.support) / det;
    out.outer.emplace_back(x, y);
  }
  return out;
}

}  // namespace opineq::range
