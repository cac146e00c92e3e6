#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "opineq/core/matrix.hpp"

namespace opineq::range {

inline double cross(Complex o, Complex a, Complex b) {
  return (a.real() - o.real()) * (b.imag() - o.imag()) - (a.imag() - o.imag()) * (b.real() - o.real());
}

// Convex hull, counter-clockwise, without collinear interior points (Andrew's monotone chain).
inline std::vector<Complex> convex_hull(std::vector<Complex> pts) {
  std::sort(pts.begin(), pts.end(), [](Complex a, Complex b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Complex> hull(2 * pts.size());
  std::size_t k = 0;
  for (const Complex& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

inline double segment_distance(Complex p, Complex a, Complex b) {
  const Complex d = b - a;
  const double len2 = std::norm(d);
  if (len2 == 0.0) return std::abs(p - a);
  double t = ((p - a) * std::conj(d)).real() / len2;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(p - (a + t * d));
}

// Distance from the origin to the convex hull of the points.
inline double origin_distance(const std::vector<Complex>& pts) {
  const std::vector<Complex> hull = convex_hull(pts);
  if (hull.empty()) return 0.0;
  if (hull.size() == 1) return std::abs(hull.front());
  if (hull.size() >= 3) {
    bool inside = true;
    for (std::size_t i = 0; i < hull.size(); ++i)
      if (cross(hull[i], hull[(i + 1) % hull.size()], Complex(0.0)) < 0.0) {
        inside = false;
        break;
      }
    if (inside) return 0.0;
  }
  double best = std::abs(hull.front());
  for (std::size_t i = 0; i < hull.size(); ++i)
    best = std::min(best, segment_distance(Complex(0.0), hull[i], hull[(i + 1) % hull.size()]));
  return best;
}

// Largest modulus among the points.
inline double max_modulus(const std::vector<Complex>& pts) {
  double m = 0.0;
  for (const Complex& p : pts) m = std::max(m, std::abs(p));
  return m;
}

}  // namespace opineq::range
