#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "opineq/rkhs/model.hpp"

namespace opineq::rkhs {

// Polar sampling of the disc (rings x angles) with local refinement around the
// running maximizer. Discrete factors are sampled at indices 0 .. index_count - 1.
struct DiscGrid {
  std::vector<double> radii;     // ascending, outermost ring is r_max < 1
  std::size_t angles = 256;      // points per ring, at 2 pi k / angles
  std::size_t rounds = 2;        // local refinement rounds
  std::size_t factor = 4;        // subdivision per round
  std::size_t index_count = 256; // truncation of unbounded discrete models

  // Rings 1 - 2^-k, k = 1..rings, below r_max, then r_max itself.
  static DiscGrid standard(double r_max = 1.0 - 0x1p-10, std::size_t rings = 10, std::size_t angles = 256) {
    DiscGrid g;
    g.angles = angles;
    for (std::size_t k = 1; k <= rings; ++k) {
      const double r = 1.0 - std::ldexp(1.0, -static_cast<int>(k));
      if (r < r_max) g.radii.push_back(r);
    }
    g.radii.push_back(r_max);
    g.validate();
    return g;
  }

  double r_max() const { return radii.back(); }

  void validate() const {
    if (radii.empty()) throw DomainError("grid: needs at least one ring");
    if (angles == 0) throw DomainError("grid: needs at least one angle per ring");
    if (factor < 2 && rounds > 0) throw DomainError("grid: refinement factor must be at least 2");
    if (index_count == 0) throw DomainError("grid: index_count must be positive");
    for (std::size_t i = 0; i < radii.size(); ++i) {
      if (!(radii[i] >= 0.0 && radii[i] < 1.0))
        throw DomainError("grid: radii must lie in [0, 1)");
      if (i > 0 && !(radii[i] > radii[i - 1])) throw DomainError("grid: radii must be strictly ascending");
    }
  }

  // Base sample points in enumeration order (ring by ring, angle ascending).
  std::vector<Complex> disc_points() const {
    std::vector<Complex> pts;
    pts.reserve(radii.size() * angles);
    for (double r : radii) {
      if (r == 0.0) {
        pts.emplace_back(0.0, 0.0);
        continue;
      }
      for (std::size_t k = 0; k < angles; ++k)
        pts.push_back(std::polar(r, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(angles)));
    }
    return pts;
  }
};

namespace detail {

// Refinement window around a witness: angular half-width and radial gaps.
struct Window {
  double dphi;
  double down;
  double up;
};

inline Window initial_window(const DiscGrid& g, Complex w) {
  const double r = std::abs(w);
  const auto& rs = g.radii;
  auto it = std::lower_bound(rs.begin(), rs.end(), r - 1e-15);
  const std::size_t i = static_cast<std::size_t>(std::min<std::ptrdiff_t>(it - rs.begin(), static_cast<std::ptrdiff_t>(rs.size()) - 1));
  const double below = i > 0 ? rs[i - 1] : 0.0;
  const double above = i + 1 < rs.size() ? rs[i + 1] : rs[i];
  return {2.0 * std::numbers::pi / static_cast<double>(g.angles), r - below, above - r};
}

// (2 factor + 1)^2 points around w spanning the window, clipped to [0, r_max].
inline std::vector<Complex> refine_patch(const DiscGrid& g, Complex w, const Window& win) {
  const double r0 = std::abs(w);
  const double phi0 = r0 == 0.0 ? 0.0 : std::arg(w);
  const auto f = static_cast<int>(g.factor);
  std::vector<double> rs;
  for (int t = -f; t <= f; ++t) {
    const double r = t < 0 ? r0 + win.down * t / f : r0 + win.up * t / f;
    if (r >= 0.0 && r <= g.r_max()) rs.push_back(r);
  }
  std::vector<Complex> pts;
  for (double r : rs)
    for (int t = -f; t <= f; ++t) pts.push_back(std::polar(r, phi0 + win.dphi * t / f));
  return pts;
}

inline Window shrink(const Window& w, std::size_t factor) {
  const auto f = static_cast<double>(factor);
  return {w.dphi / f, w.down / f, w.up / f};
}

}  // namespace detail

}  // namespace opineq::rkhs
