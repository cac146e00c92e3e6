#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "opineq/core/random.hpp"

namespace opineq::range {

// Brute-force extremes of |<Ax, x>| over random unit vectors.
struct OracleResult {
  double max_abs = 0.0;  // lower bound for the numerical radius
  double min_abs = 0.0;  // upper bound for the Crawford number
  ComplexVector argmax;
  ComplexVector argmin;
};

inline OracleResult mc_oracle(const ComplexMatrix& a, std::size_t samples, std::uint64_t seed) {
  require_square(a, "mc_oracle");
  if (samples == 0) throw DomainError("mc_oracle: need at least one sample");
  const auto n = static_cast<std::size_t>(a.rows());
  Rng rng(seed);
  OracleResult r;
  r.min_abs = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < samples; ++s) {
    const ComplexVector x = unit_vector(rng, n);
    const double v = std::abs(quadratic_form(a, x));
    if (v > r.max_abs || r.argmax.size() == 0) {
      r.max_abs = v;
      r.argmax = x;
    }
    if (v < r.min_abs) {
      r.min_abs = v;
      r.argmin = x;
    }
  }
  return r;
}

namespace detail {

// Gradient ascent (sign = +1) or descent (sign = -1) of |<Ax, x>|^2 on the unit
// sphere, with step halving on failure. Uses only matrix-vector products.
inline ComplexVector polish(const ComplexMatrix& a, ComplexVector x, int sign, std::size_t steps) {
  auto value = [&](const ComplexVector& v) { return std::norm(quadratic_form(a, v)); };
  double f = value(x);
  double eta = 0.5 / std::max(1e-300, a.norm() * a.norm());
  for (std::size_t it = 0; it < steps && eta > 1e-18; ++it) {
    const Complex q = quadratic_form(a, x);
    // Wirtinger gradient of |q|^2 with respect to conj(x).
    ComplexVector g = std::conj(q) * (a * x) + q * (a.adjoint() * x);
    g -= x.dot(g).real() * x;
    const double gn = g.norm();
    if (gn < 1e-300) break;
    ComplexVector y = x + (static_cast<double>(sign) * eta) * g;
    y /= y.norm();
    const double fy = value(y);
    if ((sign > 0 && fy > f) || (sign < 0 && fy < f)) {
      x = y;
      f = fy;
      eta *= 1.5;
    } else {
      eta *= 0.5;
    }
  }
  return x;
}

}  // namespace detail

// mc_oracle followed by local polishing of the best `starts` samples of each
// kind. Still an eigensolver-free lower bound for omega and upper bound for c.
inline OracleResult mc_oracle_polished(const ComplexMatrix& a, std::size_t samples, std::uint64_t seed,
                                       std::size_t steps = 4000, std::size_t starts = 4) {
  require_square(a, "mc_oracle");
  if (samples == 0) throw DomainError("mc_oracle: need at least one sample");
  const auto n = static_cast<std::size_t>(a.rows());
  Rng rng(seed);
  struct Cand {
    double v;
    ComplexVector x;
  };
  std::vector<Cand> cands;
  cands.reserve(samples);
  for (std::size_t s = 0; s < samples; ++s) {
    ComplexVector x = unit_vector(rng, n);
    cands.push_back({std::abs(quadratic_form(a, x)), std::move(x)});
  }
  std::stable_sort(cands.begin(), cands.end(), [](const Cand& l, const Cand& r) { return l.v > r.v; });
  OracleResult r;
  r.min_abs = std::numeric_limits<double>::infinity();
  const std::size_t k = std::min(starts, cands.size());
  for (std::size_t i = 0; i < k; ++i) {
    const ComplexVector x = detail::polish(a, cands[i].x, +1, steps);
    const double v = std::abs(quadratic_form(a, x));
    if (v > r.max_abs || r.argmax.size() == 0) {
      r.max_abs = v;
      r.argmax = x;
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    const ComplexVector x = detail::polish(a, cands[cands.size() - 1 - i].x, -1, steps);
    const double v = std::abs(quadratic_form(a, x));
    if (v < r.min_abs) {
      r.min_abs = v;
      r.argmin = x;
    }
  }
  return r;
}

}  // namespace opineq::range
