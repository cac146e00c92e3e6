#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "opineq/harness/report.hpp"
#include "opineq/linops/compress.hpp"
#include "opineq/linops/functional.hpp"
#include "opineq/range/estimate.hpp"
#include "opineq/rkhs/berezin.hpp"

namespace opineq::harness {

// Instance generators and shared evaluation settings of the checks.

inline Rng instance_rng(const CheckReport& r, std::size_t i) { return Rng(derive_seed(r.seed, i)); }

/// Dimension drawn uniformly from [2, dims] (or 1 when dims is 1).
inline std::size_t draw_dim(Rng& rng, const CheckConfig& cfg) {
  if (cfg.dims <= 1) return 1;
  return 2 + rng.index(cfg.dims - 1);
}

/// Gaussian matrix scaled to unit spectral norm.
inline ComplexMatrix contraction(Rng& rng, std::size_t n) {
  const ComplexMatrix g = gaussian_matrix(rng, n, n);
  return g / op_norm(g);
}

/// Sweep settings for small random matrices: a coarse initial lattice, refined
/// adaptively by the same certification.
inline range::SweepOptions harness_sweep() {
  range::SweepOptions o;
  o.initial_directions = 32;
  return o;
}

inline Enclosure omega_enc(const ComplexMatrix& a, double tol = 1e-11) {
  return *range::analyze_range(a, tol, std::nullopt, harness_sweep()).omega;
}

inline Enclosure crawford_enc(const ComplexMatrix& a, double tol = 1e-11) {
  return *range::analyze_range(a, std::nullopt, tol, harness_sweep()).crawford;
}

/// Disc grid used by the Berezin property suites.
inline rkhs::DiscGrid property_grid() {
  rkhs::DiscGrid g = rkhs::DiscGrid::standard(0.9, 3, 16);
  g.rounds = 1;
  g.factor = 2;
  return g;
}

/// Dense block P on the first coordinates, the scalar s on the rest.
inline OperatorExpr block_operator(const ComplexMatrix& p, Complex s) {
  return OperatorExpr::direct_sum({OperatorExpr::dense(p), OperatorExpr::diagonal(SequenceRule::constant(s))});
}

/// f applied to the Hermitian block operator P + s.
inline OperatorExpr block_fun(const SpectralDecomposition& sd, double s, const RealFunction& f) {
  return block_operator(herm_fun(sd, f), f(s));
}

inline Json enc_json(const Enclosure& e) { return Json::array({e.lo, e.hi}); }

}  // namespace opineq::harness
