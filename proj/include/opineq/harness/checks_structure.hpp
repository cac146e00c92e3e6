#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "opineq/harness/instances.hpp"
#include "opineq/isom/isom.hpp"
#include "opineq/linops/two_isometry.hpp"

namespace opineq::harness::checks {

namespace detail {

inline std::size_t capped(const CheckConfig& cfg, std::size_t cap) { return std::min(cfg.instances, cap); }

inline std::vector<Complex> random_zeros(Rng& rng, std::size_t degree, double r_max) {
  std::vector<Complex> z;
  for (std::size_t k = 0; k < degree; ++k)
    z.push_back(std::polar(rng.uniform(0.0, r_max), rng.uniform(0.0, 2.0 * std::numbers::pi)));
  return z;
}

inline Json zeros_json(const std::vector<Complex>& z) {
  Json j = Json::array();
  for (const Complex& c : z) j.push_back(io::complex_to_json(c));
  return j;
}

// Compressions of one operator at increasing N with the enclosures of omega
// and c at each size.
struct CompressionRun {
  std::vector<std::size_t> sizes;
  std::vector<Enclosure> omega;
  std::vector<Enclosure> crawford;
};

inline CompressionRun compression_run(const OperatorExpr& op, const std::vector<std::size_t>& sizes, bool with_omega,
                                      bool with_crawford, double tol) {
  CompressionRun run;
  run.sizes = sizes;
  for (std::size_t n : sizes) {
    const ComplexMatrix c = compress(op, n);
    if (with_omega) run.omega.push_back(omega_enc(c, tol));
    if (with_crawford) run.crawford.push_back(crawford_enc(c, tol));
  }
  return run;
}

inline Json enc_list(const std::vector<Enclosure>& v) {
  Json j = Json::array();
  for (const auto& e : v) j.push_back(e.mid());
  return j;
}

// omega_N <= limit, omega_N increasing in N, limit - omega_N <= gap at the largest N.
inline void record_omega_limit(MarginLog& log, std::size_t i, const CompressionRun& run, double limit, double gap) {
  for (std::size_t k = 0; k < run.sizes.size(); ++k) {
    const std::size_t n = run.sizes[k];
    const Enclosure& w = run.omega[k];
    log.record(i, limit - w.lo, [&] { return Json{{"N", n}, {"omega", enc_json(w)}, {"limit", limit}}; });
    if (k > 0)
      log.record(i, w.hi - run.omega[k - 1].lo,
                 [&] { return Json{{"N", n}, {"omega", enc_json(w)}, {"previous", enc_json(run.omega[k - 1])}}; });
  }
  const Enclosure& last = run.omega.back();
  log.record(i, gap - (limit - last.hi),
             [&] { return Json{{"N", run.sizes.back()}, {"omega", enc_json(last)}, {"limit", limit}, {"gap", gap}}; });
}

// c_N non-increasing in N.
inline void record_crawford_decrease(MarginLog& log, std::size_t i, const CompressionRun& run) {
  for (std::size_t k = 1; k < run.sizes.size(); ++k)
    log.record(i, run.crawford[k - 1].hi - run.crawford[k].lo, [&] {
      return Json{{"N", run.sizes[k]}, {"crawford", enc_json(run.crawford[k])}, {"previous", enc_json(run.crawford[k - 1])}};
    });
}

// Supremum of |phi| on the unit circle for a polynomial symbol, as an enclosure
// from 2^14 samples and the Lipschitz bound sum k |c_k|.
inline Enclosure symbol_sup(const std::vector<Complex>& c) {
  constexpr std::size_t kSamples = 1u << 14;
  const ToeplitzSymbol s = ToeplitzSymbol::polynomial(c);
  double best = 0.0, lip = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k) lip += static_cast<double>(k) * std::abs(c[k]);
  for (std::size_t j = 0; j < kSamples; ++j)
    best = std::max(best, std::abs(s.evaluate(std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / kSamples))));
  return {best, best + lip * std::numbers::pi / static_cast<double>(kSamples) + 1e-15 * best};
}

}  // namespace detail

// Shift compressions and Wold models S^(m) + U conjugated on the leading coordinates.
inline void shift_crawford(CheckReport& r, const CheckConfig& cfg) {
  const std::vector<std::size_t> sizes{2, 4, 8, 16, 32, 64};
  const std::size_t wold_n = 32;
  const std::size_t count = detail::capped(cfg, 40);
  r.config = {{"shift_sizes", sizes}, {"wold_instances", count}, {"wold_N", wold_n}, {"slack", 1e-10}};
  MarginLog log(r);
  const auto run = detail::compression_run(OperatorExpr::shift(), sizes, false, true, 1e-11);
  for (std::size_t k = 0; k < sizes.size(); ++k)
    log.record(0, 1e-10 - run.crawford[k].hi, [&] { return Json{{"N", sizes[k]}, {"crawford", enc_json(run.crawford[k])}}; });
  for (std::size_t i = 1; i <= count; ++i) {
    Rng rng = instance_rng(r, i);
    const std::size_t m = 1 + rng.index(3);
    const std::size_t u = rng.index(3);
    const std::size_t q = 2 + rng.index(4);
    const OperatorExpr v = isom::wold_model(m, u ? unitary_matrix(rng, u) : ComplexMatrix(), unitary_matrix(rng, q));
    const Enclosure c = crawford_enc(compress(v, wold_n));
    log.record(i, 1e-10 - c.hi, [&] { return Json{{"multiplicity", m}, {"unitary_size", u}, {"conjugator_size", q}, {"crawford", enc_json(c)}}; });
  }
  r.instances = count + 1;
}

// Instance 0 is the single zero 1/2; the others have 1 to 3 random zeros of
// modulus at most 0.6 and a random unimodular factor.
inline void toeplitz_inner(CheckReport& r, const CheckConfig& cfg) {
  const std::vector<std::size_t> sizes{8, 16, 32, 64, 128};
  const std::size_t count = detail::capped(cfg, 3);
  r.config = {{"sizes", sizes}, {"instances_cap", 3}, {"zero_modulus_max", 0.6}, {"omega_gap", 0.01},
              {"crawford_max", 0.05}, {"wandering_tol", 1e-8}, {"omega_tol", 1e-9}};
  MarginLog log(r);
  const rkhs::RkhsModel hardy = rkhs::RkhsModel::hardy();
  for (std::size_t i = 0; i < count; ++i) {
    Rng rng = instance_rng(r, i);
    std::vector<Complex> zeros{0.5};
    Complex u = 1.0;
    if (i > 0) {
      zeros = detail::random_zeros(rng, 1 + rng.index(3), 0.6);
      u = std::polar(1.0, rng.uniform(0.0, 2.0 * std::numbers::pi));
    }
    const OperatorExpr t = isom::inner_toeplitz(zeros, u);
    const auto run = detail::compression_run(t, sizes, true, true, 1e-9);
    detail::record_omega_limit(log, i, run, 1.0, 0.01);
    detail::record_crawford_decrease(log, i, run);
    const Enclosure& c_last = run.crawford.back();
    log.record(i, 0.05 - c_last.lo, [&] { return Json{{"N", sizes.back()}, {"crawford", enc_json(c_last)}}; });

    for (const Complex& z : zeros) {
      const auto b = rkhs::berezin_transform(t, hardy, z);
      log.record_equal(i, std::abs(b.value), 1e-10 + b.error_bound,
                       [&] { return Json{{"zero", io::complex_to_json(z)}, {"berezin", io::complex_to_json(b.value)}}; });
    }
    try {
      const auto wb = isom::wandering_basis(t, sizes.back(), 1e-8);
      const double diff = static_cast<double>(wb.dimension()) - static_cast<double>(zeros.size());
      log.record_equal(i, diff, 0.5, [&] { return Json{{"wandering_dimension", wb.dimension()}, {"degree", zeros.size()}}; });
    } catch (const Inconclusive& e) {
      log.record(i, -1.0, [&] { return Json{{"wandering", e.what()}}; });
    }
    if (i == 0) {
      r.stats["omega"] = detail::enc_list(run.omega);
      r.stats["crawford"] = detail::enc_list(run.crawford);
      const Enclosure w2 = omega_enc(compress(OperatorExpr::product({t, t}), sizes.back()), 1e-9);
      log.record(i, 1.0 - w2.lo, [&] { return Json{{"power", 2}, {"omega", enc_json(w2)}}; });
      log.record(i, 0.01 - (1.0 - w2.hi), [&] { return Json{{"power", 2}, {"omega", enc_json(w2)}, {"gap", 0.01}}; });
      r.stats["omega_square_N128"] = w2.mid();
    }
    r.stats["zeros"].push_back(detail::zeros_json(zeros));
  }
  // theta = 1: T is the identity and c = 1 at every N.
  const Enclosure c1 = crawford_enc(compress(isom::inner_toeplitz({}, 1.0), 16));
  log.record_equal(count, c1.mid() - 1.0, 1e-12, [&] { return Json{{"symbol", "1"}, {"crawford", enc_json(c1)}}; });
  r.instances = count + 1;
}

// omega(V) = 1 for pure two-isometries, tested on Dirichlet-shift compressions.
inline void two_isometry_omega(CheckReport& r, const CheckConfig&) {
  const std::vector<std::size_t> sizes{4, 8, 16, 32, 64};
  r.config = {{"operator", "dirichlet_shift"}, {"sizes", sizes}, {"omega_tol", 1e-12}};
  MarginLog log(r);
  const OperatorExpr v = isom::dirichlet_shift();
  Json omegas = Json::array();
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    const Enclosure w = *range::numerical_radius(compress(v, sizes[k]), 1e-12).omega;
    omegas.push_back(w.mid());
    log.record(k, 1.0 - w.lo, [&] { return Json{{"N", sizes[k]}, {"omega", enc_json(w)}}; });
  }
  // Largest root of x^4 - (29/24) x^2 + 1/6.
  const double b = 29.0 / 24.0;
  const double oracle = std::sqrt(0.5 * (b + std::sqrt(b * b - 4.0 / 6.0)));
  r.instances = sizes.size();
  r.stats["omega"] = std::move(omegas);
  r.stats["oracle_N4"] = oracle;
  r.stats["defect_N64"] = two_isometry_defect(v, 64);
}

// Unit-norm two-isometries are isometries: shift, inner Toeplitz and Wold models.
inline void two_isometry_unit_norm_omega(CheckReport& r, const CheckConfig& cfg) {
  const std::vector<std::size_t> sizes{16, 32, 64};
  const std::size_t count = detail::capped(cfg, 4);
  r.config = {{"sizes", sizes}, {"wold_instances", count}, {"omega_gap", 0.01}, {"omega_tol", 1e-10}};
  MarginLog log(r);
  const OperatorExpr shift = OperatorExpr::shift();
  detail::record_omega_limit(log, 0, detail::compression_run(shift, sizes, true, false, 1e-10), 1.0, 0.01);
  log.record_equal(0, two_isometry_defect(shift, 64), 1e-13, [] { return Json{{"defect", "shift"}}; });
  for (std::size_t i = 1; i <= count; ++i) {
    Rng rng = instance_rng(r, i);
    const std::size_t m = 1 + rng.index(2);
    const std::size_t u = 1 + rng.index(2);
    const OperatorExpr v = isom::wold_model(m, unitary_matrix(rng, u), unitary_matrix(rng, u + 2));
    detail::record_omega_limit(log, i, detail::compression_run(v, sizes, true, false, 1e-10), 1.0, 0.01);
  }
  r.instances = count + 1;
}

inline void two_isometry_crawford(CheckReport& r, const CheckConfig&) {
  const std::vector<std::size_t> sizes{4, 8, 16, 32, 64};
  r.config = {{"operator", "dirichlet_shift"}, {"sizes", sizes}, {"slack", 1e-10}};
  MarginLog log(r);
  const OperatorExpr v = isom::dirichlet_shift();
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    const Enclosure c = *range::crawford_number(compress(v, sizes[k]), 1e-12).crawford;
    log.record(k, 1e-10 - c.hi, [&] { return Json{{"N", sizes[k]}, {"crawford", enc_json(c)}}; });
  }
  const double defect = two_isometry_defect(v, 64);
  log.record_equal(sizes.size(), defect, 1e-13, [&] { return Json{{"defect_N64", defect}}; });
  r.instances = sizes.size() + 1;
  r.stats["defect_N64"] = defect;
}

// Finite-dimensional isometries are unitary, so omega(RT) = omega(R) omega(T) = 1.
inline void isometry_multiplicativity(CheckReport& r, const CheckConfig& cfg) {
  r.config = {{"dims", cfg.dims}, {"slack", 1e-10}, {"omega_tol", 1e-11}};
  MarginLog log(r);
  double worst = 0.0;
  for (std::size_t i = 0; i < cfg.instances; ++i) {
    Rng rng = instance_rng(r, i);
    const std::size_t n = 1 + rng.index(cfg.dims);
    const ComplexMatrix a = unitary_matrix(rng, n);
    const ComplexMatrix b = unitary_matrix(rng, n);
    const Enclosure wab = omega_enc(a * b);
    const Enclosure wa = omega_enc(a);
    const Enclosure wb = omega_enc(b);
    const double dev = std::max(std::abs(wab.lo - 1.0), std::abs(wab.hi - 1.0));
    const double prod_dev = std::abs(wab.mid() - wa.mid() * wb.mid());
    worst = std::max(worst, dev);
    auto vals = [&] { return Json{{"n", n}, {"omega_rt", enc_json(wab)}, {"omega_r", enc_json(wa)}, {"omega_t", enc_json(wb)}}; };
    log.record_equal(i, dev, 1e-10, vals);
    log.record_equal(i, prod_dev, 1e-10, vals);
  }
  r.instances = cfg.instances;
  r.stats["max_abs_omega_rt_minus_1"] = worst;
}

// Analytic Toeplitz operators with polynomial symbols commute with the shift;
// omega(T_phi) = ||T_phi|| = sup |phi| on the circle.
inline void commutant_radius(CheckReport& r, const CheckConfig& cfg) {
  const std::vector<std::size_t> sizes{8, 16, 32, 64};
  const std::size_t count = detail::capped(cfg, 6);
  r.config = {{"sizes", sizes}, {"instances_cap", 6}, {"degree_max", 3}, {"omega_gap", 0.01}, {"omega_tol", 1e-10}};
  MarginLog log(r);
  for (std::size_t i = 0; i < count; ++i) {
    Rng rng = instance_rng(r, i);
    std::vector<Complex> c{0.5, 0.5};
    if (i > 0) {
      c.clear();
      const std::size_t deg = 1 + rng.index(3);
      for (std::size_t k = 0; k <= deg; ++k) c.push_back(rng.complex_normal());
    }
    const Enclosure raw = detail::symbol_sup(c);
    for (auto& x : c) x /= raw.lo;
    const Enclosure sup = detail::symbol_sup(c);
    const OperatorExpr t = OperatorExpr::toeplitz(ToeplitzSymbol::polynomial(c));
    const auto run = detail::compression_run(t, sizes, true, false, 1e-10);
    detail::record_omega_limit(log, i, run, sup.hi, 0.01);
    const double nrm = op_norm(compress(t, sizes.back()));
    log.record(i, sup.hi - nrm, [&] { return Json{{"norm_N", nrm}, {"sup", enc_json(sup)}}; });
    r.stats["symbols"].push_back(detail::zeros_json(c));
    r.stats["omega_largest_N"].push_back(run.omega.back().mid());
  }
  r.instances = count;
}

// T_1 = T_z and T_2 = T_theta for an inner theta: omega(T_1 T_2) <= omega(T_1) omega(T_2) = 1.
inline void shift_product_submult(CheckReport& r, const CheckConfig& cfg) {
  const std::vector<std::size_t> sizes{8, 16, 32, 64};
  const std::size_t count = detail::capped(cfg, 3);
  r.config = {{"sizes", sizes}, {"instances_cap", 3}, {"zero_modulus_max", 0.6}, {"omega_gap", 0.01}, {"omega_tol", 1e-10}};
  MarginLog log(r);
  for (std::size_t i = 0; i < count; ++i) {
    Rng rng = instance_rng(r, i);
    std::vector<Complex> zeros{0.5};
    if (i > 0) zeros = detail::random_zeros(rng, 1 + rng.index(3), 0.6);
    const OperatorExpr t2 = isom::inner_toeplitz(zeros);
    const OperatorExpr prod = OperatorExpr::product({OperatorExpr::shift(), t2});
    const auto run = detail::compression_run(prod, sizes, true, false, 1e-10);
    detail::record_omega_limit(log, i, run, 1.0, 0.01);
    const std::size_t n = sizes.back();
    const double w1 = omega_enc(compress(OperatorExpr::shift(), n), 1e-10).mid();
    const double w2 = omega_enc(compress(t2, n), 1e-10).mid();
    r.stats["finite_ratio_largest_N"].push_back(run.omega.back().mid() / (w1 * w2));
    r.stats["zeros"].push_back(detail::zeros_json(zeros));
  }
  r.instances = count;
}

// Diagonal lambda_n = 1/(n+1): c(N) = 1/N, non-increasing, below 1e-3 at N = 1024.
inline void compact_normal_crawford(CheckReport& r, const CheckConfig&) {
  r.config = {{"diagonal", "1/(n+1)"}, {"sizes", "2^k, k = 1..10"}, {"final_max", 1e-3}};
  MarginLog log(r);
  const OperatorExpr d = OperatorExpr::diagonal(SequenceRule::harmonic());
  Enclosure prev{};
  Json values = Json::array();
  for (unsigned k = 1; k <= 10; ++k) {
    const std::size_t n = std::size_t{1} << k;
    const Enclosure c = *range::crawford_number(compress(d, n), 1e-12).crawford;
    values.push_back(c.mid());
    log.record_equal(k, c.mid() - 1.0 / static_cast<double>(n), 1e-15, [&] { return Json{{"N", n}, {"crawford", enc_json(c)}}; });
    if (k > 1) log.record(k, prev.hi - c.lo, [&] { return Json{{"N", n}, {"crawford", enc_json(c)}, {"previous", enc_json(prev)}}; });
    if (k == 10) log.record(k, 1e-3 - c.lo, [&] { return Json{{"N", n}, {"crawford", enc_json(c)}}; });
    prev = c;
  }
  r.instances = 10;
  r.stats["crawford"] = std::move(values);
}

}  // namespace opineq::harness::checks
