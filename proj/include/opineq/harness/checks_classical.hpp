#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "opineq/harness/instances.hpp"
#include "opineq/linops/cross_checks.hpp"

namespace opineq::harness::checks {

inline void power_inequality(CheckReport& r, const CheckConfig& cfg) {
  constexpr unsigned kMaxPower = 6;
  r.config = {{"dims", cfg.dims}, {"norm", 1.0}, {"powers", {2, 3, 4, 5, 6}}, {"omega_tol", 1e-11}};
  MarginLog log(r);
  double tightest = 0.0;
  for (std::size_t i = 0; i < cfg.instances; ++i) {
    Rng rng = instance_rng(r, i);
    const std::size_t n = draw_dim(rng, cfg);
    const ComplexMatrix a = contraction(rng, n);
    const Enclosure w = omega_enc(a);
    ComplexMatrix ak = a;
    for (unsigned k = 2; k <= kMaxPower; ++k) {
      ak = (ak * a).eval();
      const Enclosure wk = omega_enc(ak);
      const double rhs = std::pow(w.hi, k);
      if (rhs > 0.0) tightest = std::max(tightest, wk.lo / rhs);
      log.record(i, rhs - wk.lo, [&] { return Json{{"n", n}, {"k", k}, {"omega", enc_json(w)}, {"omega_power", enc_json(wk)}}; });
    }
  }
  r.instances = cfg.instances;
  r.stats["max_ratio_omega_power_over_power_omega"] = tightest;
}

inline void norm_equivalence(CheckReport& r, const CheckConfig& cfg) {
  r.config = {{"dims", cfg.dims}, {"omega_tol", 1e-11}};
  MarginLog log(r);
  double lo_ratio = 1.0, hi_ratio = 0.0;
  for (std::size_t i = 0; i < cfg.instances; ++i) {
    Rng rng = instance_rng(r, i);
    const std::size_t n = draw_dim(rng, cfg);
    const ComplexMatrix a = gaussian_matrix(rng, n, n);
    const double nrm = op_norm(a);
    const Enclosure w = omega_enc(a);
    auto vals = [&] { return Json{{"n", n}, {"norm", nrm}, {"omega", enc_json(w)}}; };
    log.record(i, w.hi - 0.5 * nrm, vals);
    log.record(i, nrm - w.lo, vals);
    lo_ratio = std::min(lo_ratio, w.mid() / nrm);
    hi_ratio = std::max(hi_ratio, w.mid() / nrm);
  }
  r.instances = cfg.instances;
  r.stats["min_omega_over_norm"] = lo_ratio;
  r.stats["max_omega_over_norm"] = hi_ratio;
}

// Instance 0 is [[0, 0], [1, 0]]; the others are unitary conjugates of a
// random multiple of it, with omega = |a| / 2.
inline void nilpotent_example(CheckReport& r, const CheckConfig& cfg) {
  r.config = {{"slack", 1e-9}};
  MarginLog log(r);
  for (std::size_t i = 0; i < cfg.instances; ++i) {
    Rng rng = instance_rng(r, i);
    Complex a = 1.0;
    ComplexMatrix q = identity(2);
    if (i > 0) {
      a = rng.complex_normal();
      q = unitary_matrix(rng, 2);
    }
    ComplexMatrix m = zeros(2, 2);
    m(1, 0) = a;
    m = (q * m * q.adjoint()).eval();
    const Enclosure w = omega_enc(m, 1e-12);
    const Enclosure w2 = omega_enc(m * m, 1e-12);
    const double scale = std::max(1.0, std::abs(a));
    auto vals = [&] { return Json{{"a", io::complex_to_json(a)}, {"omega", enc_json(w)}, {"omega_square", enc_json(w2)}}; };
    log.record_equal(i, w.mid() - 0.5 * std::abs(a), 1e-9 * scale, vals);
    log.record_equal(i, w2.mid(), 1e-9 * scale, vals);
    if (i == 0) {
      r.stats["omega"] = w.mid();
      r.stats["omega_square"] = w2.mid();
    }
  }
  r.instances = cfg.instances;
}

// Normal direction for p >= 1, reversed for 0 < p < 1. Besides a random unit
// vector each instance evaluates the top eigenvector, where equality holds.
inline void mccarthy(CheckReport& r, const CheckConfig& cfg) {
  const std::vector<double> ps{1.0, 1.5, 2.0, 3.0, 0.3, 0.7};
  r.config = {{"dims", cfg.dims}, {"p", ps}, {"psd_eps", 1e-6}};
  MarginLog log(r);
  std::vector<std::size_t> strict(ps.size(), 0);
  double eig_gap = 0.0;
  for (std::size_t i = 0; i < cfg.instances; ++i) {
    Rng rng = instance_rng(r, i);
    const std::size_t n = draw_dim(rng, cfg);
    const ComplexMatrix p = psd_matrix(rng, n);
    const SpectralDecomposition sd = opineq::detail::psd_spectrum(p, "mccarthy");
    const ComplexVector xs[2] = {unit_vector(rng, n), sd.eigenvectors.col(static_cast<Eigen::Index>(n) - 1)};
    for (std::size_t k = 0; k < ps.size(); ++k) {
      const double e = ps[k];
      const ComplexMatrix pe = herm_fun(sd, [e](double t) { return opineq::detail::power_with_zero(t, e); });
      for (int v = 0; v < 2; ++v) {
        const double base = quadratic_form(p, xs[v]).real();
        const double lhs = std::pow(std::max(base, 0.0), e);
        const double rhs = quadratic_form(pe, xs[v]).real();
        const double margin = e >= 1.0 ? rhs - lhs : lhs - rhs;
        log.record(i, margin, [&] { return Json{{"n", n}, {"p", e}, {"eigenvector", v == 1}, {"lhs", lhs}, {"rhs", rhs}}; });
        if (v == 0 && margin > kMarginTol) ++strict[k];
        if (v == 1) eig_gap = std::max(eig_gap, std::abs(margin));
      }
    }
  }
  r.instances = cfg.instances;
  Json freq = Json::object();
  for (std::size_t k = 0; k < ps.size(); ++k)
    freq[Json(ps[k]).dump()] = cfg.instances ? static_cast<double>(strict[k]) / static_cast<double>(cfg.instances) : 0.0;
  r.stats["strict_fraction_random_vectors"] = std::move(freq);
  r.stats["max_gap_at_eigenvectors"] = eig_gap;
}

inline void mixed_schwarz(CheckReport& r, const CheckConfig& cfg) {
  const std::vector<double> alphas{0.0, 0.25, 0.5, 0.75, 1.0};
  r.config = {{"dims", cfg.dims}, {"alpha", alphas}, {"norm", 1.0}};
  MarginLog log(r);
  for (std::size_t i = 0; i < cfg.instances; ++i) {
    Rng rng = instance_rng(r, i);
    const std::size_t n = draw_dim(rng, cfg);
    const ComplexMatrix a = contraction(rng, n);
    const ComplexVector x = unit_vector(rng, n);
    const ComplexVector y = unit_vector(rng, n);
    const double lhs = std::norm(y.dot(a * x));
    for (double al : alphas) {
      const double left = quadratic_form(abs_power(a, 2.0 * al), x).real();
      const double right = quadratic_form(abs_power(a.adjoint(), 2.0 * (1.0 - al)), y).real();
      log.record(i, left * right - lhs, [&] { return Json{{"n", n}, {"alpha", al}, {"lhs", lhs}, {"rhs", left * right}}; });
    }
  }
  r.instances = cfg.instances;
}

inline void omega_abs_p(CheckReport& r, const CheckConfig& cfg) {
  const std::vector<double> ps{1.5, 2.0, 3.0};
  r.config = {{"dims", cfg.dims}, {"p", ps}, {"norm", 1.0}, {"omega_tol", 1e-11}};
  MarginLog log(r);
  for (std::size_t i = 0; i < cfg.instances; ++i) {
    Rng rng = instance_rng(r, i);
    const std::size_t n = draw_dim(rng, cfg);
    const ComplexMatrix a = contraction(rng, n);
    const Enclosure w = omega_enc(a);
    for (double p : ps) {
      const Enclosure wp = omega_enc(abs_power(a, p));
      log.record(i, wp.hi - std::pow(w.lo, p), [&] { return Json{{"n", n}, {"p", p}, {"omega", enc_json(w)}, {"omega_abs_p", enc_json(wp)}}; });
    }
  }
  r.instances = cfg.instances;
}

inline void sqrt_sum_equality(CheckReport& r, const CheckConfig& cfg) {
  r.config = {{"dims", cfg.dims}, {"terms", {1, 3}}, {"slack", 1e-10}, {"omega_tol", 1e-11}};
  MarginLog log(r);
  double worst = 0.0;
  for (std::size_t i = 0; i < cfg.instances; ++i) {
    Rng rng = instance_rng(r, i);
    const std::size_t n = draw_dim(rng, cfg);
    const ComplexMatrix x = psd_matrix(rng, n);
    const std::size_t terms = 1 + rng.index(3);
    std::vector<ComplexMatrix> ai;
    for (std::size_t k = 0; k < terms; ++k) ai.push_back(contraction(rng, n));
    const CrossCheckReport c = mat_fun_cross_checks(ai.front(), x, ai, 2.0, 1e-11);
    worst = std::max(worst, c.equality_gap);
    log.record_equal(i, c.equality_gap, 1e-10 * std::max(1.0, c.sqrt_rhs),
                     [&] { return Json{{"n", n}, {"terms", terms}, {"lhs", c.sqrt_lhs}, {"rhs", c.sqrt_rhs}}; });
  }
  r.instances = cfg.instances;
  r.stats["max_equality_gap"] = worst;
}

}  // namespace opineq::harness::checks
