#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "opineq/hardy/constants.hpp"
#include "opineq/harness/instances.hpp"

namespace opineq::harness::checks {

namespace detail {

// Operators are evaluated on one shared point set, so inequalities that hold
// pointwise between Berezin transforms also hold between the sampled suprema.
inline std::vector<double> joint_sups(const std::vector<OperatorExpr>& ops, const rkhs::RkhsModel& m,
                                      const rkhs::DiscGrid& g) {
  const auto est = rkhs::joint_berezin_number(ops, m, g);
  std::vector<double> out;
  out.reserve(est.size());
  for (const auto& e : est) out.push_back(e.lower);
  return out;
}

// 1 + 2^{p-1} sum_{n >= 3} n^{-p}, with the upper end of the tail enclosure.
inline double factor_two(double p) {
  return 1.0 + std::pow(2.0, p - 1.0) * hardy::tail_power_sum(p, 2).hi;
}

inline double power_at_zero(double t, double e) { return opineq::detail::power_with_zero(std::max(t, 0.0), e); }

}  // namespace detail

inline void mz_berezin(CheckReport& r, const CheckConfig&) {
  const double r_max = 0.999;
  r.config = {{"model", "hardy"}, {"r_max", r_max}, {"rings", 10}, {"angles", 256}, {"shift_sizes", {16, 32, 64}}};
  MarginLog log(r);
  const auto b = rkhs::berezin_number(OperatorExpr::shift(), rkhs::RkhsModel::hardy(), rkhs::DiscGrid::standard(r_max));
  auto vals = [&] { return Json{{"lower", b.lower}, {"upper", b.upper}, {"error_bound", b.error_bound}}; };
  log.record(0, b.lower - r_max, vals);
  log.record(0, 1.0 + 1e-12 - b.upper, vals);
  const std::vector<std::size_t> sizes{16, 32, 64};
  std::vector<Enclosure> ws;
  for (std::size_t n : sizes) ws.push_back(*range::numerical_radius(compress(OperatorExpr::shift(), n), 1e-12).omega);
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    log.record(1, 1.0 - ws[k].lo, [&] { return Json{{"N", sizes[k]}, {"omega", enc_json(ws[k])}}; });
    if (k > 0) log.record(1, ws[k].hi - ws[k - 1].lo, [&] { return Json{{"N", sizes[k]}, {"omega", enc_json(ws[k])}}; });
  }
  log.record(1, 0.01 - (1.0 - ws.back().hi), [&] { return Json{{"N", sizes.back()}, {"omega", enc_json(ws.back())}}; });
  r.instances = 2;
  r.stats["ber_lower"] = b.lower;
  r.stats["ber_witness"] = io::complex_to_json(b.witness[0]);
  r.stats["omega_N64"] = ws.back().mid();
}

// ||T1 (x) T2||_ber against ||T1||_ber ||T2||_ber. Instance 0 pairs a Hardy
// factor with a discrete one; the rest use discrete models.
inline void ber_norm_tensor(CheckReport& r, const CheckConfig& cfg) {
  r.config = {{"dims", cfg.dims}, {"models", "discrete x discrete; instance 0 hardy x discrete"}, {"relative_slack", 1e-10}};
  MarginLog log(r);
  double worst = 0.0;
  for (std::size_t i = 0; i < cfg.instances; ++i) {
    Rng rng = instance_rng(r, i);
    const std::size_t na = draw_dim(rng, cfg);
    const std::size_t nb = draw_dim(rng, cfg);
    const ComplexMatrix b = gaussian_matrix(rng, nb, nb);
    const rkhs::RkhsModel mb = rkhs::RkhsModel::discrete(nb);
    const OperatorExpr tb = OperatorExpr::dense(b);
    OperatorExpr ta = OperatorExpr::dense(gaussian_matrix(rng, na, na));
    rkhs::RkhsModel ma = rkhs::RkhsModel::discrete(na);
    rkhs::DiscGrid g = rkhs::DiscGrid::standard();
    if (i == 0) {
      ta = block_operator(contraction(rng, na), 0.5);
      ma = rkhs::RkhsModel::hardy();
      g = property_grid();
    }
    const double ba = rkhs::ber_norm(ta, ma, g).lower;
    const double bb = rkhs::ber_norm(tb, mb, g).lower;
    const double bt = rkhs::ber_norm(OperatorExpr::tensor({ta, tb}), rkhs::RkhsModel::product({ma, mb}), g).lower;
    const double dev = std::abs(bt - ba * bb);
    worst = std::max(worst, dev / (ba * bb));
    log.record_equal(i, dev, 1e-10 * ba * bb, [&] { return Json{{"dims", {na, nb}}, {"ber_norm_a", ba}, {"ber_norm_b", bb}, {"ber_norm_tensor", bt}}; });
  }
  r.instances = cfg.instances;
  r.stats["max_relative_error"] = worst;
}

// T = A0* X0 A0 + c on the Hardy model: ber(sqrt T) <= sqrt(ber T).
inline void ber_sqrt(CheckReport& r, const CheckConfig& cfg) {
  const std::size_t count = std::min<std::size_t>(cfg.instances, 200);
  r.config = {{"dims", cfg.dims}, {"model", "hardy"}, {"grid", "r_max 0.9, 4 rings x 16, 1 refinement round"}, {"instances_cap", 200}};
  MarginLog log(r);
  std::size_t strict = 0;
  const rkhs::RkhsModel hardy = rkhs::RkhsModel::hardy();
  const rkhs::DiscGrid g = property_grid();
  for (std::size_t i = 0; i < count; ++i) {
    Rng rng = instance_rng(r, i);
    const std::size_t n = draw_dim(rng, cfg);
    const ComplexMatrix a0 = contraction(rng, n);
    const ComplexMatrix x0 = psd_matrix(rng, n);
    ComplexMatrix t = a0.adjoint() * x0 * a0;
    t = 0.5 * (t + t.adjoint()).eval();
    const double c = rng.uniform();
    const auto sd = opineq::detail::psd_spectrum(t, "ber-sqrt");
    const OperatorExpr root = block_fun(sd, c, [](double x) { return std::sqrt(std::max(x, 0.0)); });
    const auto s = detail::joint_sups({root, block_operator(t, c)}, hardy, g);
    const double margin = std::sqrt(s[1]) - s[0];
    log.record(i, margin, [&] { return Json{{"n", n}, {"c", c}, {"ber_sqrt", s[0]}, {"sqrt_ber", std::sqrt(s[1])}}; });
    if (margin > kMarginTol) ++strict;
  }
  r.instances = count;
  r.stats["strict_fraction"] = count ? static_cast<double>(strict) / static_cast<double>(count) : 0.0;
}

inline void examples_golden(CheckReport& r, const CheckConfig&) {
  r.config = {{"slack", 1e-10}, {"discrete_index_count", 64}};
  MarginLog log(r);
  ComplexMatrix swap = zeros(2, 2);
  swap(0, 1) = swap(1, 0) = 1.0;
  const auto est = range::analyze_range(swap, 1e-12, 1e-12);
  const OperatorExpr su = OperatorExpr::dense(swap);
  const auto d2 = rkhs::RkhsModel::discrete(2);
  const double ber = rkhs::berezin_number(su, d2).lower;
  const double bn = rkhs::ber_norm(su, d2).lower;
  log.record_equal(0, est.omega->mid() - 1.0, 1e-10, [&] { return Json{{"swap_omega", enc_json(*est.omega)}}; });
  log.record_equal(0, est.crawford->mid(), 1e-10, [&] { return Json{{"swap_crawford", enc_json(*est.crawford)}}; });
  log.record_equal(0, ber, 1e-10, [&] { return Json{{"swap_ber", ber}}; });
  log.record_equal(0, bn - 1.0, 1e-10, [&] { return Json{{"swap_ber_norm", bn}}; });
  r.stats["swap"] = {{"omega", est.omega->mid()}, {"crawford", est.crawford->mid()}, {"ber", ber}, {"ber_norm", bn}};

  // sup_n |w_n| = ||S_w|| = ber-norm on the discrete model.
  rkhs::DiscGrid g = rkhs::DiscGrid::standard();
  g.index_count = 64;
  const std::vector<std::pair<std::string, SequenceRule>> rules{
      {"dirichlet", SequenceRule::dirichlet()},
      {"constant", SequenceRule::constant(Complex(0.6, -0.3))},
      {"geometric", SequenceRule::geometric(0.9, 0.5)},
      {"list", SequenceRule::list({0.3, Complex(0.0, 1.2), -0.5}, 0.1)}};
  std::size_t inst = 1;
  for (const auto& [name, rule] : rules) {
    double sup = 0.0;
    for (std::size_t k = 0; k < g.index_count; ++k) sup = std::max(sup, std::abs(rule(k)));
    const OperatorExpr s = OperatorExpr::weighted_shift(rule);
    const double nb = rkhs::ber_norm(s, rkhs::RkhsModel::discrete(), g).lower;
    const double nrm = op_norm(compress(s, g.index_count + 1));
    const double bz = rkhs::berezin_number(s, rkhs::RkhsModel::discrete(), g).lower;
    auto vals = [&, n = name] { return Json{{"rule", n}, {"sup", sup}, {"ber_norm", nb}, {"norm", nrm}, {"ber", bz}}; };
    log.record_equal(inst, nb - sup, 1e-10, vals);
    log.record_equal(inst, nrm - sup, 1e-10, vals);
    log.record_equal(inst, bz, 1e-10, vals);
    ++inst;
  }

  // ber(D) = sup |lambda_i| for a diagonal operator on the discrete model.
  Rng rng = instance_rng(r, inst);
  std::vector<Complex> lam;
  double sup = 0.0;
  for (int k = 0; k < 8; ++k) {
    lam.push_back(rng.complex_normal());
    sup = std::max(sup, std::abs(lam.back()));
  }
  const double bd = rkhs::berezin_number(OperatorExpr::diagonal(SequenceRule::list(lam, 0.0)), rkhs::RkhsModel::discrete(8)).lower;
  log.record_equal(inst, bd - sup, 1e-10, [&] { return Json{{"diagonal_ber", bd}, {"sup", sup}}; });
  r.instances = inst + 1;
}

// M_z on the Hardy model and the unweighted shift on l^2 are unitarily
// equivalent (z^n -> e_n), yet their Berezin numbers differ.
inline void ber_not_unitary_invariant(CheckReport& r, const CheckConfig&) {
  r.config = {{"hardy_grid", "r_max 0.99, 7 rings x 64"}, {"discrete_index_count", 256}};
  MarginLog log(r);
  const OperatorExpr s = OperatorExpr::shift();
  const auto h = rkhs::berezin_number(s, rkhs::RkhsModel::hardy(), rkhs::DiscGrid::standard(0.99, 7, 64));
  const auto d = rkhs::berezin_number(s, rkhs::RkhsModel::discrete(), rkhs::DiscGrid::standard());
  log.record(0, h.lower - h.error_bound - d.lower - d.error_bound,
             [&] { return Json{{"ber_hardy", h.lower}, {"ber_discrete", d.lower}}; });
  r.instances = 1;
  r.stats["ber_hardy"] = h.lower;
  r.stats["ber_discrete"] = d.lower;
}

namespace detail {

// ber^2(f(A)) <= C ber(f(A)^2) for PSD block operators, f in {t, t^2, e^t}.
inline void berezin_p2(CheckReport& r, const CheckConfig& cfg, double constant, const Json& constant_note) {
  r.config = {{"dims", cfg.dims}, {"model", "hardy"}, {"grid", "r_max 0.9, 4 rings x 16, 1 refinement round"},
              {"f", {"t", "t^2", "exp"}}, {"constant", constant}, {"constant_source", constant_note}};
  MarginLog log(r);
  const std::array<std::pair<const char*, RealFunction>, 3> fs{{
      {"t", [](double t) { return t; }},
      {"t^2", [](double t) { return t * t; }},
      {"exp", [](double t) { return std::exp(t); }},
  }};
  const rkhs::RkhsModel hardy = rkhs::RkhsModel::hardy();
  const rkhs::DiscGrid g = property_grid();
  double best_ratio = 0.0;
  for (std::size_t i = 0; i < cfg.instances; ++i) {
    Rng rng = instance_rng(r, i);
    const std::size_t n = draw_dim(rng, cfg);
    const ComplexMatrix p = psd_matrix(rng, n);
    const double s = rng.uniform(1e-6, 1.0);
    const auto sd = opineq::detail::psd_spectrum(p, "berezin-p2");
    std::vector<OperatorExpr> ops;
    for (const auto& [name, f] : fs) {
      ops.push_back(block_fun(sd, s, f));
      const RealFunction& ff = f;
      ops.push_back(block_fun(sd, s, [&ff](double t) { const double v = ff(t); return v * v; }));
    }
    const auto sup = joint_sups(ops, hardy, g);
    for (std::size_t k = 0; k < fs.size(); ++k) {
      const double lhs = sup[2 * k] * sup[2 * k];
      const double rhs = constant * sup[2 * k + 1];
      best_ratio = std::max(best_ratio, lhs / sup[2 * k + 1]);
      log.record(i, rhs - lhs, [&] { return Json{{"n", n}, {"s", s}, {"f", fs[k].first}, {"ber_f_squared", lhs}, {"ber_f2", sup[2 * k + 1]}}; });
    }
  }
  r.instances = cfg.instances;
  r.stats["max_observed_ratio"] = best_ratio;
}

}  // namespace detail

inline void berezin_hardy_p2(CheckReport& r, const CheckConfig& cfg) {
  const auto c = hardy::constant_main(2.0, 2);
  detail::berezin_p2(r, cfg, c.value_bracket.lo, "constant_main(2, 2), lower end");
}

inline void improved_berezin(CheckReport& r, const CheckConfig& cfg) {
  detail::berezin_p2(r, cfg, 1.593852, "printed constant 1.593852");
  r.stats["certified_constant_improved"] = hardy::constant_improved();
}

// ber^p(A) (2 + 2^p S_p) <= C_p (ber(|A|^{2 p alpha}) + ber(|A*|^{2 p (1 - alpha)})), S_p = sum_{n >= 3} n^{-p}.
inline void alpha_interpolated(CheckReport& r, const CheckConfig& cfg) {
  const std::vector<double> ps{1.5, 2.0, 3.0};
  const std::vector<double> alphas{0.0, 0.25, 0.5, 0.75, 1.0};
  r.config = {{"dims", cfg.dims}, {"model", "hardy"}, {"p", ps}, {"alpha", alphas}, {"norm", 1.0}};
  MarginLog log(r);
  const rkhs::RkhsModel hardy = rkhs::RkhsModel::hardy();
  const rkhs::DiscGrid g = property_grid();
  std::vector<double> lhs_factor, cp;
  for (double p : ps) {
    lhs_factor.push_back(2.0 * detail::factor_two(p));
    cp.push_back(hardy::hardy_factor(p));
  }
  for (std::size_t i = 0; i < cfg.instances; ++i) {
    Rng rng = instance_rng(r, i);
    const std::size_t n = draw_dim(rng, cfg);
    const ComplexMatrix b = contraction(rng, n);
    const Complex s = std::polar(std::sqrt(rng.uniform()), rng.uniform(0.0, 2.0 * std::numbers::pi));
    ComplexMatrix gb = b.adjoint() * b, gbs = b * b.adjoint();
    const auto sd = opineq::detail::psd_spectrum(0.5 * (gb + gb.adjoint()), "alpha-interpolated");
    const auto sds = opineq::detail::psd_spectrum(0.5 * (gbs + gbs.adjoint()), "alpha-interpolated");
    const double s2 = std::norm(s);
    std::vector<OperatorExpr> ops{block_operator(b, s)};
    for (double p : ps)
      for (double al : alphas) {
        const double e1 = p * al, e2 = p * (1.0 - al);  // powers of A*A and AA*
        ops.push_back(block_operator(herm_fun(sd, [e1](double t) { return detail::power_at_zero(t, e1); }),
                                     detail::power_at_zero(s2, e1)));
        ops.push_back(block_operator(herm_fun(sds, [e2](double t) { return detail::power_at_zero(t, e2); }),
                                     detail::power_at_zero(s2, e2)));
      }
    const auto sup = detail::joint_sups(ops, hardy, g);
    std::size_t k = 1;
    for (std::size_t pi = 0; pi < ps.size(); ++pi)
      for (double al : alphas) {
        const double lhs = lhs_factor[pi] * std::pow(sup[0], ps[pi]);
        const double rhs = cp[pi] * (sup[k] + sup[k + 1]);
        log.record(i, rhs - lhs, [&] { return Json{{"n", n}, {"p", ps[pi]}, {"alpha", al}, {"lhs", lhs}, {"rhs", rhs}}; });
        k += 2;
      }
  }
  r.instances = cfg.instances;
}

namespace detail {

struct ConvexFn {
  const char* name;
  RealFunction f;
};

// f^p(ber A) (1 + 2^{p-1} S_p) <= C_p ber(f^p(A)) on one self-adjoint block operator.
inline void convex_instance(MarginLog& log, std::size_t i, const SpectralDecomposition& sd, double s,
                            const ComplexMatrix& h, const std::vector<ConvexFn>& fs, const std::vector<double>& ps,
                            const rkhs::DiscGrid& g) {
  std::vector<OperatorExpr> ops{block_operator(h, s)};
  for (const auto& cf : fs)
    for (double p : ps) {
      const RealFunction& f = cf.f;
      ops.push_back(block_fun(sd, s, [&f, p](double t) { return std::pow(f(t), p); }));
    }
  const auto sup = joint_sups(ops, rkhs::RkhsModel::hardy(), g);
  std::size_t k = 1;
  for (const auto& cf : fs)
    for (double p : ps) {
      const double lhs = factor_two(p) * std::pow(cf.f(sup[0]), p);
      const double rhs = hardy::hardy_factor(p) * sup[k];
      log.record(i, rhs - lhs, [&] { return Json{{"f", cf.name}, {"p", p}, {"ber_a", sup[0]}, {"lhs", lhs}, {"rhs", rhs}}; });
      ++k;
    }
}

}  // namespace detail

// Even convex f on indefinite self-adjoint A; e^t on PSD A.
inline void convex_berezin(CheckReport& r, const CheckConfig& cfg) {
  const std::vector<double> ps{1.5, 2.0, 3.0};
  r.config = {{"dims", cfg.dims}, {"model", "hardy"}, {"p", ps},
              {"f_indefinite", {"t^2 + 1", "|t|^1.5 + 1"}}, {"f_psd", {"exp"}}};
  MarginLog log(r);
  const std::vector<detail::ConvexFn> even{{"t^2 + 1", [](double t) { return t * t + 1.0; }},
                                           {"|t|^1.5 + 1", [](double t) { return std::pow(std::abs(t), 1.5) + 1.0; }}};
  const std::vector<detail::ConvexFn> expo{{"exp", [](double t) { return std::exp(t); }}};
  const rkhs::DiscGrid g = property_grid();
  for (std::size_t i = 0; i < cfg.instances; ++i) {
    Rng rng = instance_rng(r, i);
    const std::size_t n = draw_dim(rng, cfg);
    ComplexMatrix h = hermitian_matrix(rng, n);
    h /= op_norm(h);
    const double s = rng.uniform(-1.0, 1.0);
    detail::convex_instance(log, i, jacobi_eigh(h), s, h, even, ps, g);
    const ComplexMatrix p = psd_matrix(rng, n);
    detail::convex_instance(log, i, opineq::detail::psd_spectrum(p, "convex-berezin"), rng.uniform(), p, expo, ps, g);
  }
  r.instances = cfg.instances;
}

// e^t on self-adjoint A with negative spectrum. Instance 0 is A = -0.8 I.
inline void convex_berezin_indefinite(CheckReport& r, const CheckConfig& cfg) {
  const std::size_t count = std::min<std::size_t>(cfg.instances, 50);
  const std::vector<double> ps{1.5, 2.0, 3.0};
  r.config = {{"dims", cfg.dims}, {"model", "hardy"}, {"p", ps}, {"f", "exp"}, {"instances_cap", 50}};
  MarginLog log(r);
  const std::vector<detail::ConvexFn> expo{{"exp", [](double t) { return std::exp(t); }}};
  const rkhs::DiscGrid g = property_grid();
  for (std::size_t i = 0; i < count; ++i) {
    Rng rng = instance_rng(r, i);
    const std::size_t n = draw_dim(rng, cfg);
    ComplexMatrix h;
    double s;
    if (i == 0) {
      h = -0.8 * identity(n);
      s = -0.8;
    } else {
      h = hermitian_matrix(rng, n);
      h /= op_norm(h);
      s = rng.uniform(-1.0, 1.0);
    }
    detail::convex_instance(log, i, jacobi_eigh(h), s, h, expo, ps, g);
  }
  r.instances = count;
}

}  // namespace opineq::harness::checks
