#pragma once

#include <cmath>
#include <vector>

#include "opineq/hardy/constants.hpp"
#include "opineq/harness/instances.hpp"

namespace opineq::harness::checks {

// (1 + N^{p-1} sum_{n > N} n^{-p}) <f(A)x, x>^p <= (p/(p-1))^p <f(A)^p x, x>
// for positive definite A and unit x.
inline void main_hardy_p(CheckReport& r, const CheckConfig& cfg) {
  const std::vector<double> ps{1.5, 2.0, 3.0};
  const std::vector<std::size_t> ns{2, 3, 5};
  r.config = {{"dims", cfg.dims}, {"p", ps}, {"N", ns}, {"f", {"t", "t^2", "exp", "sqrt"}}, {"psd_eps", 1e-6}};
  const std::vector<std::pair<const char*, RealFunction>> fs{
      {"t", [](double t) { return t; }},
      {"t^2", [](double t) { return t * t; }},
      {"exp", [](double t) { return std::exp(t); }},
      {"sqrt", [](double t) { return std::sqrt(t); }},
  };
  std::vector<std::vector<double>> factor(ps.size());
  for (std::size_t a = 0; a < ps.size(); ++a)
    for (std::size_t n : ns)
      factor[a].push_back(1.0 + std::pow(static_cast<double>(n), ps[a] - 1.0) * hardy::tail_power_sum(ps[a], n).hi);

  MarginLog log(r);
  double best_ratio = 0.0;
  for (std::size_t i = 0; i < cfg.instances; ++i) {
    Rng rng = instance_rng(r, i);
    const std::size_t n = draw_dim(rng, cfg);
    const ComplexMatrix p = psd_matrix(rng, n);
    const ComplexVector x = unit_vector(rng, n);
    const SpectralDecomposition sd = opineq::detail::psd_spectrum(p, "main-hardy-p");
    for (const auto& [name, f] : fs) {
      const double base = quadratic_form(herm_fun(sd, f), x).real();
      for (std::size_t a = 0; a < ps.size(); ++a) {
        const double e = ps[a];
        const RealFunction& ff = f;
        const double fp = quadratic_form(herm_fun(sd, [&ff, e](double t) { return std::pow(ff(t), e); }), x).real();
        const double rhs = hardy::hardy_factor(e) * fp;
        for (std::size_t b = 0; b < ns.size(); ++b) {
          const double lhs = factor[a][b] * std::pow(base, e);
          best_ratio = std::max(best_ratio, lhs / rhs);
          log.record(i, rhs - lhs, [&, fname = name] {
            return Json{{"n", n}, {"f", fname}, {"p", e}, {"N", ns[b]}, {"lhs", lhs}, {"rhs", rhs}};
          });
        }
      }
    }
  }
  r.instances = cfg.instances;
  r.stats["max_lhs_over_rhs"] = best_ratio;
}

inline void hardy_p2(CheckReport& r, const CheckConfig&) {
  r.config = {{"p", 2}, {"N", "1..10"}, {"interval", {2.2346, 2.2350}}};
  MarginLog log(r);
  const auto c = hardy::constant_main(2.0, 2);
  const double closed = hardy::closed_form::main_p2_n2();
  auto vals = [&] { return Json{{"value", c.value}, {"bracket", enc_json(c.value_bracket)}, {"closed_form", closed}}; };
  log.record(0, c.value - 2.2346, vals);
  log.record(0, 2.2350 - c.value, vals);
  log.record_equal(0, c.value - closed, c.value_bracket.width() + 1e-12, vals);

  // Classical weights in the improved-constant formula give the same number.
  const auto cw = hardy::constant_from_weights(hardy::WeightKind::classical);
  log.record_equal(1, cw.value - closed, cw.value_bracket.width() + 1e-12,
                   [&] { return Json{{"from_classical_weights", cw.value}, {"closed_form", closed}}; });

  Json seq = Json::array();
  double prev = 0.0;
  for (std::size_t n = 1; n <= 10; ++n) {
    const double v = hardy::constant_main(2.0, n).value;
    seq.push_back(v);
    log.record(2, 4.0 - v, [&] { return Json{{"N", n}, {"value", v}}; });
    if (n > 1) log.record(2, prev - v, [&] { return Json{{"N", n}, {"value", v}, {"previous", prev}}; });
    prev = v;
  }
  r.instances = 3;
  r.stats["constant_main_2_2"] = c.value;
  r.stats["constant_main_2_N"] = std::move(seq);
}

inline void hardy_n3(CheckReport& r, const CheckConfig&) {
  r.config = {{"p", 2}, {"interval", {2.1603, 2.1605}}, {"identity_p", {1.5, 2.0, 3.0}}};
  MarginLog log(r);
  const auto c = hardy::constant_three_term(2.0);
  const double closed = hardy::closed_form::three_term_p2();
  auto vals = [&] { return Json{{"value", c.value}, {"closed_form", closed}}; };
  log.record(0, c.value - 2.1603, vals);
  log.record(0, 2.1605 - c.value, vals);
  log.record_equal(0, c.value - closed, c.value_bracket.width() + 1e-12, vals);
  const auto lit = hardy::constant_three_term(2.0, true);
  log.record_equal(0, lit.value - c.value, c.value_bracket.width() + lit.value_bracket.width() + 1e-12, vals);
  Json literal = Json::object();
  for (double p : {1.5, 2.0, 3.0}) {
    const auto t = hardy::constant_three_term(p);
    const auto m = hardy::constant_main(p, 3);
    log.record_equal(1, t.value - m.value, t.value_bracket.width() + m.value_bracket.width() + 1e-12,
                     [&] { return Json{{"p", p}, {"three_term", t.value}, {"constant_main", m.value}}; });
    literal[Json(p).dump()] = hardy::constant_three_term(p, true).value;
  }
  r.instances = 2;
  r.stats["three_term_2"] = c.value;
  r.stats["literal_inverse_squares"] = std::move(literal);
}

// Scalar weighted Hardy inequality on random finitely supported sequences.
inline void scalar_hardy(CheckReport& r, const CheckConfig& cfg) {
  r.config = {{"length_max", 64}, {"p", {1.5, 2.0, 3.0}}, {"improved", "p = 2"}};
  MarginLog log(r);
  for (std::size_t i = 0; i < cfg.instances; ++i) {
    Rng rng = instance_rng(r, i);
    std::vector<double> a(1 + rng.index(64));
    for (double& v : a) v = rng.uniform() < 0.2 ? 0.0 : rng.uniform();
    for (double p : {1.5, 2.0, 3.0}) {
      const auto rep = hardy::check_scalar_hardy(a, p);
      log.record(i, rep.margin, [&] { return Json{{"length", a.size()}, {"p", p}, {"lhs", rep.lhs}, {"rhs", rep.rhs}}; });
    }
    const auto imp = hardy::check_scalar_hardy(a, 2.0, hardy::WeightKind::improved);
    log.record(i, imp.margin, [&] { return Json{{"length", a.size()}, {"weights", "improved"}, {"lhs", imp.lhs}, {"rhs", imp.rhs}}; });
  }
  r.instances = cfg.instances;
}

}  // namespace opineq::harness::checks
