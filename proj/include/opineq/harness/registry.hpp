#pragma once

#include <algorithm>
#include <chrono>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "opineq/harness/checks_berezin.hpp"
#include "opineq/harness/checks_classical.hpp"
#include "opineq/harness/checks_hardy.hpp"
#include "opineq/harness/checks_structure.hpp"

namespace opineq::harness {

struct TheoremCheck {
  std::string id;
  std::string statement;  // section and quoted claim
  Severity severity = Severity::assert_;
  std::function<void(CheckReport&, const CheckConfig&)> run;
};

inline const std::vector<TheoremCheck>& registry() {
  using S = Severity;
  static const std::vector<TheoremCheck> checks{
      {"power-inequality", "§1: omega(A^n) <= omega(A)^n", S::assert_, checks::power_inequality},
      {"norm-equivalence", "§1: ||A||/2 <= omega(A) <= ||A||", S::assert_, checks::norm_equivalence},
      {"nilpotent-example", "§1: omega(A) = 1/2 but omega(A^2) = 0", S::assert_, checks::nilpotent_example},
      {"mccarthy", "§2: <Ax, x>^p <= <A^p x, x> (reversed for 0 < p < 1)", S::assert_, checks::mccarthy},
      {"mixed-schwarz", "§2: |<Ax, y>|^2 <= <|A|^{2a} x, x> <|A*|^{2(1-a)} y, y>", S::assert_, checks::mixed_schwarz},
      {"omega-abs-p", "§3: omega(A)^p <= omega(|A|^p)", S::assert_, checks::omega_abs_p},
      {"sqrt-sum-equality", "§3: omega(sqrt(sum A_i* X A_i)) = sqrt(omega(sum A_i* X A_i))", S::assert_,
       checks::sqrt_sum_equality},
      {"shift-crawford", "§3: the Crawford number of V is 0", S::assert_, checks::shift_crawford},
      {"toeplitz-inner", "§3: omega(T_theta^{*n}) = omega(T_theta^n) = 1", S::assert_, checks::toeplitz_inner},
      {"two-isometry-omega", "§3: numerical radius of V is 1 (pure two-isometry)", S::falsifiable,
       checks::two_isometry_omega},
      {"two-isometry-unit-norm-omega", "§3: numerical radius of a two-isometry with unit norm is 1", S::assert_,
       checks::two_isometry_unit_norm_omega},
      {"two-isometry-crawford", "§3: Crawford number of V is 0 (pure two-isometry)", S::assert_,
       checks::two_isometry_crawford},
      {"isometry-multiplicativity", "§3: omega is multiplicative on the class of isometries", S::assert_,
       checks::isometry_multiplicativity},
      {"commutant-radius", "§3: numerical radius of R is ||R|| (shift commutant, scalar symbols)", S::assert_,
       checks::commutant_radius},
      {"shift-product-submult", "§3: omega(T1 T2) <= omega(T1) omega(T2), T1 = T_z, T2 = T_theta", S::assert_,
       checks::shift_product_submult},
      {"mz-berezin", "§3: ber(M_z) = 1 and omega(M_z) = 1", S::assert_, checks::mz_berezin},
      {"ber-norm-tensor", "§3: ||T1 (x) T2||_ber = ||T1||_ber ||T2||_ber", S::assert_, checks::ber_norm_tensor},
      {"ber-sqrt", "§3: ber(sqrt(A* X A)) < sqrt(ber(A* X A))", S::assert_, checks::ber_sqrt},
      {"examples-golden", "§3 Examples: c(U) = 0, sup_n |w_n| = ||S_w||, ber(D) = sup_i |lambda_i|", S::assert_,
       checks::examples_golden},
      {"compact-normal-crawford", "§3: Crawford number of a compact normal operator is zero", S::assert_,
       checks::compact_normal_crawford},
      {"ber-not-unitary-invariant", "§3: the Berezin number is not unitarily invariant", S::assert_,
       checks::ber_not_unitary_invariant},
      {"main-hardy-p", "§4: (1 + N^{p-1} sum_{n>N} n^{-p}) <f(A)x, x>^p < (p/(p-1))^p <f(A)^p x, x>", S::assert_,
       checks::main_hardy_p},
      {"hardy-p2", "§4: constant 24/(2 pi^2 - 9)", S::assert_, checks::hardy_p2},
      {"hardy-n3", "§4: constant approx 2.1604 (N = 3)", S::assert_, checks::hardy_n3},
      {"scalar-hardy", "§4: weighted discrete Hardy inequality on finite sequences", S::assert_, checks::scalar_hardy},
      {"berezin-hardy-p2", "§4: ber^2(f(A)) < 2.2349 ber(f(A)^2)", S::assert_, checks::berezin_hardy_p2},
      {"improved-berezin", "§4: ber^2(f(A)) < 1.593852 ber(f(A)^2)", S::assert_, checks::improved_berezin},
      {"alpha-interpolated", "§4: ber^p(A)(2 + 2^p sum_{n>=3} n^{-p}) < C_p (ber(|A|^{2p a}) + ber(|A*|^{2p(1-a)}))",
       S::assert_, checks::alpha_interpolated},
      {"convex-berezin", "§4: f^p(ber A)(1 + 2^{p-1} sum_{n>=3} n^{-p}) < C_p ber(f^p(A)), convex f", S::assert_,
       checks::convex_berezin},
      {"convex-berezin-indefinite", "§4: the same with f = exp and A not positive", S::falsifiable,
       checks::convex_berezin_indefinite},
  };
  return checks;
}

inline const TheoremCheck* find_check(const std::string& id) {
  for (const auto& c : registry())
    if (c.id == id) return &c;
  return nullptr;
}

inline std::vector<std::string> check_ids() {
  std::vector<std::string> ids;
  for (const auto& c : registry()) ids.push_back(c.id);
  return ids;
}

inline void validate(const CheckConfig& cfg) {
  if (cfg.dims == 0) throw DomainError("check config: dims must be at least 1");
  if (cfg.dims > 64) throw DomainError("check config: dims above 64 is beyond desk scale");
}

inline CheckReport run_check(const std::string& id, const CheckConfig& cfg) {
  const TheoremCheck* c = find_check(id);
  if (!c) throw DomainError("unknown check id '" + id + "'");
  validate(cfg);
  CheckReport r;
  r.id = c->id;
  r.severity = c->severity;
  r.statement = c->statement;
  r.seed = cfg.seed;
  const auto t0 = std::chrono::steady_clock::now();
  c->run(r, cfg);
  if (cfg.timing)
    r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

/// Runs the checks whose ids pass `filter` (all when empty), in registry order.
inline std::vector<CheckReport> run_all(const CheckConfig& cfg,
                                        const std::function<bool(const std::string&)>& filter = {}) {
  std::vector<CheckReport> out;
  for (const auto& c : registry())
    if (!filter || filter(c.id)) out.push_back(run_check(c.id, cfg));
  return out;
}

/// 1 when an assert check has a violation, 0 otherwise.
inline int exit_status(const std::vector<CheckReport>& reports) {
  return std::any_of(reports.begin(), reports.end(), [](const CheckReport& r) { return r.failed(); }) ? 1 : 0;
}

struct ConstantRow {
  std::string key;
  std::string expression;
  double value = 0.0;
  std::string origin;  // "literature" or "computed"
  std::string inequality;
  bool best = false;
};

/// Constants C of inequalities ber^2(f(A)) <= C ber(f(A)^2) and
/// f^2(ber A) <= C ber(f^2(A)), ascending, with the smallest flagged.
inline std::vector<ConstantRow> constants_table() {
  constexpr double pi = std::numbers::pi;
  const std::string sq = "ber^2(f(A)) <= C ber(f(A)^2)";
  const std::string cv = "f^2(ber A) <= C ber(f^2(A))";
  std::vector<ConstantRow> rows{
      {"improved", "1.593852 (printed)", 1.593852, "literature", sq},
      {"improved-certified", "2/(w_1 + 4 sum_{n>=2} w_n)", hardy::constant_improved(), "computed", sq},
      {"main-p2-n2", "24/(2 pi^2 - 9)", hardy::constant_main(2.0, 2).value, "computed", sq},
      {"remark-n3", "48/(6 pi^2 - 37)", hardy::constant_three_term(2.0).value, "computed", sq},
      {"hilbert-hardy", "36 pi^2/53", 36.0 * pi * pi / 53.0, "literature", sq},
      {"garayev-1", "3(8 pi - 3)/8", 3.0 * (8.0 * pi - 3.0) / 8.0, "literature", sq},
      {"garayev-2", "24 pi/17", 24.0 * pi / 17.0, "literature", sq},
      {"alpha-pq-p2", "128/13", 128.0 / 13.0, "literature", sq},
      {"pq-bound", "4(pq - 1) at p = q = 2", 12.0, "literature", sq},
      {"convex-main", "24/(2 pi^2 - 9)", hardy::constant_main(2.0, 2).value, "computed", cv},
      {"convex-1", "12 pi/7 - 3/14", 12.0 * pi / 7.0 - 3.0 / 14.0, "literature", cv},
      {"convex-2", "15/4", 15.0 / 4.0, "literature", cv},
  };
  std::stable_sort(rows.begin(), rows.end(), [](const ConstantRow& a, const ConstantRow& b) { return a.value < b.value; });
  rows.front().best = true;
  return rows;
}

inline Json to_json(const std::vector<ConstantRow>& rows) {
  Json j = Json::array();
  for (const auto& r : rows)
    j.push_back(Json{{"key", r.key}, {"expression", r.expression}, {"value", r.value}, {"origin", r.origin},
                     {"inequality", r.inequality}, {"best", r.best}});
  return j;
}

}  // namespace opineq::harness
