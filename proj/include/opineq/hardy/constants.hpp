#pragma once

/// @file constants.hpp
/// Inequality constants built on the discrete Hardy inequality, and a
/// checker for the scalar weighted inequality on finite sequences.

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "opineq/hardy/weights.hpp"

namespace opineq::hardy {

/// A constant C in <f(A)x, x>^p <= C <f(A)^p x, x> together with its provenance.
struct HardyConstant {
  double p = 2.0;
  std::size_t N = 0;
  double value = 0.0;
  Enclosure tail_bracket;   ///< enclosure of the infinite tail sum that was used
  Enclosure value_bracket;  ///< enclosure of the constant induced by tail_bracket
};

/// Sharp Hardy factor (p / (p - 1))^p.
inline double hardy_factor(double p) {
  if (!(p > 1.0)) throw DomainError("hardy constant: p must exceed 1");
  return std::pow(p / (p - 1.0), p);
}

/// (p/(p-1))^p / (1 + N^{p-1} sum_{n > N} n^{-p}).
inline HardyConstant constant_main(double p, std::size_t N, double tol = 1e-10) {
  if (!(p > 1.0)) throw DomainError("constant_main: p must exceed 1");
  if (N == 0) throw DomainError("constant_main: N must be >= 1");
  const double c = hardy_factor(p);
  const Enclosure tail = tail_power_sum(p, N, tol);
  const double scale = std::pow(static_cast<double>(N), p - 1.0);
  HardyConstant out;
  out.p = p;
  out.N = N;
  out.tail_bracket = tail;
  out.value = c / (1.0 + scale * tail.mid());
  out.value_bracket = {c / (1.0 + scale * tail.hi), c / (1.0 + scale * tail.lo)};
  return out;
}

/// Constant of the three-term variant: 3 (p/(p-1))^p / (2 + 3^p S).
///
/// With `literal_inverse_squares` false, S = sum_{n >= 3} n^{-p}; the result then
/// coincides with constant_main(p, 3). With it true, S = sum_{n >= 3} 1/n^2 for
/// every p, exactly as printed in the source of the inequality.
inline HardyConstant constant_three_term(double p, bool literal_inverse_squares = false,
                                         double tol = 1e-10) {
  const double c = hardy_factor(p);
  const Enclosure tail = tail_power_sum(literal_inverse_squares ? 2.0 : p, 2, tol);
  const double scale = std::pow(3.0, p);
  HardyConstant out;
  out.p = p;
  out.N = 3;
  out.tail_bracket = tail;
  out.value = 3.0 * c / (2.0 + scale * tail.mid());
  out.value_bracket = {3.0 * c / (2.0 + scale * tail.hi), 3.0 * c / (2.0 + scale * tail.lo)};
  return out;
}

/// 2 / (w_1 + 4 sum_{n >= 2} w_n) for the given weight family.
inline HardyConstant constant_from_weights(WeightKind kind, double tol = 1e-7) {
  const SeriesEstimate s = weight_sum(kind, tol);
  const double w1 = weight(kind, 1);
  auto eval = [&](double total) { return 2.0 / (w1 + 4.0 * (total - w1)); };
  HardyConstant out;
  out.p = 2.0;
  out.N = 2;
  out.tail_bracket = s.bracket;
  out.value = eval(s.value);
  out.value_bracket = {eval(s.bracket.hi), eval(s.bracket.lo)};
  return out;
}

/// Constant of the improved-weight Berezin inequality ber^2(f(A)) < C ber(f(A)^2).
inline double constant_improved() {
  return constant_from_weights(WeightKind::improved).value;
}

/// Both sides of a weighted discrete Hardy inequality on a finite sequence.
struct ScalarHardyReport {
  double lhs = 0.0;       ///< weighted left side, tail bounded from above
  double rhs = 0.0;       ///< sum of a_n^p
  double margin = 0.0;    ///< rhs - lhs
  bool equality = false;  ///< all-zero sequence
};

/// Evaluates ((p-1)/p)^p sum_n (A_n / n)^p <= sum_n a_n^p with A_n = a_1 + ... + a_n.
///
/// For p = 2 this is sum_n (1/(4n^2)) A_n^2 <= sum_n a_n^2. With the improved
/// family (p = 2 only) the weights 1/(4n^2) are replaced by w_n. Beyond the
/// support the partial sums are constant, so the infinite remainder is
/// A_L^p times a certified tail of the weights.
inline ScalarHardyReport check_scalar_hardy(std::span<const double> a, double p,
                                            WeightKind kind = WeightKind::classical) {
  if (!(p > 1.0)) throw DomainError("check_scalar_hardy: p must exceed 1");
  if (kind == WeightKind::improved && p != 2.0)
    throw DomainError("check_scalar_hardy: improved weights require p = 2");
  for (double v : a)
    if (!(v >= 0.0)) throw DomainError("check_scalar_hardy: entries must be nonnegative");

  const double scale = 1.0 / hardy_factor(p);
  CompensatedSum lhs, rhs;
  double partial = 0.0;
  const std::size_t L = a.size();
  for (std::size_t n = 1; n <= L; ++n) {
    partial += a[n - 1];
    rhs.add(std::pow(a[n - 1], p));
    if (kind == WeightKind::improved)
      lhs.add(weight(kind, n) * partial * partial);
    else
      lhs.add(scale * std::pow(partial / static_cast<double>(n), p));
  }
  ScalarHardyReport out;
  if (L > 0 && partial > 0.0) {
    double tail_hi;
    if (kind == WeightKind::improved)
      tail_hi = weight_tail(kind, L).hi;
    else
      tail_hi = scale * tail_power_sum(p, L, 1e-9).hi;
    lhs.add(std::pow(partial, p) * tail_hi);
  }
  out.lhs = lhs.value();
  out.rhs = rhs.value();
  out.margin = out.rhs - out.lhs;
  out.equality = (partial == 0.0);
  return out;
}

/// Closed forms used as references.
namespace closed_form {
inline double classical_weight_sum() { return std::numbers::pi * std::numbers::pi / 24.0; }
inline double main_p2_n2() { return 24.0 / (2.0 * std::numbers::pi * std::numbers::pi - 9.0); }
inline double three_term_p2() { return 48.0 / (6.0 * std::numbers::pi * std::numbers::pi - 37.0); }
}  // namespace closed_form

}  // namespace opineq::hardy
