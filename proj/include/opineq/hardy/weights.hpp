#pragma once

/// @file weights.hpp
/// Discrete Hardy weights, weight sums and power tails with certified brackets.

#include <cmath>
#include <cstddef>
#include <map>
#include <mutex>
#include <string>
#include <tuple>

#include "opineq/core/errors.hpp"
#include "opineq/core/summation.hpp"

namespace opineq::hardy {

/// Weight family of the weighted inequality sum w_n (a_1 + ... + a_n)^2 <= sum a_n^2.
enum class WeightKind { classical, improved };

inline const char* to_string(WeightKind k) {
  return k == WeightKind::classical ? "classical" : "improved";
}

inline WeightKind parse_weight_kind(const std::string& s) {
  if (s == "classical") return WeightKind::classical;
  if (s == "improved") return WeightKind::improved;
  throw DomainError("unknown weight kind '" + s + "' (expected classical or improved)");
}

/// Largest number of terms any series in this module will add up.
inline constexpr std::size_t kSummationCap = 10'000'000;

/// Weight w_n for n >= 1.
///
/// The improved weight 2 - sqrt(1 + 1/n) - sqrt(1 - 1/n) is evaluated in the
/// cancellation-free form 2x^2 / ((a + b)(1 + a)(1 + b)) with x = 1/n,
/// a = sqrt(1 + x), b = sqrt(1 - x).
inline double weight(WeightKind kind, std::size_t n) {
  if (n == 0) throw DomainError("hardy weight: index must be >= 1");
  const double nd = static_cast<double>(n);
  if (kind == WeightKind::classical) return 1.0 / (4.0 * nd * nd);
  const double x = 1.0 / nd;
  const double a = std::sqrt(1.0 + x);
  const double b = std::sqrt(1.0 - x);
  return 2.0 * x * x / ((a + b) * (1.0 + a) * (1.0 + b));
}

/// Sum of w_1..w_m, added smallest term first.
inline double partial_weight_sum(WeightKind kind, std::size_t m) {
  CompensatedSum s;
  for (std::size_t n = m; n >= 1; --n) s.add(weight(kind, n));
  return s.value();
}

/// Certified value of a convergent series.
struct SeriesEstimate {
  double value = 0.0;        ///< point estimate
  double error_bound = 0.0;  ///< |value - true sum| <= error_bound
  Enclosure bracket;         ///< interval containing the true sum
  std::size_t terms = 0;     ///< number of explicitly summed terms
};

namespace detail {

// Interval for sum_{n > m} n^{-p} from the integral test.
inline Enclosure integral_tail(double p, std::size_t m) {
  const double md = static_cast<double>(m);
  return {std::pow(md + 1.0, 1.0 - p) / (p - 1.0), std::pow(md, 1.0 - p) / (p - 1.0)};
}

// Relative slack covering floating-point error of a compensated partial sum.
inline constexpr double kRoundingSlack = 8.0 * 2.220446049250313e-16;

inline Enclosure widen(Enclosure e) {
  return {e.lo - kRoundingSlack * std::abs(e.lo), e.hi + kRoundingSlack * std::abs(e.hi)};
}

}  // namespace detail

/// Interval containing sum_{n > N} n^{-p}, of width at most `tol`.
///
/// Partial sum up to an adaptively chosen M, followed by
/// int_{M+1}^inf x^{-p} dx <= tail <= int_M^inf x^{-p} dx.
/// Results are memoised per (p, N, tol).
inline Enclosure tail_power_sum(double p, std::size_t N, double tol = 1e-10) {
  if (!(p > 1.0)) throw DomainError("tail_power_sum: series diverges for p <= 1");
  if (!(tol > 0.0)) throw DomainError("tail_power_sum: tolerance must be positive");

  static std::mutex mutex;
  static std::map<std::tuple<double, std::size_t, double>, Enclosure> cache;
  const auto key = std::make_tuple(p, N, tol);
  {
    std::lock_guard<std::mutex> lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }

  // Width of the integral bracket at M is below M^{-p}; pick M accordingly.
  std::size_t m = std::max<std::size_t>(N, 1);
  double target = std::ceil(std::pow(tol * 0.5, -1.0 / p));
  if (target > static_cast<double>(kSummationCap) + static_cast<double>(N))
    throw ConvergenceError("tail_power_sum: tolerance not reachable for p = " +
                               std::to_string(p),
                           kSummationCap);
  m = std::max<std::size_t>(m, static_cast<std::size_t>(target));
  while (true) {
    const Enclosure t = detail::integral_tail(p, m);
    if (t.width() <= 0.5 * tol) break;
    if (m - N >= kSummationCap)
      throw ConvergenceError("tail_power_sum: summation cap reached", kSummationCap);
    m *= 2;
  }

  CompensatedSum s;
  for (std::size_t n = m; n > N; --n) s.add(std::pow(static_cast<double>(n), -p));
  const Enclosure t = detail::integral_tail(p, m);
  const Enclosure result = detail::widen({s.value() + t.lo, s.value() + t.hi});

  std::lock_guard<std::mutex> lock(mutex);
  cache.emplace(key, result);
  return result;
}

/// Interval containing sum_{n > m} w_n for m >= 1.
///
/// Classical: (1/4) sum n^{-2}. Improved: w_n = 1/(4n^2) + r_n with
/// 5/(64 n^4) <= r_n <= 5/(48 n^4) for n >= 2.
inline Enclosure weight_tail(WeightKind kind, std::size_t m, double tol = 1e-12) {
  if (m == 0) throw DomainError("weight_tail: m must be >= 1");
  const Enclosure t2 = tail_power_sum(2.0, m, tol);
  Enclosure out{0.25 * t2.lo, 0.25 * t2.hi};
  if (kind == WeightKind::improved) {
    const Enclosure t4 = tail_power_sum(4.0, m, tol);
    out.lo += 5.0 / 64.0 * t4.lo;
    out.hi += 5.0 / 48.0 * t4.hi;
  }
  return out;
}

/// Sum of all weights with |value - true sum| <= tol.
inline SeriesEstimate weight_sum(WeightKind kind, double tol) {
  if (!(tol > 0.0)) throw DomainError("weight_sum: tolerance must be positive");
  // Tail bracket width is about 1/(4 m^2) for both families.
  const double need = std::ceil(std::sqrt(1.0 / (4.0 * tol)));
  if (need > static_cast<double>(kSummationCap))
    throw ConvergenceError("weight_sum: tolerance too small to certify", kSummationCap);
  std::size_t m = std::max<std::size_t>(16, static_cast<std::size_t>(need));

  while (true) {
    const double partial = partial_weight_sum(kind, m);
    const double slack = detail::kRoundingSlack * partial;
    // The integral bracket of the n^{-2} part is exact in closed form here.
    const double md = static_cast<double>(m);
    Enclosure tail{0.25 / (md + 1.0), 0.25 / md};
    if (kind == WeightKind::improved) {
      tail.lo += 5.0 / 64.0 / (3.0 * (md + 1.0) * (md + 1.0) * (md + 1.0));
      tail.hi += 5.0 / 48.0 / (3.0 * md * md * md);
    }
    const Enclosure bracket{partial + tail.lo - slack, partial + tail.hi + slack};
    if (0.5 * bracket.width() <= tol) {
      return {bracket.mid(), 0.5 * bracket.width(), bracket, m};
    }
    if (2 * m > kSummationCap)
      throw ConvergenceError("weight_sum: tolerance too small to certify", kSummationCap);
    m *= 2;
  }
}

}  // namespace opineq::hardy
