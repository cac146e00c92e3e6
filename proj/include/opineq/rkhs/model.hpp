#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "opineq/core/errors.hpp"
#include "opineq/core/matrix.hpp"

namespace opineq::rkhs {

/// Largest number of kernel coefficients a truncation may use.
inline constexpr std::size_t kKernelCap = 2'000'000;

/// A sample point of a kernel space, one coordinate per tensor factor.
/// Coordinates of discrete factors are basis indices stored in the real part.
using Point = std::vector<Complex>;

/// Reproducing kernel Hilbert space with an orthonormal basis indexed by n.
///
/// - `beta`: analytic functions on the disc with orthonormal basis z^n / beta_n.
/// - `discrete`: l^2 of a (possibly infinite) index set, kernels are basis vectors.
/// - `product`: tensor product of factor spaces in the lexicographic basis.
class RkhsModel {
 public:
  enum class Kind { beta, discrete, product };
  enum class Family { hardy, bergman, dirichlet, custom };

  /// beta_n = 1, k(z, w) = 1 / (1 - z conj(w)).
  static RkhsModel hardy() {
    return RkhsModel(Family::hardy, "hardy", [](std::size_t) { return 1.0; },
                     [](std::size_t) { return 1.0; });
  }
  /// beta_n = 1 / sqrt(n + 1), k(z, w) = 1 / (1 - z conj(w))^2.
  static RkhsModel bergman() {
    return RkhsModel(
        Family::bergman, "bergman",
        [](std::size_t n) { return 1.0 / std::sqrt(static_cast<double>(n) + 1.0); },
        [](std::size_t n) { return (static_cast<double>(n) + 2.0) / (static_cast<double>(n) + 1.0); });
  }
  /// beta_n = sqrt(n + 1), k(z, w) = -log(1 - z conj(w)) / (z conj(w)).
  static RkhsModel dirichlet() {
    return RkhsModel(Family::dirichlet, "dirichlet",
                     [](std::size_t n) { return std::sqrt(static_cast<double>(n) + 1.0); },
                     [](std::size_t) { return 1.0; });
  }
  /// General weights. `ratio_bound(N)` must dominate beta_n^2 / beta_{n+1}^2 for all n >= N
  /// and tend to at most 1, so that the kernel series converges on the open disc.
  static RkhsModel beta(std::string name, std::function<double(std::size_t)> beta,
                        std::function<double(std::size_t)> ratio_bound) {
    for (std::size_t n = 0; n < 64; ++n)
      if (!(beta(n) > 0.0) || !std::isfinite(beta(n)))
        throw DomainError("rkhs model '" + name + "': beta_" + std::to_string(n) + " must be positive");
    return RkhsModel(Family::custom, std::move(name), std::move(beta), std::move(ratio_bound));
  }
  /// l^2 of {0, ..., count - 1}, or of all naturals when count is empty.
  static RkhsModel discrete(std::optional<std::size_t> count = std::nullopt) {
    if (count && *count == 0) throw DomainError("discrete model: index set is empty");
    RkhsModel m;
    m.kind_ = Kind::discrete;
    m.name_ = "discrete";
    m.count_ = count;
    return m;
  }
  static RkhsModel product(std::vector<RkhsModel> factors) {
    if (factors.size() < 2) throw DomainError("product model: needs at least two factors");
    RkhsModel m;
    m.kind_ = Kind::product;
    m.name_ = "product";
    for (const auto& f : factors) {
      if (f.kind() == Kind::product) throw DomainError("product model: factors must not be products");
      m.name_ += (m.factors_.empty() ? "(" : ",") + f.name();
      m.factors_.push_back(f);
    }
    m.name_ += ")";
    return m;
  }

  Kind kind() const { return kind_; }
  Family family() const { return family_; }
  const std::string& name() const { return name_; }
  std::optional<std::size_t> count() const { return count_; }
  const std::vector<RkhsModel>& factors() const { return factors_; }
  std::size_t arity() const { return kind_ == Kind::product ? factors_.size() : 1; }

  double beta_n(std::size_t n) const { return beta_(n); }
  double ratio_bound(std::size_t n) const { return ratio_(n); }

 private:
  RkhsModel() = default;
  RkhsModel(Family f, std::string name, std::function<double(std::size_t)> beta,
            std::function<double(std::size_t)> ratio)
      : kind_(Kind::beta), family_(f), name_(std::move(name)), beta_(std::move(beta)), ratio_(std::move(ratio)) {}

  Kind kind_ = Kind::beta;
  Family family_ = Family::custom;
  std::string name_;
  std::function<double(std::size_t)> beta_;
  std::function<double(std::size_t)> ratio_;
  std::optional<std::size_t> count_;
  std::vector<RkhsModel> factors_;
};

/// Model by CLI name: hardy, bergman, dirichlet, discrete.
inline RkhsModel parse_model(const std::string& s) {
  if (s == "hardy") return RkhsModel::hardy();
  if (s == "bergman") return RkhsModel::bergman();
  if (s == "dirichlet") return RkhsModel::dirichlet();
  if (s == "discrete") return RkhsModel::discrete();
  throw DomainError("unknown space '" + s + "' (expected hardy, bergman, dirichlet or discrete)");
}

namespace detail {

inline void require_disc(Complex w, const char* who) {
  if (!(std::abs(w) < 1.0))
    throw DomainError(std::string(who) + ": point must lie in the open unit disc");
}

inline std::size_t require_index(const RkhsModel& m, Complex w, const char* who) {
  const double r = w.real();
  if (w.imag() != 0.0 || !(r >= 0.0) || r != std::floor(r) || r > 9.0e15)
    throw DomainError(std::string(who) + ": discrete points are nonnegative integer indices");
  const auto n = static_cast<std::size_t>(r);
  if (m.count() && n >= *m.count())
    throw DomainError(std::string(who) + ": index " + std::to_string(n) + " outside the index set");
  return n;
}

// Bound on sum_{n >= N} q^n / beta_n^2 for 0 <= q < 1; infinite if the ratio test fails at N.
inline double beta_tail(const RkhsModel& m, double q, std::size_t n) {
  if (q == 0.0) return n == 0 ? 1.0 : 0.0;
  const double rho = q * m.ratio_bound(n);
  if (!(rho < 1.0)) return std::numeric_limits<double>::infinity();
  const double b = m.beta_n(n);
  return std::exp(static_cast<double>(n) * std::log(q)) / (b * b) / (1.0 - rho);
}

// sum_{n >= 0} x^n / beta_n^2 for |x| < 1, with the truncation bound added to `err`.
inline Complex beta_series(const RkhsModel& m, Complex x, double tol, double& err) {
  const double q = std::abs(x);
  Complex s{0.0};
  Complex pw{1.0};
  for (std::size_t n = 0; n < kKernelCap; ++n) {
    const double t = beta_tail(m, q, n);
    if (t <= tol * std::max(1.0, std::abs(s))) {
      err += t;
      return s;
    }
    const double b = m.beta_n(n);
    s += pw / (b * b);
    pw *= x;
  }
  throw ConvergenceError("kernel series did not reach the requested tolerance", kKernelCap);
}

}  // namespace detail

/// k(z, w) for a single-factor model. Closed forms for the Hardy, Bergman and
/// Dirichlet families; certified truncated series otherwise.
inline Complex kernel_eval(const RkhsModel& m, Complex z, Complex w, double tol = 1e-14) {
  switch (m.kind()) {
    case RkhsModel::Kind::discrete:
      return detail::require_index(m, z, "kernel_eval") == detail::require_index(m, w, "kernel_eval")
                 ? Complex(1.0)
                 : Complex(0.0);
    case RkhsModel::Kind::product:
      throw DomainError("kernel_eval: product models take one coordinate per factor");
    case RkhsModel::Kind::beta: break;
  }
  detail::require_disc(z, "kernel_eval");
  detail::require_disc(w, "kernel_eval");
  const Complex x = z * std::conj(w);
  switch (m.family()) {
    case RkhsModel::Family::hardy: return 1.0 / (1.0 - x);
    case RkhsModel::Family::bergman: return 1.0 / ((1.0 - x) * (1.0 - x));
    case RkhsModel::Family::dirichlet:
      if (std::abs(x) < 1e-8) return 1.0 + x / 2.0 + x * x / 3.0;
      return -std::log(1.0 - x) / x;
    case RkhsModel::Family::custom: break;
  }
  double err = 0.0;
  return detail::beta_series(m, x, tol, err);
}

inline Complex kernel_eval(const RkhsModel& m, const Point& z, const Point& w, double tol = 1e-14) {
  if (z.size() != m.arity() || w.size() != m.arity())
    throw DomainError("kernel_eval: point arity does not match the model");
  if (m.kind() != RkhsModel::Kind::product) return kernel_eval(m, z[0], w[0], tol);
  Complex v{1.0};
  for (std::size_t i = 0; i < m.arity(); ++i) v *= kernel_eval(m.factors()[i], z[i], w[i], tol);
  return v;
}

/// ||k_w||^2 = k(w, w) for a single-factor beta model.
inline double kernel_norm2(const RkhsModel& m, Complex w) {
  if (m.kind() != RkhsModel::Kind::beta) return 1.0;
  return kernel_eval(m, w, w).real();
}

/// Normalized kernel truncated to its first N coefficients, with the squared
/// l^2 mass of the dropped coefficients.
struct KernelState {
  ComplexVector coeffs;
  double tail = 0.0;
};

/// Smallest N whose normalized-kernel tail mass is at most `tol`.
inline std::size_t kernel_truncation(const RkhsModel& m, Complex w, double tol) {
  if (!(tol > 0.0)) throw DomainError("kernel_truncation: tol must be positive");
  if (m.kind() == RkhsModel::Kind::discrete) return detail::require_index(m, w, "kernel_truncation") + 1;
  if (m.kind() == RkhsModel::Kind::product)
    throw DomainError("kernel_truncation: product models are truncated per factor");
  detail::require_disc(w, "kernel_truncation");
  const double q = std::norm(w);
  const double k2 = kernel_norm2(m, w);
  if (q == 0.0) return 1;
  // Geometric search followed by bisection on the monotone tail bound.
  std::size_t hi = 1;
  while (!(detail::beta_tail(m, q, hi) / k2 <= tol)) {
    if (hi >= kKernelCap)
      throw ConvergenceError("kernel_truncation: kernel tail not certified at |w| = " +
                                 std::to_string(std::abs(w)),
                             kKernelCap);
    hi = std::min(kKernelCap, 2 * hi);
  }
  std::size_t lo = hi / 2;
  while (lo + 1 < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (detail::beta_tail(m, q, mid) / k2 <= tol)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

/// Coefficients c_n(w) = conj(w)^n / beta_n / ||k_w|| for n < N.
inline KernelState normalized_kernel(const RkhsModel& m, Complex w, std::size_t n, double tol) {
  if (n == 0) throw DomainError("normalized_kernel: N must be at least 1");
  KernelState s;
  if (m.kind() == RkhsModel::Kind::discrete) {
    const std::size_t idx = detail::require_index(m, w, "normalized_kernel");
    if (idx >= n) throw DomainError("normalized_kernel: N does not reach the index");
    s.coeffs = ComplexVector::Zero(static_cast<Eigen::Index>(n));
    s.coeffs(static_cast<Eigen::Index>(idx)) = 1.0;
    return s;
  }
  if (m.kind() == RkhsModel::Kind::product)
    throw DomainError("normalized_kernel: product models are normalized per factor");
  detail::require_disc(w, "normalized_kernel");
  const double q = std::norm(w);
  const double k2 = kernel_norm2(m, w);
  s.tail = q == 0.0 ? 0.0 : detail::beta_tail(m, q, n) / k2;
  if (!(s.tail <= tol))
    throw ConvergenceError("normalized_kernel: N = " + std::to_string(n) +
                               " leaves a kernel tail above tolerance",
                           n);
  const double inv = 1.0 / std::sqrt(k2);
  s.coeffs.resize(static_cast<Eigen::Index>(n));
  Complex pw{1.0};
  const Complex wc = std::conj(w);
  for (std::size_t k = 0; k < n; ++k) {
    s.coeffs(static_cast<Eigen::Index>(k)) = pw * (inv / m.beta_n(k));
    pw *= wc;
  }
  return s;
}

/// Normalized kernel with the truncation chosen from `tol`.
inline KernelState normalized_kernel(const RkhsModel& m, Complex w, double tol) {
  return normalized_kernel(m, w, kernel_truncation(m, w, tol), tol);
}

}  // namespace opineq::rkhs
