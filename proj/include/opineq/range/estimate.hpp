#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "opineq/linops/functional.hpp"
#include "opineq/range/geometry.hpp"
#include "opineq/range/support.hpp"

namespace opineq::range {

struct SweepSample {
  double theta = 0.0;
  double lambda_max = 0.0;
  double lambda_min = 0.0;
};

// Certified enclosures of the numerical radius and the Crawford number.
struct RangeEstimate {
  std::optional<Enclosure> omega;
  std::optional<Enclosure> crawford;
  std::vector<SweepSample> sweep;  // evidence, ordered by theta in [0, 2 pi)
  double lipschitz = 0.0;          // operator norm used as the Lipschitz constant of h
  std::size_t evaluations = 0;     // Hermitian eigenproblems solved
  std::string method;              // "sweep", "hermitian", "diagonal", "ellipse" or "circular"

  double omega_lo() const { return omega.value().lo; }
  double omega_hi() const { return omega.value().hi; }
  double crawford_lo() const { return crawford.value().lo; }
  double crawford_hi() const { return crawford.value().hi; }
};

struct SweepOptions {
  std::size_t initial_directions = 720;  // must be even
  std::size_t max_evaluations = 1u << 17;
};

namespace detail {

inline constexpr double kEps = std::numeric_limits<double>::epsilon();

// Support-function samples on the dyadic direction lattice theta_k = 2 pi k / K.
// Keys are integers so that opposite directions (k + K/2) and interval midpoints
// are exact.
class DirectionLattice {
 public:
  static constexpr unsigned kDepth = 40;

  DirectionLattice(const SupportOracle& oracle, std::size_t initial, double eig_err)
      : oracle_(oracle), period_(static_cast<std::uint64_t>(initial) << kDepth), eig_err_(eig_err) {
    if (initial < 8 || initial % 2 != 0)
      throw DomainError("range sweep: initial direction count must be even and >= 8");
    const std::uint64_t step = period_ / initial;
    for (std::uint64_t k = 0; k < period_ / 2; k += step) evaluate(k);
  }

  double theta(std::uint64_t k) const {
    return 2.0 * std::numbers::pi * (static_cast<double>(k) / static_cast<double>(period_));
  }

  void evaluate(std::uint64_t k) {
    k %= period_;
    if (samples_.count(k)) return;
    const DirectionPair d = oracle_(theta(k));
    ++evaluations_;
    const std::uint64_t opp = (k + period_ / 2) % period_;
    samples_[k] = {d.h, d.point, d.has_points};
    samples_[opp] = {d.h_opposite, d.point_opposite, d.has_points};
  }

  // Bisects the interval starting at key k; false when it cannot be split.
  bool bisect(std::uint64_t k) {
    auto it = samples_.find(k);
    auto nx = std::next(it);
    const std::uint64_t kb = nx == samples_.end() ? samples_.begin()->first + period_ : nx->first;
    if (kb - k < 2) return false;
    evaluate(k + (kb - k) / 2);
    return true;
  }

  std::size_t evaluations() const { return evaluations_; }

  struct Entry {
    double h;
    Complex point;
    bool has_point;
  };
  struct Interval {
    std::uint64_t ka;
    double h_a, h_b, delta;
  };

  std::vector<Interval> intervals() const {
    std::vector<Interval> out;
    out.reserve(samples_.size());
    for (auto it = samples_.begin(); it != samples_.end(); ++it) {
      auto nx = std::next(it);
      const bool wrap = nx == samples_.end();
      if (wrap) nx = samples_.begin();
      const std::uint64_t kb = wrap ? nx->first + period_ : nx->first;
      const double delta = 2.0 * std::numbers::pi *
                           (static_cast<double>(kb - it->first) / static_cast<double>(period_));
      out.push_back({it->first, it->second.h, nx->second.h, delta});
    }
    return out;
  }

  // Max over phi in [a, b] of the support function of the outer polygon,
  // i.e. of <v, e^{i phi}> for the vertex v where the two support lines meet.
  // Writing phi = a + t: g(t) = h_a cos t + beta sin t.
  double interval_peak(const Interval& iv) const {
    const double s = std::sin(iv.delta);
    const double half = std::sin(0.5 * iv.delta);
    const double beta = ((iv.h_b - iv.h_a) + 2.0 * iv.h_a * half * half) / s;
    const double t = std::atan2(beta, iv.h_a);
    double v;
    if (t >= 0.0 && t <= iv.delta)
      v = std::hypot(iv.h_a, beta);
    else
      v = std::max(iv.h_a, iv.h_b);
    return v + 3.0 * eig_err_ + 8.0 * kEps * std::abs(v);
  }

  const std::map<std::uint64_t, Entry>& samples() const { return samples_; }
  std::uint64_t period() const { return period_; }

 private:
  const SupportOracle& oracle_;
  std::uint64_t period_;
  double eig_err_;
  std::map<std::uint64_t, Entry> samples_;
  std::size_t evaluations_ = 0;
};

inline std::vector<SweepSample> sweep_evidence(const DirectionLattice& lat) {
  std::vector<SweepSample> out;
  const auto& s = lat.samples();
  out.reserve(s.size());
  for (const auto& [k, e] : s) {
    const auto opp = s.find((k + lat.period() / 2) % lat.period());
    out.push_back({lat.theta(k), e.h, -opp->second.h});
  }
  return out;
}

inline double eigen_error(const ComplexMatrix& a) {
  return 16.0 * kEps * static_cast<double>(a.rows()) * a.norm();
}

struct OmegaState {
  double lo, hi;
  std::vector<std::uint64_t> refine;
};

inline OmegaState omega_state(const DirectionLattice& lat, double tol, double eig_err) {
  double lo = 0.0;
  for (const auto& [k, e] : lat.samples()) {
    lo = std::max(lo, e.h - eig_err);
    if (e.has_point) lo = std::max(lo, std::abs(e.point) - eig_err);
  }
  const auto ivs = lat.intervals();
  std::vector<double> peaks(ivs.size());
  double hi = 0.0;
  for (std::size_t i = 0; i < ivs.size(); ++i) {
    peaks[i] = lat.interval_peak(ivs[i]);
    hi = std::max(hi, peaks[i]);
  }
  OmegaState st{lo, std::max(hi, lo), {}};
  if (st.hi - st.lo > tol)
    for (std::size_t i = 0; i < ivs.size(); ++i)
      if (peaks[i] > lo + 0.5 * tol) st.refine.push_back(ivs[i].ka);
  return st;
}

struct CrawfordState {
  double lo, hi;
  std::uint64_t best_key;
};

inline CrawfordState crawford_state(const DirectionLattice& lat, double eig_err, double point_err) {
  double best = -std::numeric_limits<double>::infinity();
  std::uint64_t best_key = 0;
  std::vector<Complex> pts;
  pts.reserve(lat.samples().size());
  for (const auto& [k, e] : lat.samples()) {
    if (-e.h > best) {
      best = -e.h;
      best_key = k;
    }
    pts.push_back(e.point);
  }
  const double lo = std::max(0.0, best - eig_err);
  const double hi = origin_distance(pts) + point_err;
  return {lo, std::max(lo, hi), best_key};
}

}  // namespace detail

// Hermitian input: W(A) is the segment [lambda_min, lambda_max].
inline RangeEstimate hermitian_estimate(const ComplexMatrix& a, bool want_omega, bool want_crawford) {
  const double skew = 0.5 * hermitian_defect(a);
  const ComplexMatrix h = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalFailure("range: eigensolver failed");
  const double lmin = es.eigenvalues()(0);
  const double lmax = es.eigenvalues()(es.eigenvalues().size() - 1);
  const double err = detail::eigen_error(a) + skew;
  RangeEstimate r;
  r.method = "hermitian";
  r.evaluations = 1;
  r.lipschitz = std::max(std::abs(lmin), std::abs(lmax)) + skew;
  r.sweep = {{0.0, lmax, lmin}, {std::numbers::pi, -lmin, -lmax}};
  if (want_omega) {
    const double w = std::max(std::abs(lmin), std::abs(lmax));
    r.omega = Enclosure{std::max(0.0, w - err), w + err};
  }
  if (want_crawford) {
    const double c = lmin > 0.0 ? lmin : (lmax < 0.0 ? -lmax : 0.0);
    r.crawford = Enclosure{std::max(0.0, c - err), c + err};
  }
  return r;
}

// Diagonal input: W(A) is the convex hull of the diagonal.
inline RangeEstimate diagonal_estimate(const ComplexMatrix& a, bool want_omega, bool want_crawford) {
  std::vector<Complex> d(static_cast<std::size_t>(a.rows()));
  for (Eigen::Index i = 0; i < a.rows(); ++i) d[static_cast<std::size_t>(i)] = a(i, i);
  const double scale = max_modulus(d);
  const double err = 8.0 * detail::kEps * scale;
  RangeEstimate r;
  r.method = "diagonal";
  r.lipschitz = scale;
  if (want_omega) r.omega = Enclosure{std::max(0.0, scale - err), scale + err};
  if (want_crawford) {
    const double c = origin_distance(d);
    r.crawford = Enclosure{std::max(0.0, c - err), c + err};
  }
  return r;
}

namespace detail {

// Integer levels d with d_i - d_j = 1 for every nonzero a_ij. When they exist,
// diag(e^{i d_k phi}) conjugates A to e^{i phi} A, so W(A) is a disc about 0.
inline bool circular_grading(const ComplexMatrix& a) {
  const Eigen::Index n = a.rows();
  std::vector<long long> level(static_cast<std::size_t>(n), 0);
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::vector<Eigen::Index> stack;
  for (Eigen::Index root = 0; root < n; ++root) {
    if (seen[static_cast<std::size_t>(root)]) continue;
    seen[static_cast<std::size_t>(root)] = true;
    stack.push_back(root);
    while (!stack.empty()) {
      const Eigen::Index i = stack.back();
      stack.pop_back();
      const long long di = level[static_cast<std::size_t>(i)];
      for (Eigen::Index j = 0; j < n; ++j) {
        const bool out = a(j, i) != Complex(0.0);  // e_i -> e_j: d_j = d_i + 1
        const bool in = a(i, j) != Complex(0.0);   // e_j -> e_i: d_j = d_i - 1
        if (!out && !in) continue;
        if (out && in) return false;
        const long long want = out ? di + 1 : di - 1;
        auto& dj = level[static_cast<std::size_t>(j)];
        if (seen[static_cast<std::size_t>(j)]) {
          if (dj != want) return false;
        } else {
          seen[static_cast<std::size_t>(j)] = true;
          dj = want;
          stack.push_back(j);
        }
      }
    }
  }
  return true;
}

}  // namespace detail

// Rotation-invariant input: W(A) is the disc of radius lambda_max(Re A) about 0.
inline RangeEstimate circular_estimate(const ComplexMatrix& a, bool want_omega, bool want_crawford) {
  const double rad = lambda_max(hermitian_part(a, 0.0));
  const double err = detail::eigen_error(a);
  RangeEstimate r;
  r.method = "circular";
  r.evaluations = 1;
  r.lipschitz = op_norm(a);
  r.sweep = {{0.0, rad, -rad}, {std::numbers::pi, rad, -rad}};
  if (want_omega) r.omega = Enclosure{std::max(0.0, rad - err), rad + err};
  if (want_crawford) r.crawford = Enclosure{0.0, 0.0};
  return r;
}

// Traceless 2x2 input: W(A) is the ellipse about 0 with foci +-lambda and
// minor axis sqrt(|A|_F^2 - 2 |lambda|^2).
inline RangeEstimate ellipse_estimate(const ComplexMatrix& a, bool want_omega, bool want_crawford) {
  const Complex lam = std::sqrt(a(0, 1) * a(1, 0) - a(0, 0) * a(1, 1));
  const double fro2 = a.squaredNorm();
  const double minor = 0.5 * std::sqrt(std::max(0.0, fro2 - 2.0 * std::norm(lam)));
  const double major = std::sqrt(minor * minor + std::norm(lam));
  const double err = 16.0 * detail::kEps * std::sqrt(fro2);
  RangeEstimate r;
  r.method = "ellipse";
  r.evaluations = 1;
  r.lipschitz = op_norm(a);
  r.sweep = {{0.0, major, -major}, {std::numbers::pi, major, -major}};
  if (want_omega) r.omega = Enclosure{std::max(0.0, major - err), major + err};
  if (want_crawford) r.crawford = Enclosure{0.0, 0.0};
  return r;
}

// Joint estimate. Either enclosure may be skipped; tolerances apply to the
// width hi - lo.
inline RangeEstimate analyze_range(const ComplexMatrix& a, std::optional<double> omega_tol,
                                   std::optional<double> crawford_tol, SweepOptions opt = {}) {
  require_square(a, "numerical range");
  require_finite(a, "numerical range");
  if (a.rows() == 0) throw DomainError("numerical range: empty matrix");
  for (auto t : {omega_tol, crawford_tol})
    if (t && !(*t > 0.0)) throw DomainError("numerical range: tolerance must be positive");

  const double fro = a.norm();
  if (fro == 0.0) {
    RangeEstimate r;
    r.method = "hermitian";
    if (omega_tol) r.omega = Enclosure{0.0, 0.0};
    if (crawford_tol) r.crawford = Enclosure{0.0, 0.0};
    return r;
  }
  if (is_diagonal(a)) return diagonal_estimate(a, omega_tol.has_value(), crawford_tol.has_value());
  if (hermitian_defect(a) <= 64.0 * detail::kEps * fro)
    return hermitian_estimate(a, omega_tol.has_value(), crawford_tol.has_value());
  if (a.rows() == 2 && std::abs(a(0, 0) + a(1, 1)) <= 64.0 * detail::kEps * fro)
    return ellipse_estimate(a, omega_tol.has_value(), crawford_tol.has_value());
  if (detail::circular_grading(a))
    return circular_estimate(a, omega_tol.has_value(), crawford_tol.has_value());

  const bool want_points = crawford_tol.has_value();
  const SupportOracle oracle(a, want_points);
  const double eig_err = detail::eigen_error(a);
  const double point_err = 4.0 * detail::kEps * static_cast<double>(a.rows()) * fro;
  detail::DirectionLattice lat(oracle, opt.initial_directions, eig_err);

  RangeEstimate r;
  r.method = "sweep";
  r.lipschitz = op_norm(a);

  auto fail = [&](const std::string& what, Enclosure best) {
    throw NumericalFailure("numerical range: " + what + " not certified within " +
                               std::to_string(opt.max_evaluations) + " evaluations",
                           best);
  };

  if (omega_tol) {
    while (true) {
      const auto st = detail::omega_state(lat, *omega_tol, eig_err);
      if (st.refine.empty()) {
        if (st.hi - st.lo > *omega_tol) fail("numerical radius", {st.lo, st.hi});
        r.omega = Enclosure{st.lo, std::min(st.hi, r.lipschitz * (1.0 + 4.0 * detail::kEps) + eig_err)};
        r.omega->hi = std::max(r.omega->hi, r.omega->lo);
        break;
      }
      if (lat.evaluations() + st.refine.size() > opt.max_evaluations) fail("numerical radius", {st.lo, st.hi});
      bool progressed = false;
      for (std::uint64_t k : st.refine) progressed |= lat.bisect(k);
      if (!progressed) fail("numerical radius", {st.lo, st.hi});
    }
  }

  if (crawford_tol) {
    while (true) {
      const auto st = detail::crawford_state(lat, eig_err, point_err);
      if (st.hi - st.lo <= *crawford_tol) {
        r.crawford = Enclosure{st.lo, st.hi};
        break;
      }
      if (lat.evaluations() + 4 > opt.max_evaluations) fail("Crawford number", {st.lo, st.hi});
      // Refine the two intervals around the best direction, then their neighbours.
      const auto& s = lat.samples();
      auto it = s.find(st.best_key);
      const std::uint64_t prev = it == s.begin() ? std::prev(s.end())->first : std::prev(it)->first;
      const bool a1 = lat.bisect(st.best_key);
      const bool a2 = lat.bisect(prev);
      if (!a1 && !a2) fail("Crawford number", {st.lo, st.hi});
    }
  }

  r.evaluations = lat.evaluations();
  r.sweep = detail::sweep_evidence(lat);
  return r;
}

inline RangeEstimate numerical_radius(const ComplexMatrix& a, double tol = 1e-10, SweepOptions opt = {}) {
  return analyze_range(a, tol, std::nullopt, opt);
}

inline RangeEstimate crawford_number(const ComplexMatrix& a, double tol = 1e-10, SweepOptions opt = {}) {
  return analyze_range(a, std::nullopt, tol, opt);
}

// Midpoint of the numerical radius enclosure.
inline double omega(const ComplexMatrix& a, double tol = 1e-10) {
  return numerical_radius(a, tol).omega->mid();
}

inline double crawford(const ComplexMatrix& a, double tol = 1e-10) {
  return crawford_number(a, tol).crawford->mid();
}

}  // namespace opineq::range
