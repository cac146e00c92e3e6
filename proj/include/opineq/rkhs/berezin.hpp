#pragma once

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <vector>

#include "opineq/linops/compress.hpp"
#include "opineq/rkhs/grid.hpp"

namespace opineq::rkhs {

struct BerezinOptions {
  double truncation_tol = 1e-12;  // budget for kernel truncation error times the norm bound
};

// A value at one sample point together with its certified truncation error.
struct BerezinValue {
  Complex value{};
  double error_bound = 0.0;
  std::vector<std::size_t> sizes;  // coefficients kept per factor
};

// Sampled supremum: lower is attained at `witness`, upper is the norm bound.
struct BerezinEstimate {
  double lower = 0.0;
  double upper = 0.0;
  Point witness;
  double error_bound = 0.0;  // largest truncation error among the samples
  std::size_t samples = 0;
  DiscGrid grid;
};

namespace detail {

inline void check_operator(const OperatorExpr& a, const RkhsModel& m) {
  if (m.kind() == RkhsModel::Kind::product) {
    if (a.kind() != OperatorExpr::Kind::tensor || a.children().size() != m.arity())
      throw UnsupportedOperator("product model: operator must be a tensor with one factor per space");
  } else if (a.kind() == OperatorExpr::Kind::tensor && !a.dim()) {
    throw UnsupportedOperator("single-factor model: tensor products need a product model");
  }
}

// Squared kernel-tail budget per factor for an error of `tol` at norm bound `nb`.
inline double tail_budget(double tol, double nb, std::size_t arity) {
  const double s = tol / (3.0 * std::max(nb, 1.0));
  return s * s / static_cast<double>(arity);
}

// Output length that captures every nonzero of A x for x supported on [0, in).
inline std::size_t image_size(const OperatorExpr& a, std::size_t in) {
  const std::size_t lower = a.cut_band().lower;
  std::size_t out = opineq::detail::sat_add(in, lower);
  if (a.dim()) out = std::min(out, *a.dim());
  return out;
}

struct KernelVector {
  ComplexVector coeffs;  // kron of the factor states, lexicographic
  double tail = 0.0;     // squared l^2 mass of the dropped coefficients
  std::vector<std::size_t> sizes;
};

inline KernelVector kernel_vector(const OperatorExpr& a, const RkhsModel& m, const Point& w, double tol) {
  if (w.size() != m.arity()) throw DomainError("berezin: point arity does not match the model");
  const double budget = tail_budget(tol, a.norm_bound(), m.arity());
  KernelVector kv;
  kv.coeffs = ComplexVector::Ones(1);
  for (std::size_t i = 0; i < m.arity(); ++i) {
    const RkhsModel& f = m.kind() == RkhsModel::Kind::product ? m.factors()[i] : m;
    const OperatorExpr& op = m.kind() == RkhsModel::Kind::product ? a.children()[i] : a;
    std::size_t n = kernel_truncation(f, w[i], budget);
    if (op.dim()) {
      if (f.kind() == RkhsModel::Kind::discrete && n > *op.dim())
        throw DomainError("berezin: index beyond the operator dimension");
      if (f.kind() == RkhsModel::Kind::beta && n > *op.dim())
        throw DomainError("berezin: finite-dimensional operator cannot act on this kernel space");
    }
    const KernelState ks = normalized_kernel(f, w[i], n, budget);
    kv.coeffs = kron(kv.coeffs, ks.coeffs);
    kv.tail += ks.tail;  // 1 - prod(1 - t_i) <= sum t_i
    kv.sizes.push_back(n);
  }
  return kv;
}

inline ComplexVector apply_on(const OperatorExpr& a, const RkhsModel& m, const KernelVector& kv,
                              bool full_image, double& err) {
  if (m.kind() != RkhsModel::Kind::product) {
    const std::size_t out = full_image ? image_size(a, kv.sizes[0]) : kv.sizes[0];
    return apply(a, kv.coeffs, out, &err);
  }
  std::vector<std::size_t> out = kv.sizes;
  if (full_image)
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = image_size(a.children()[i], out[i]);
  return apply_tensor(a, kv.coeffs, kv.sizes, out, &err);
}

}  // namespace detail

/// <A k_w, k_w> for the normalized kernel at w, truncated per factor so that
/// the truncation error is at most opts.truncation_tol.
inline BerezinValue berezin_transform(const OperatorExpr& a, const RkhsModel& m, const Point& w,
                                      const BerezinOptions& opts = {}) {
  detail::check_operator(a, m);
  const detail::KernelVector kv = detail::kernel_vector(a, m, w, opts.truncation_tol);
  double err = 0.0;
  const ComplexVector y = detail::apply_on(a, m, kv, false, err);
  BerezinValue out;
  out.value = kv.coeffs.dot(y);
  out.error_bound = a.norm_bound() * (2.0 * std::sqrt(kv.tail) + kv.tail) + err;
  out.sizes = kv.sizes;
  return out;
}

inline BerezinValue berezin_transform(const OperatorExpr& a, const RkhsModel& m, Complex w,
                                      const BerezinOptions& opts = {}) {
  return berezin_transform(a, m, Point{w}, opts);
}

/// Transform with an explicit truncation N of a single-factor model.
inline BerezinValue berezin_transform(const OperatorExpr& a, const RkhsModel& m, Complex w, std::size_t n) {
  detail::check_operator(a, m);
  if (m.kind() == RkhsModel::Kind::product) throw DomainError("berezin_transform: explicit N needs a single-factor model");
  const KernelState ks = normalized_kernel(m, w, n, 1e-12);
  double err = 0.0;
  const ComplexVector y = apply(a, ks.coeffs, n, &err);
  BerezinValue out;
  out.value = ks.coeffs.dot(y);
  out.error_bound = a.norm_bound() * (2.0 * std::sqrt(ks.tail) + ks.tail) + err;
  out.sizes = {n};
  return out;
}

/// ||A k_w|| for the normalized kernel at w.
inline BerezinValue kernel_image_norm(const OperatorExpr& a, const RkhsModel& m, const Point& w,
                                      const BerezinOptions& opts = {}) {
  detail::check_operator(a, m);
  const detail::KernelVector kv = detail::kernel_vector(a, m, w, opts.truncation_tol);
  double err = 0.0;
  const ComplexVector y = detail::apply_on(a, m, kv, true, err);
  BerezinValue out;
  out.value = y.norm();
  out.error_bound = a.norm_bound() * std::sqrt(kv.tail) + err;
  out.sizes = kv.sizes;
  return out;
}

namespace detail {

// Coordinates of one factor: disc points or indices.
inline std::vector<Complex> factor_points(const RkhsModel& f, const OperatorExpr& op, const DiscGrid& g) {
  if (f.kind() == RkhsModel::Kind::beta) return g.disc_points();
  std::size_t count = f.count().value_or(g.index_count);
  if (op.dim()) count = std::min(count, *op.dim());
  std::vector<Complex> pts;
  for (std::size_t n = 0; n < count; ++n) pts.emplace_back(static_cast<double>(n), 0.0);
  return pts;
}

// Cartesian product, first factor slowest.
inline std::vector<Point> cartesian(const std::vector<std::vector<Complex>>& axes) {
  std::vector<Point> out{Point{}};
  for (const auto& ax : axes) {
    std::vector<Point> next;
    next.reserve(out.size() * ax.size());
    for (const auto& p : out)
      for (const Complex& c : ax) {
        Point q = p;
        q.push_back(c);
        next.push_back(std::move(q));
      }
    out = std::move(next);
  }
  return out;
}

template <class Eval>
BerezinEstimate grid_sup(const OperatorExpr& a, const RkhsModel& m, const DiscGrid& g, Eval eval) {
  g.validate();
  detail::check_operator(a, m);
  const bool product = m.kind() == RkhsModel::Kind::product;
  std::vector<std::vector<Complex>> axes;
  for (std::size_t i = 0; i < m.arity(); ++i)
    axes.push_back(factor_points(product ? m.factors()[i] : m, product ? a.children()[i] : a, g));

  BerezinEstimate est;
  est.grid = g;
  est.upper = a.norm_bound();
  bool have = false;
  auto visit = [&](const Point& p) {
    const BerezinValue v = eval(p);
    ++est.samples;
    est.error_bound = std::max(est.error_bound, v.error_bound);
    const double x = std::abs(v.value);
    if (!have || x > est.lower) {
      est.lower = x;
      est.witness = p;
      have = true;
    }
  };
  for (const Point& p : cartesian(axes)) visit(p);

  std::vector<Window> win(m.arity());
  for (std::size_t i = 0; i < m.arity(); ++i) win[i] = initial_window(g, est.witness[i]);
  // Refinement moves one coordinate at a time, the others held at the witness.
  for (std::size_t round = 0; round < g.rounds; ++round) {
    for (std::size_t i = 0; i < m.arity(); ++i) {
      const RkhsModel& f = product ? m.factors()[i] : m;
      if (f.kind() != RkhsModel::Kind::beta) continue;
      const Point center = est.witness;
      for (const Complex& c : refine_patch(g, center[i], win[i])) {
        Point p = center;
        p[i] = c;
        visit(p);
      }
    }
    for (auto& w : win) w = shrink(w, g.factor);
  }
  return est;
}

}  // namespace detail

/// Largest sampled |A~(w)| over the grid, with the operator norm bound as upper bound.
inline BerezinEstimate berezin_number(const OperatorExpr& a, const RkhsModel& m,
                                      const DiscGrid& g = DiscGrid::standard(),
                                      const BerezinOptions& opts = {}) {
  return detail::grid_sup(a, m, g, [&](const Point& p) { return berezin_transform(a, m, p, opts); });
}

/// Largest sampled ||A k_w|| over the grid.
inline BerezinEstimate ber_norm(const OperatorExpr& a, const RkhsModel& m,
                                const DiscGrid& g = DiscGrid::standard(), const BerezinOptions& opts = {}) {
  return detail::grid_sup(a, m, g, [&](const Point& p) { return kernel_image_norm(a, m, p, opts); });
}

/// Transforms of several operators at one point, sharing a single kernel
/// vector truncated for the largest norm bound among them.
inline std::vector<BerezinValue> berezin_transforms(const std::vector<OperatorExpr>& ops, const RkhsModel& m,
                                                    const Point& w, const BerezinOptions& opts = {}) {
  if (ops.empty()) return {};
  std::size_t widest = 0;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    detail::check_operator(ops[i], m);
    if (ops[i].norm_bound() > ops[widest].norm_bound()) widest = i;
  }
  const detail::KernelVector kv = detail::kernel_vector(ops[widest], m, w, opts.truncation_tol);
  std::vector<BerezinValue> out;
  out.reserve(ops.size());
  for (const auto& a : ops) {
    double err = 0.0;
    const ComplexVector y = detail::apply_on(a, m, kv, false, err);
    BerezinValue v;
    v.value = kv.coeffs.dot(y);
    v.error_bound = a.norm_bound() * (2.0 * std::sqrt(kv.tail) + kv.tail) + err;
    v.sizes = kv.sizes;
    out.push_back(std::move(v));
  }
  return out;
}

/// Berezin numbers of several operators sampled on one common point set: the
/// base grid plus the refinement patches around the witness of ops[0].
inline std::vector<BerezinEstimate> joint_berezin_number(const std::vector<OperatorExpr>& ops, const RkhsModel& m,
                                                         const DiscGrid& g, const BerezinOptions& opts = {}) {
  if (ops.empty()) return {};
  if (m.kind() == RkhsModel::Kind::product) throw DomainError("joint_berezin_number: single-factor models only");
  g.validate();
  std::vector<BerezinEstimate> est(ops.size());
  std::vector<bool> have(ops.size(), false);
  for (std::size_t i = 0; i < ops.size(); ++i) {
    est[i].grid = g;
    est[i].upper = ops[i].norm_bound();
  }
  auto visit = [&](Complex w) {
    const Point p{w};
    const auto vals = berezin_transforms(ops, m, p, opts);
    for (std::size_t i = 0; i < ops.size(); ++i) {
      ++est[i].samples;
      est[i].error_bound = std::max(est[i].error_bound, vals[i].error_bound);
      const double x = std::abs(vals[i].value);
      if (!have[i] || x > est[i].lower) {
        est[i].lower = x;
        est[i].witness = p;
        have[i] = true;
      }
    }
  };
  for (const Complex& w : detail::factor_points(m, ops.front(), g)) visit(w);
  if (m.kind() == RkhsModel::Kind::beta) {
    detail::Window win = detail::initial_window(g, est.front().witness[0]);
    for (std::size_t round = 0; round < g.rounds; ++round) {
      const Complex center = est.front().witness[0];
      for (const Complex& c : detail::refine_patch(g, center, win)) visit(c);
      win = detail::shrink(win, g.factor);
    }
  }
  return est;
}

struct BerezinSample {
  Complex w{};
  Complex value{};
};

/// A~ on the base grid of a single-factor model, in enumeration order.
inline std::vector<BerezinSample> berezin_samples(const OperatorExpr& a, const RkhsModel& m, const DiscGrid& g,
                                                  const BerezinOptions& opts = {}) {
  if (m.kind() == RkhsModel::Kind::product) throw DomainError("berezin_samples: single-factor models only");
  g.validate();
  std::vector<BerezinSample> out;
  for (const Complex& w : detail::factor_points(m, a, g))
    out.push_back({w, berezin_transform(a, m, Point{w}, opts).value});
  return out;
}

inline void write_berezin_csv(std::ostream& os, const std::vector<BerezinSample>& samples) {
  const auto old = os.precision(17);
  os << "re_w,im_w,re_val,im_val\n";
  for (const auto& s : samples)
    os << s.w.real() << ',' << s.w.imag() << ',' << s.value.real() << ',' << s.value.imag() << '\n';
  os.precision(old);
}

}  // namespace opineq::rkhs
