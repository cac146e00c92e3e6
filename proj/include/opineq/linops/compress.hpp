#pragma once

#include <cmath>
#include <vector>

#include "opineq/linops/expr.hpp"

namespace opineq {

// Finite section of an operator together with a bound on the entries lost to
// cutting analytic Toeplitz tails (zero when the section is exact).
struct Compression {
  ComplexMatrix matrix;
  double tail_bound = 0.0;
};

namespace detail {

inline void check_size(const OperatorExpr& e, std::size_t r, std::size_t c) {
  if (e.dim() && (r > *e.dim() || c > *e.dim()))
    throw DomainError("compress: requested " + std::to_string(r) + "x" + std::to_string(c) +
                      " section of a " + std::to_string(*e.dim()) + "-dimensional operator");
}

// Index layout of a direct sum: for each child, the global index of local index k.
struct DirectSumLayout {
  std::vector<std::size_t> offset;  // finite children: first global index
  std::vector<std::size_t> slot;    // infinite children: position j among infinite ones
  std::size_t finite_total = 0;
  std::size_t infinite_count = 0;

  explicit DirectSumLayout(const OperatorExpr& e) {
    const auto& ch = e.children();
    offset.resize(ch.size(), 0);
    slot.resize(ch.size(), 0);
    for (std::size_t i = 0; i < ch.size(); ++i) {
      if (ch[i].dim()) {
        offset[i] = finite_total;
        finite_total += *ch[i].dim();
      } else {
        slot[i] = infinite_count++;
      }
    }
  }
  bool finite(const OperatorExpr& e, std::size_t i) const { return e.children()[i].dim().has_value(); }
  std::size_t global(const OperatorExpr& e, std::size_t i, std::size_t k) const {
    if (finite(e, i)) return offset[i] + k;
    return finite_total + infinite_count * k + slot[i];
  }
  // Number of local indices of child i whose global index is < n.
  std::size_t local_count(const OperatorExpr& e, std::size_t i, std::size_t n) const {
    if (finite(e, i)) {
      const std::size_t d = *e.children()[i].dim();
      if (n <= offset[i]) return 0;
      return std::min(d, n - offset[i]);
    }
    if (n <= finite_total + slot[i]) return 0;
    return (n - finite_total - slot[i] + infinite_count - 1) / infinite_count;
  }
};

// Per-factor truncation sizes of a tensor node at total size n.
inline std::vector<std::size_t> tensor_sizes(const OperatorExpr& e, std::size_t n) {
  std::size_t finite = 1;
  std::size_t infinite = 0;
  for (const auto& c : e.children()) {
    if (c.dim())
      finite *= *c.dim();
    else
      ++infinite;
  }
  std::vector<std::size_t> sizes;
  if (infinite == 0) {
    for (const auto& c : e.children()) sizes.push_back(*c.dim());
    return sizes;
  }
  if (n % finite != 0)
    throw DomainError("tensor compression: size " + std::to_string(n) +
                      " is not a multiple of the finite factor dimensions");
  const std::size_t rest = n / finite;
  auto root = static_cast<std::size_t>(
      std::llround(std::pow(static_cast<double>(rest), 1.0 / static_cast<double>(infinite))));
  std::size_t check = 1;
  for (std::size_t k = 0; k < infinite; ++k) check *= root;
  if (check != rest)
    throw DomainError("tensor compression: size " + std::to_string(n) +
                      " does not split into equal factor truncations");
  for (const auto& c : e.children()) sizes.push_back(c.dim() ? *c.dim() : root);
  return sizes;
}

// Inner dimensions m_1..m_{k-1} for P_r A_1 ... A_k P_c. Returns whether any cut was used.
inline bool product_inner_dims(const std::vector<OperatorExpr>& f, std::size_t r, std::size_t c,
                               std::optional<std::size_t> dim, std::vector<std::size_t>& m) {
  const std::size_t k = f.size();
  m.assign(k + 1, 0);
  m[0] = r;
  m[k] = c;
  bool cut = false;
  for (std::size_t j = 1; j < k; ++j) {
    std::size_t from_left = r;
    for (std::size_t i = 0; i < j; ++i) from_left = sat_add(from_left, f[i].band().upper);
    std::size_t from_right = c;
    for (std::size_t i = j; i < k; ++i) from_right = sat_add(from_right, f[i].band().lower);
    std::size_t mj = std::min(from_left, from_right);
    if (mj == kUnbounded) {
      cut = true;
      from_right = c;
      for (std::size_t i = j; i < k; ++i) from_right = sat_add(from_right, f[i].cut_band().lower);
      mj = from_right;
    }
    if (dim) mj = std::min(mj, *dim);
    m[j] = mj;
  }
  return cut;
}

inline ComplexMatrix compress_rect(const OperatorExpr& e, std::size_t r, std::size_t c,
                                   double& err) {
  check_size(e, r, c);
  const auto R = static_cast<Eigen::Index>(r);
  const auto C = static_cast<Eigen::Index>(c);
  using K = OperatorExpr::Kind;
  switch (e.kind()) {
    case K::dense: return e.matrix().topLeftCorner(R, C);
    case K::weighted_shift: {
      ComplexMatrix out = zeros(r, c);
      for (std::size_t n = 0; n < c && n + 1 < r; ++n)
        out(static_cast<Eigen::Index>(n + 1), static_cast<Eigen::Index>(n)) = e.rule()(n);
      return out;
    }
    case K::diagonal: {
      ComplexMatrix out = zeros(r, c);
      for (std::size_t n = 0; n < std::min(r, c); ++n)
        out(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)) = e.rule()(n);
      return out;
    }
    case K::toeplitz: {
      ComplexMatrix out = zeros(r, c);
      const auto coef = e.symbol().coefficients(r);
      for (Eigen::Index j = 0; j < C; ++j)
        for (Eigen::Index i = j; i < R; ++i) out(i, j) = coef[static_cast<std::size_t>(i - j)];
      return out;
    }
    case K::adjoint: return compress_rect(e.children().front(), c, r, err).adjoint();
    case K::scale: return e.scalar() * compress_rect(e.children().front(), r, c, err);
    case K::sum: {
      ComplexMatrix out = zeros(r, c);
      for (const auto& ch : e.children()) out += compress_rect(ch, r, c, err);
      return out;
    }
    case K::product: {
      const auto& f = e.children();
      for (const auto& x : f)
        if (x.kind() == K::tensor && !x.dim())
          throw UnsupportedOperator("compress: product of tensors with infinite factors");
      std::vector<std::size_t> m;
      if (product_inner_dims(f, r, c, e.dim(), m))
        err += kToeplitzCut * static_cast<double>(e.toeplitz_leaves()) * e.norm_bound();
      ComplexMatrix acc = compress_rect(f.back(), m[f.size() - 1], c, err);
      for (std::size_t j = f.size() - 1; j-- > 0;) acc = compress_rect(f[j], m[j], m[j + 1], err) * acc;
      return acc;
    }
    case K::direct_sum: {
      ComplexMatrix out = zeros(r, c);
      const DirectSumLayout lay(e);
      for (std::size_t i = 0; i < e.children().size(); ++i) {
        const std::size_t ri = lay.local_count(e, i, r);
        const std::size_t ci = lay.local_count(e, i, c);
        if (ri == 0 || ci == 0) continue;
        const ComplexMatrix blk = compress_rect(e.children()[i], ri, ci, err);
        for (std::size_t a = 0; a < ri; ++a)
          for (std::size_t b = 0; b < ci; ++b)
            out(static_cast<Eigen::Index>(lay.global(e, i, a)),
                static_cast<Eigen::Index>(lay.global(e, i, b))) =
                blk(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
      }
      return out;
    }
    case K::tensor: {
      if (e.dim()) {
        ComplexMatrix full(1, 1);
        full(0, 0) = 1.0;
        for (const auto& ch : e.children())
          full = kron(full, compress_rect(ch, *ch.dim(), *ch.dim(), err));
        return full.topLeftCorner(R, C);
      }
      if (r != c) throw UnsupportedOperator("compress: rectangular section of a tensor product");
      const auto sizes = tensor_sizes(e, r);
      ComplexMatrix full(1, 1);
      full(0, 0) = 1.0;
      for (std::size_t i = 0; i < sizes.size(); ++i)
        full = kron(full, compress_rect(e.children()[i], sizes[i], sizes[i], err));
      return full;
    }
  }
  return {};
}

}  // namespace detail

// Top-left N x N section in the canonical basis, with its cut bound.
inline Compression compress_report(const OperatorExpr& e, std::size_t n) {
  if (n == 0) throw DomainError("compress: N must be >= 1");
  Compression out;
  out.matrix = detail::compress_rect(e, n, n, out.tail_bound);
  return out;
}

inline ComplexMatrix compress(const OperatorExpr& e, std::size_t n) {
  return compress_report(e, n).matrix;
}

// Rows x cols section.
inline ComplexMatrix compress(const OperatorExpr& e, std::size_t rows, std::size_t cols) {
  double err = 0.0;
  return detail::compress_rect(e, rows, cols, err);
}

// Tensor section with explicit factor truncations.
inline ComplexMatrix compress_tensor(const OperatorExpr& e, const std::vector<std::size_t>& sizes) {
  if (e.kind() != OperatorExpr::Kind::tensor || sizes.size() != e.children().size())
    throw DomainError("compress_tensor: sizes must match the tensor factors");
  ComplexMatrix full(1, 1);
  full(0, 0) = 1.0;
  for (std::size_t i = 0; i < sizes.size(); ++i) full = kron(full, compress(e.children()[i], sizes[i]));
  return full;
}

namespace detail {

inline ComplexVector apply_impl(const OperatorExpr& e, const ComplexVector& x, std::size_t out,
                                bool adj, double& err);

inline ComplexVector apply_product(const std::vector<OperatorExpr>& f, std::optional<std::size_t> dim,
                                   double bound, std::size_t leaves, const ComplexVector& x,
                                   std::size_t out, double& err) {
  std::vector<std::size_t> m;
  if (product_inner_dims(f, out, static_cast<std::size_t>(x.size()), dim, m))
    err += kToeplitzCut * static_cast<double>(leaves) * bound * x.norm();
  ComplexVector v = x;
  for (std::size_t j = f.size(); j-- > 0;) v = apply_impl(f[j], v, m[j], false, err);
  return v;
}

// Applies a tensor node factor by factor on the reshaped coefficient array.
inline ComplexVector apply_tensor(const OperatorExpr& e, const ComplexVector& x,
                                  const std::vector<std::size_t>& in_sizes,
                                  const std::vector<std::size_t>& out_sizes, bool adj, double& err) {
  const auto& ch = e.children();
  std::vector<std::size_t> cur = in_sizes;
  ComplexVector v = x;
  for (std::size_t f = 0; f < ch.size(); ++f) {
    std::size_t before = 1, after = 1;
    for (std::size_t i = 0; i < f; ++i) before *= cur[i];
    for (std::size_t i = f + 1; i < cur.size(); ++i) after *= cur[i];
    const std::size_t nin = cur[f], nout = out_sizes[f];
    ComplexVector w = ComplexVector::Zero(static_cast<Eigen::Index>(before * nout * after));
    ComplexVector fiber(static_cast<Eigen::Index>(nin));
    for (std::size_t b = 0; b < before; ++b) {
      for (std::size_t a = 0; a < after; ++a) {
        for (std::size_t k = 0; k < nin; ++k)
          fiber(static_cast<Eigen::Index>(k)) = v(static_cast<Eigen::Index>((b * nin + k) * after + a));
        const ComplexVector y = apply_impl(ch[f], fiber, nout, adj, err);
        for (std::size_t k = 0; k < nout; ++k)
          w(static_cast<Eigen::Index>((b * nout + k) * after + a)) = y(static_cast<Eigen::Index>(k));
      }
    }
    v = std::move(w);
    cur[f] = nout;
  }
  return v;
}

inline ComplexVector apply_impl(const OperatorExpr& e, const ComplexVector& x, std::size_t out,
                                bool adj, double& err) {
  const auto in = static_cast<std::size_t>(x.size());
  check_size(e, out, in);
  const auto O = static_cast<Eigen::Index>(out);
  const auto I = static_cast<Eigen::Index>(in);
  ComplexVector y = ComplexVector::Zero(O);
  using K = OperatorExpr::Kind;
  switch (e.kind()) {
    case K::dense:
      if (adj)
        y = e.matrix().topLeftCorner(I, O).adjoint() * x;
      else
        y = e.matrix().topLeftCorner(O, I) * x;
      return y;
    case K::weighted_shift:
      if (adj) {
        for (std::size_t n = 0; n < out && n + 1 < in; ++n)
          y(static_cast<Eigen::Index>(n)) = std::conj(e.rule()(n)) * x(static_cast<Eigen::Index>(n + 1));
      } else {
        for (std::size_t n = 0; n < in && n + 1 < out; ++n)
          y(static_cast<Eigen::Index>(n + 1)) = e.rule()(n) * x(static_cast<Eigen::Index>(n));
      }
      return y;
    case K::diagonal:
      for (std::size_t n = 0; n < std::min(in, out); ++n) {
        const Complex d = e.rule()(n);
        y(static_cast<Eigen::Index>(n)) = (adj ? std::conj(d) : d) * x(static_cast<Eigen::Index>(n));
      }
      return y;
    case K::toeplitz: {
      const auto& s = e.symbol();
      const std::size_t span = adj ? in : out;
      std::size_t kept = span;
      if (s.is_blaschke()) {
        const std::size_t support = s.support_for(kToeplitzCut * e.norm_bound());
        if (support < span) {
          kept = support;
          err += s.tail_l1(kept) * x.norm();
        }
      }
      const auto coef = s.coefficients(kept);
      for (std::size_t k = 0; k < kept; ++k) {
        const Complex ck = adj ? std::conj(coef[k]) : coef[k];
        if (ck == Complex(0.0)) continue;
        if (adj) {
          // y_j += conj(c_k) x_{j+k}
          for (std::size_t j = 0; j < out && j + k < in; ++j)
            y(static_cast<Eigen::Index>(j)) += ck * x(static_cast<Eigen::Index>(j + k));
        } else {
          for (std::size_t j = 0; j < in && j + k < out; ++j)
            y(static_cast<Eigen::Index>(j + k)) += ck * x(static_cast<Eigen::Index>(j));
        }
      }
      return y;
    }
    case K::adjoint: return apply_impl(e.children().front(), x, out, !adj, err);
    case K::scale: {
      const Complex s = adj ? std::conj(e.scalar()) : e.scalar();
      return s * apply_impl(e.children().front(), x, out, adj, err);
    }
    case K::sum:
      for (const auto& c : e.children()) y += apply_impl(c, x, out, adj, err);
      return y;
    case K::product: {
      for (const auto& f : e.children())
        if (f.kind() == K::tensor && !f.dim())
          throw UnsupportedOperator("apply: product of tensors with infinite factors");
      if (!adj) return apply_product(e.children(), e.dim(), e.norm_bound(), e.toeplitz_leaves(), x, out, err);
      std::vector<OperatorExpr> rev;
      for (auto it = e.children().rbegin(); it != e.children().rend(); ++it) rev.push_back(it->adjoint());
      return apply_product(rev, e.dim(), e.norm_bound(), e.toeplitz_leaves(), x, out, err);
    }
    case K::direct_sum: {
      const DirectSumLayout lay(e);
      for (std::size_t i = 0; i < e.children().size(); ++i) {
        const std::size_t ni = lay.local_count(e, i, in);
        const std::size_t no = lay.local_count(e, i, out);
        if (no == 0) continue;
        ComplexVector xi(static_cast<Eigen::Index>(ni));
        for (std::size_t k = 0; k < ni; ++k)
          xi(static_cast<Eigen::Index>(k)) = x(static_cast<Eigen::Index>(lay.global(e, i, k)));
        const ComplexVector yi = apply_impl(e.children()[i], xi, no, adj, err);
        for (std::size_t k = 0; k < no; ++k)
          y(static_cast<Eigen::Index>(lay.global(e, i, k))) = yi(static_cast<Eigen::Index>(k));
      }
      return y;
    }
    case K::tensor: {
      if (e.dim()) {
        std::vector<std::size_t> full;
        for (const auto& c : e.children()) full.push_back(*c.dim());
        ComplexVector xf = ComplexVector::Zero(static_cast<Eigen::Index>(*e.dim()));
        xf.head(I) = x;
        const ComplexVector yf = apply_tensor(e, xf, full, full, adj, err);
        return yf.head(O);
      }
      return apply_tensor(e, x, tensor_sizes(e, in), tensor_sizes(e, out), adj, err);
    }
  }
  return y;
}

}  // namespace detail

// P_out A P_in x, with in = x.size(). `err` accumulates cut bounds.
inline ComplexVector apply(const OperatorExpr& e, const ComplexVector& x, std::size_t out,
                           double* err = nullptr) {
  double local = 0.0;
  ComplexVector y = detail::apply_impl(e, x, out, false, local);
  if (err) *err += local;
  return y;
}

// P_out A* P_in x.
inline ComplexVector apply_adjoint(const OperatorExpr& e, const ComplexVector& x, std::size_t out,
                                   double* err = nullptr) {
  double local = 0.0;
  ComplexVector y = detail::apply_impl(e, x, out, true, local);
  if (err) *err += local;
  return y;
}

// Tensor apply with explicit factor sizes on input and output.
inline ComplexVector apply_tensor(const OperatorExpr& e, const ComplexVector& x,
                                  const std::vector<std::size_t>& in_sizes,
                                  const std::vector<std::size_t>& out_sizes, double* err = nullptr) {
  if (e.kind() != OperatorExpr::Kind::tensor || in_sizes.size() != e.children().size() ||
      out_sizes.size() != e.children().size())
    throw DomainError("apply_tensor: sizes must match the tensor factors");
  double local = 0.0;
  ComplexVector y = detail::apply_tensor(e, x, in_sizes, out_sizes, false, local);
  if (err) *err += local;
  return y;
}

}  // namespace opineq
