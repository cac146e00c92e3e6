#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "opineq/linops/blaschke.hpp"
#include "opineq/linops/functional.hpp"

namespace opineq {

// Bounded complex sequence n -> r(n), n = 0, 1, 2, ...
class SequenceRule {
 public:
  enum class Kind { constant, dirichlet, bergman, harmonic, geometric, list, custom };

  static SequenceRule constant(Complex v) {
    SequenceRule r(Kind::constant, std::abs(v));
    r.a_ = v;
    return r;
  }
  // sqrt((n + 2) / (n + 1)): the shift of the space with ||z^n||^2 = n + 1.
  static SequenceRule dirichlet() { return SequenceRule(Kind::dirichlet, std::sqrt(2.0)); }
  // sqrt((n + 1) / (n + 2)): the shift of the space with ||z^n||^2 = 1 / (n + 1).
  static SequenceRule bergman() { return SequenceRule(Kind::bergman, 1.0); }
  // 1 / (n + 1).
  static SequenceRule harmonic() { return SequenceRule(Kind::harmonic, 1.0); }
  // first * ratio^n with |ratio| <= 1.
  static SequenceRule geometric(Complex first, Complex ratio) {
    if (!(std::abs(ratio) <= 1.0))
      throw DomainError("geometric rule: |ratio| > 1 gives an unbounded sequence");
    SequenceRule r(Kind::geometric, std::abs(first));
    r.a_ = first;
    r.b_ = ratio;
    return r;
  }
  // values[0..k-1], then `tail` forever.
  static SequenceRule list(std::vector<Complex> values, Complex tail) {
    double b = std::abs(tail);
    for (const Complex& v : values) {
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw DomainError("list rule: non-finite entry");
      b = std::max(b, std::abs(v));
    }
    SequenceRule r(Kind::list, b);
    r.values_ = std::move(values);
    r.a_ = tail;
    return r;
  }
  // Arbitrary rule with a declared bound; the first 4096 values are checked against it.
  static SequenceRule custom(std::string name, std::function<Complex(std::size_t)> f,
                             double bound) {
    if (!(bound >= 0.0) || !std::isfinite(bound))
      throw DomainError("custom rule '" + name + "': bound must be finite");
    for (std::size_t n = 0; n < 4096; ++n)
      if (!(std::abs(f(n)) <= bound))
        throw DomainError("custom rule '" + name + "': value at n = " + std::to_string(n) +
                          " exceeds the declared bound");
    SequenceRule r(Kind::custom, bound);
    r.fn_ = std::move(f);
    r.name_ = std::move(name);
    return r;
  }

  Complex operator()(std::size_t n) const {
    const double nd = static_cast<double>(n);
    switch (kind_) {
      case Kind::constant: return a_;
      case Kind::dirichlet: return std::sqrt((nd + 2.0) / (nd + 1.0));
      case Kind::bergman: return std::sqrt((nd + 1.0) / (nd + 2.0));
      case Kind::harmonic: return 1.0 / (nd + 1.0);
      case Kind::geometric: return a_ * std::pow(b_, nd);
      case Kind::list: return n < values_.size() ? values_[n] : a_;
      case Kind::custom: return fn_(n);
    }
    return 0.0;
  }

  Kind kind() const { return kind_; }
  double bound() const { return bound_; }
  Complex value() const { return a_; }  // constant value, geometric first term, list tail
  Complex ratio() const { return b_; }
  const std::vector<Complex>& values() const { return values_; }
  std::string name() const {
    switch (kind_) {
      case Kind::constant: return "constant";
      case Kind::dirichlet: return "dirichlet";
      case Kind::bergman: return "bergman";
      case Kind::harmonic: return "harmonic";
      case Kind::geometric: return "geometric";
      case Kind::list: return "list";
      case Kind::custom: return name_;
    }
    return {};
  }

 private:
  SequenceRule(Kind k, double bound) : kind_(k), bound_(bound) {}

  Kind kind_;
  double bound_;
  Complex a_{0.0};
  Complex b_{0.0};
  std::vector<Complex> values_;
  std::function<Complex(std::size_t)> fn_;
  std::string name_;
};

// Symbol of an analytic Toeplitz operator: a finite Blaschke product or a polynomial.
class ToeplitzSymbol {
 public:
  static ToeplitzSymbol blaschke(std::vector<Complex> zeros, Complex unimodular = 1.0) {
    detail::require_open_disc(zeros);
    if (std::abs(std::abs(unimodular) - 1.0) > 1e-12)
      throw DomainError("blaschke symbol: constant factor must be unimodular");
    ToeplitzSymbol s;
    s.inner_ = true;
    s.zeros_ = std::move(zeros);
    s.unimodular_ = unimodular;
    return s;
  }
  static ToeplitzSymbol polynomial(std::vector<Complex> coeffs) {
    if (coeffs.empty()) coeffs.push_back(0.0);
    ToeplitzSymbol s;
    s.inner_ = false;
    s.coeffs_ = std::move(coeffs);
    return s;
  }

  bool is_blaschke() const { return inner_; }
  const std::vector<Complex>& zeros() const { return zeros_; }
  Complex unimodular() const { return unimodular_; }
  const std::vector<Complex>& polynomial_coeffs() const { return coeffs_; }

  // Exact for polynomials; recursion for Blaschke products.
  std::vector<Complex> coefficients(std::size_t n) const {
    if (inner_) return blaschke_coeffs(zeros_, n, unimodular_).coeffs;
    std::vector<Complex> c(n, Complex(0.0));
    std::copy_n(coeffs_.begin(), std::min(n, coeffs_.size()), c.begin());
    return c;
  }

  // Bound on sum_{k >= n} |c_k|, hence on ||T - T_n|| for the banded truncation T_n.
  double tail_l1(std::size_t n) const {
    if (inner_) return detail::blaschke_tail(zeros_, n, 1);
    double s = 0.0;
    for (std::size_t k = n; k < coeffs_.size(); ++k) s += std::abs(coeffs_[k]);
    return s;
  }

  // Smallest n with tail_l1(n) <= tol (capped at 1e5).
  std::size_t support_for(double tol) const {
    if (!inner_) return coeffs_.size();
    constexpr std::size_t cap = 100000;
    std::size_t hi = 1;
    while (tail_l1(hi) > tol) {
      if (hi >= cap) throw ConvergenceError("toeplitz symbol: coefficient tail too slow", cap);
      hi = std::min(cap, hi * 2);
    }
    std::size_t lo = hi / 2;
    while (lo + 1 < hi) {
      const std::size_t mid = (lo + hi) / 2;
      (tail_l1(mid) <= tol ? hi : lo) = mid;
    }
    return hi;
  }

  double norm_bound() const {
    if (inner_) return 1.0;
    double s = 0.0;
    for (const Complex& c : coeffs_) s += std::abs(c);
    return s;
  }

  Complex evaluate(Complex z) const {
    if (inner_) return blaschke_eval(zeros_, z, unimodular_);
    Complex v = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) v = v * z + *it;
    return v;
  }

 private:
  ToeplitzSymbol() = default;

  bool inner_ = false;
  std::vector<Complex> zeros_;
  Complex unimodular_{1.0};
  std::vector<Complex> coeffs_;
};

inline constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max();

// Bandwidths: entry (i, j) vanishes when i - j > lower or j - i > upper.
struct Band {
  std::size_t lower = 0;
  std::size_t upper = 0;
};

namespace detail {
inline std::size_t sat_add(std::size_t a, std::size_t b) {
  return (a == kUnbounded || b == kUnbounded || a > kUnbounded - b) ? kUnbounded : a + b;
}
inline std::size_t sat_mul(std::size_t a, std::size_t m) {
  if (a == kUnbounded) return kUnbounded;
  if (m != 0 && a > kUnbounded / m) return kUnbounded;
  return a * m;
}
// l1 tail tolerance used when a product of two infinite-band factors must be cut.
inline constexpr double kToeplitzCut = 1e-14;
}  // namespace detail

// Immutable symbolic operator on l^2(Z_+) or C^d, in the canonical basis.
class OperatorExpr {
 public:
  enum class Kind {
    dense, weighted_shift, diagonal, toeplitz, adjoint, sum, product, scale, direct_sum, tensor
  };

  static OperatorExpr dense(ComplexMatrix m) {
    require_square(m, "dense operator");
    require_finite(m, "dense operator");
    if (m.rows() == 0) throw DomainError("dense operator: empty matrix");
    auto n = std::make_shared<Node>(Kind::dense);
    n->dim = static_cast<std::size_t>(m.rows());
    n->norm_bound = op_norm(m) * (1.0 + 1e-14);
    n->matrix = std::move(m);
    return OperatorExpr(std::move(n));
  }
  static OperatorExpr weighted_shift(SequenceRule w) {
    auto n = std::make_shared<Node>(Kind::weighted_shift);
    n->norm_bound = w.bound();
    n->rule = std::move(w);
    return OperatorExpr(std::move(n));
  }
  static OperatorExpr shift() { return weighted_shift(SequenceRule::constant(1.0)); }
  static OperatorExpr diagonal(SequenceRule d) {
    auto n = std::make_shared<Node>(Kind::diagonal);
    n->norm_bound = d.bound();
    n->rule = std::move(d);
    return OperatorExpr(std::move(n));
  }
  static OperatorExpr identity() { return diagonal(SequenceRule::constant(1.0)); }
  static OperatorExpr toeplitz(ToeplitzSymbol s) {
    auto n = std::make_shared<Node>(Kind::toeplitz);
    n->norm_bound = s.norm_bound();
    n->symbol = std::move(s);
    return OperatorExpr(std::move(n));
  }
  static OperatorExpr sum(std::vector<OperatorExpr> children) {
    require_children(children, "sum");
    auto n = std::make_shared<Node>(Kind::sum);
    n->dim = common_dim(children, "sum");
    n->norm_bound = 0.0;
    for (const auto& c : children) n->norm_bound += c.norm_bound();
    n->children = std::move(children);
    return OperatorExpr(std::move(n));
  }
  static OperatorExpr product(std::vector<OperatorExpr> children) {
    require_children(children, "product");
    auto n = std::make_shared<Node>(Kind::product);
    n->dim = common_dim(children, "product");
    n->norm_bound = 1.0;
    for (const auto& c : children) n->norm_bound *= c.norm_bound();
    n->children = std::move(children);
    return OperatorExpr(std::move(n));
  }
  static OperatorExpr scale(Complex s, OperatorExpr child) {
    auto n = std::make_shared<Node>(Kind::scale);
    n->scalar = s;
    n->dim = child.dim();
    n->norm_bound = std::abs(s) * child.norm_bound();
    n->children = {std::move(child)};
    return OperatorExpr(std::move(n));
  }
  // Finite summands occupy the first indices in order; infinite summands
  // follow interleaved: local index k of the j-th infinite summand sits at
  // D + m k + j, where D is the total finite dimension and m the number of
  // infinite summands.
  static OperatorExpr direct_sum(std::vector<OperatorExpr> children) {
    require_children(children, "direct sum");
    auto n = std::make_shared<Node>(Kind::direct_sum);
    std::size_t finite = 0;
    bool infinite = false;
    n->norm_bound = 0.0;
    for (const auto& c : children) {
      if (c.dim())
        finite += *c.dim();
      else
        infinite = true;
      n->norm_bound = std::max(n->norm_bound, c.norm_bound());
    }
    if (!infinite) n->dim = finite;
    n->children = std::move(children);
    return OperatorExpr(std::move(n));
  }
  // Lexicographic product basis of the factor truncations.
  static OperatorExpr tensor(std::vector<OperatorExpr> children) {
    require_children(children, "tensor");
    auto n = std::make_shared<Node>(Kind::tensor);
    std::size_t d = 1;
    bool infinite = false;
    n->norm_bound = 1.0;
    for (const auto& c : children) {
      if (c.dim())
        d *= *c.dim();
      else
        infinite = true;
      n->norm_bound *= c.norm_bound();
    }
    if (!infinite) n->dim = d;
    n->children = std::move(children);
    return OperatorExpr(std::move(n));
  }

  OperatorExpr adjoint() const {
    if (node_->kind == Kind::adjoint) return node_->children.front();
    auto n = std::make_shared<Node>(Kind::adjoint);
    n->dim = dim();
    n->norm_bound = norm_bound();
    n->children = {*this};
    return OperatorExpr(std::move(n));
  }

  Kind kind() const { return node_->kind; }
  std::optional<std::size_t> dim() const { return node_->dim; }
  double norm_bound() const { return node_->norm_bound; }
  const ComplexMatrix& matrix() const { return node_->matrix; }
  const SequenceRule& rule() const { return *node_->rule; }
  const ToeplitzSymbol& symbol() const { return *node_->symbol; }
  Complex scalar() const { return node_->scalar; }
  const std::vector<OperatorExpr>& children() const { return node_->children; }

  // Exact bandwidths (kUnbounded where entries decay but never vanish).
  Band band() const { return band_impl(false); }
  // Bandwidths after cutting analytic Toeplitz symbols at l1 tail kToeplitzCut.
  Band cut_band() const { return band_impl(true); }

  // Number of Toeplitz leaves below this node (each contributes one cut error).
  std::size_t toeplitz_leaves() const {
    if (kind() == Kind::toeplitz) return 1;
    std::size_t s = 0;
    for (const auto& c : children()) s += c.toeplitz_leaves();
    return s;
  }

  // True when every column has finitely many nonzero entries, known exactly.
  bool column_exact() const { return band().lower != kUnbounded; }

 private:
  struct Node {
    explicit Node(Kind k) : kind(k) {}
    Kind kind;
    std::optional<std::size_t> dim;
    double norm_bound = 0.0;
    ComplexMatrix matrix;
    std::optional<SequenceRule> rule;
    std::optional<ToeplitzSymbol> symbol;
    Complex scalar{1.0};
    std::vector<OperatorExpr> children;
  };

  explicit OperatorExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static void require_children(const std::vector<OperatorExpr>& c, const char* what) {
    if (c.empty()) throw DomainError(std::string(what) + ": needs at least one operand");
  }

  static std::optional<std::size_t> common_dim(const std::vector<OperatorExpr>& c,
                                               const char* what) {
    std::optional<std::size_t> d;
    for (const auto& x : c) {
      if (!x.dim()) continue;
      if (d && *d != *x.dim())
        throw DomainError(std::string(what) + ": operand dimensions differ");
      d = x.dim();
    }
    // A finite block composed with an operator on l^2 is read on the first d coordinates.
    return d;
  }

  Band band_impl(bool cut) const {
    switch (kind()) {
      case Kind::dense: {
        const std::size_t d = *dim() - 1;
        return {d, d};
      }
      case Kind::weighted_shift: return {1, 0};
      case Kind::diagonal: return {0, 0};
      case Kind::toeplitz:
        if (!symbol().is_blaschke()) {
          const std::size_t deg = symbol().polynomial_coeffs().size() - 1;
          return {deg, 0};
        }
        if (cut) return {symbol().support_for(detail::kToeplitzCut * norm_bound()), 0};
        return {kUnbounded, 0};
      case Kind::adjoint: {
        const Band b = children().front().band_impl(cut);
        return {b.upper, b.lower};
      }
      case Kind::scale: return children().front().band_impl(cut);
      case Kind::sum: {
        Band out{0, 0};
        for (const auto& c : children()) {
          const Band b = c.band_impl(cut);
          out.lower = std::max(out.lower, b.lower);
          out.upper = std::max(out.upper, b.upper);
        }
        return out;
      }
      case Kind::product: {
        Band out{0, 0};
        for (const auto& c : children()) {
          const Band b = c.band_impl(cut);
          out.lower = detail::sat_add(out.lower, b.lower);
          out.upper = detail::sat_add(out.upper, b.upper);
        }
        if (dim()) {
          out.lower = std::min(out.lower, *dim() - 1);
          out.upper = std::min(out.upper, *dim() - 1);
        }
        return out;
      }
      case Kind::direct_sum: {
        std::size_t m = 0;
        for (const auto& c : children())
          if (!c.dim()) ++m;
        Band out{0, 0};
        for (const auto& c : children()) {
          Band b = c.band_impl(cut);
          if (!c.dim()) {
            b.lower = detail::sat_mul(b.lower, m);
            b.upper = detail::sat_mul(b.upper, m);
          }
          out.lower = std::max(out.lower, b.lower);
          out.upper = std::max(out.upper, b.upper);
        }
        return out;
      }
      case Kind::tensor:
        if (dim()) return {*dim() - 1, *dim() - 1};
        throw UnsupportedOperator(
            "tensor product with infinite factors has no band structure in a single basis");
    }
    return {};
  }

  std::shared_ptr<const Node> node_;
};

inline OperatorExpr operator+(const OperatorExpr& a, const OperatorExpr& b) {
  return OperatorExpr::sum({a, b});
}
inline OperatorExpr operator*(const OperatorExpr& a, const OperatorExpr& b) {
  return OperatorExpr::product({a, b});
}
inline OperatorExpr operator*(Complex s, const OperatorExpr& a) { return OperatorExpr::scale(s, a); }

}  // namespace opineq
