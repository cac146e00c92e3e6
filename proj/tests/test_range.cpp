#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "opineq/core/random.hpp"
#include "opineq/linops/compress.hpp"
#include "opineq/range/range.hpp"

using namespace opineq;
using namespace opineq::range;

namespace {

ComplexMatrix jordan(std::size_t n) { return compress(OperatorExpr::shift(), n); }

// Largest root of lambda^4 - (29/24) lambda^2 + 1/6, the characteristic
// polynomial of the Hermitian part of the 4 x 4 Dirichlet shift section.
double dirichlet4_root() {
  const double b = 29.0 / 24.0;
  return std::sqrt(0.5 * (b + std::sqrt(b * b - 4.0 / 6.0)));
}

}  // namespace

TEST(NumericalRadius, JordanClosedForm) {
  for (std::size_t n = 2; n <= 40; n += 3) {
    const auto est = analyze_range(jordan(n), 1e-10, 1e-10);
    const double w = std::cos(std::numbers::pi / static_cast<double>(n + 1));
    EXPECT_TRUE(est.omega->contains(w) || std::abs(est.omega->mid() - w) < 1e-10) << n;
    EXPECT_LT(est.omega->width(), 1e-10);
    EXPECT_LT(est.crawford->hi, 1e-10);
  }
}

TEST(NumericalRadius, DirichletCharPoly) {
  const ComplexMatrix d = compress(OperatorExpr::weighted_shift(SequenceRule::dirichlet()), 4);
  EXPECT_NEAR(omega(d, 1e-12), dirichlet4_root(), 1e-10);
  EXPECT_NEAR(dirichlet4_root(), 1.024466917540, 1e-11);
}

TEST(NumericalRadius, FastPaths) {
  ComplexMatrix swap(2, 2);
  swap << 0.0, 1.0, 1.0, 0.0;
  auto est = analyze_range(swap, 1e-12, 1e-12);
  EXPECT_EQ(est.method, "hermitian");
  EXPECT_NEAR(est.omega->mid(), 1.0, 1e-14);
  EXPECT_NEAR(est.crawford->mid(), 0.0, 1e-14);

  ComplexMatrix diag = zeros(3, 3);
  diag(0, 0) = Complex(1.0, 1.0);
  diag(1, 1) = Complex(2.0, 1.0);
  diag(2, 2) = Complex(1.0, 2.0);
  est = analyze_range(diag, 1e-12, 1e-12);
  EXPECT_EQ(est.method, "diagonal");
  EXPECT_NEAR(est.omega->mid(), std::sqrt(5.0), 1e-14);
  EXPECT_NEAR(est.crawford->mid(), std::sqrt(2.0), 1e-14);

  est = analyze_range(jordan(5), 1e-12, std::nullopt);
  EXPECT_EQ(est.method, "circular");

  ComplexMatrix nil = zeros(2, 2);
  nil(1, 0) = 1.0;
  est = analyze_range(nil, 1e-12, 1e-12);
  EXPECT_EQ(est.method, "ellipse");
  EXPECT_NEAR(est.omega->mid(), 0.5, 1e-15);
}

TEST(NumericalRadius, EllipseMatchesMonteCarlo) {
  Rng rng(21);
  for (int k = 0; k < 5; ++k) {
    ComplexMatrix a = gaussian_matrix(rng, 2, 2);
    a -= (0.5 * a.trace()) * identity(2);
    const double w = omega(a, 1e-12);
    const auto mc = mc_oracle_polished(a, 2000, 99);
    EXPECT_LE(mc.max_abs, w + 1e-12);
    EXPECT_NEAR(mc.max_abs, w, 1e-6);
  }
}

TEST(NumericalRadius, RandomSweepBracketsOracle) {
  Rng rng(22);
  for (int k = 0; k < 6; ++k) {
    const ComplexMatrix a = gaussian_matrix(rng, 5, 5);
    const auto est = analyze_range(a, 1e-10, 1e-10);
    const auto mc = mc_oracle_polished(a, 2000, 7);
    EXPECT_LE(mc.max_abs, est.omega->hi + 1e-12);
    EXPECT_GE(mc.min_abs, est.crawford->lo - 1e-12);
    EXPECT_LE(est.omega->hi, op_norm(a) * (1.0 + 1e-12));
    EXPECT_GE(est.omega->lo, 0.5 * op_norm(a) - 1e-12);
  }
}

TEST(Crawford, ShiftedRangeAwayFromZero) {
  ComplexMatrix a = jordan(4);
  a += Complex(2.0, 0.0) * identity(4);
  const double c = crawford(a, 1e-10);
  EXPECT_NEAR(c, 2.0 - std::cos(std::numbers::pi / 5.0), 1e-9);
}

TEST(Crawford, LargeToeplitzUsesInverseIteration) {
  const OperatorExpr t = OperatorExpr::toeplitz(ToeplitzSymbol::blaschke({Complex(0.5, 0.0)}));
  const auto est = analyze_range(compress(t, 32), 1e-9, 1e-9);
  EXPECT_LT(est.omega->hi, 1.0 + 1e-10);
  EXPECT_GT(est.omega->lo, 0.9);
  EXPECT_LE(est.crawford->lo, est.crawford->hi);
}

TEST(Boundary, RowsAndSupport) {
  ComplexMatrix a(2, 2);
  a << 1.0, 1.0, 0.0, 1.0;
  const auto b = range_boundary(a, 4);
  ASSERT_EQ(b.samples.size(), 4u);
  for (const auto& s : b.samples) {
    EXPECT_NEAR((std::polar(1.0, -s.theta) * s.point).real(), s.support, 1e-12);
    EXPECT_NEAR(std::abs(s.point - Complex(1.0, 0.0)), 0.5, 1e-12);
  }
  EXPECT_THROW(range_boundary(a, 2), DomainError);
}

TEST(Geometry, OriginDistanceAndHull) {
  const std::vector<Complex> sq{{1, 1}, {2, 1}, {2, 2}, {1, 2}, {1.5, 1.5}};
  EXPECT_EQ(convex_hull(sq).size(), 4u);
  EXPECT_NEAR(origin_distance(sq), std::sqrt(2.0), 1e-15);
  const std::vector<Complex> around{{-1, -1}, {1, -1}, {0, 1}};
  EXPECT_EQ(origin_distance(around), 0.0);
  EXPECT_NEAR(max_modulus(sq), std::sqrt(8.0), 1e-15);
}

TEST(Errors, BadInput) {
  EXPECT_THROW(omega(zeros(2, 3)), DomainError);
  EXPECT_THROW(numerical_radius(identity(2), -1.0), DomainError);
  EXPECT_THROW(mc_oracle(identity(2), 0, 1), DomainError);
}
