#include <gtest/gtest.h>

#include <cmath>

#include "opineq/core/random.hpp"
#include "opineq/linops/blaschke.hpp"
#include "opineq/linops/compress.hpp"
#include "opineq/linops/cross_checks.hpp"
#include "opineq/linops/functional.hpp"
#include "opineq/linops/jacobi.hpp"
#include "opineq/linops/two_isometry.hpp"

using namespace opineq;

class JacobiVsEigen : public ::testing::TestWithParam<int> {};

TEST_P(JacobiVsEigen, SpectraAgree) {
  Rng rng(derive_seed(11, static_cast<std::uint64_t>(GetParam())));
  const std::size_t n = 2 + static_cast<std::size_t>(GetParam()) % 12;
  const ComplexMatrix h = hermitian_matrix(rng, n);
  const SpectralDecomposition sd = jacobi_eigh(h);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  EXPECT_LT((sd.eigenvalues - es.eigenvalues()).cwiseAbs().maxCoeff(), 1e-12 * std::max(1.0, h.norm()));
  EXPECT_LT((sd.reconstruct() - h).norm(), 1e-12 * std::max(1.0, h.norm()));
  EXPECT_LT((sd.eigenvectors.adjoint() * sd.eigenvectors - identity(n)).norm(), 1e-12);
  for (Eigen::Index i = 1; i < sd.eigenvalues.size(); ++i) EXPECT_LE(sd.eigenvalues(i - 1), sd.eigenvalues(i));
}

INSTANTIATE_TEST_SUITE_P(Random, JacobiVsEigen, ::testing::Range(0, 24));

TEST(Jacobi, RejectsNonHermitian) {
  ComplexMatrix a = zeros(2, 2);
  a(0, 1) = 1.0;
  EXPECT_THROW(jacobi_eigh(a), DomainError);
}

TEST(Functional, SquareRootSquaresBack) {
  Rng rng(5);
  const ComplexMatrix p = psd_matrix(rng, 7);
  const ComplexMatrix s = frac_power(p, 0.5);
  EXPECT_LT((s * s - p).norm(), 1e-11 * p.norm());
  EXPECT_LT(hermitian_defect(s), 1e-12);
}

TEST(Functional, AbsAndNorms) {
  Rng rng(6);
  const ComplexMatrix a = gaussian_matrix(rng, 5, 5);
  const ComplexMatrix m = abs_op(a);
  EXPECT_LT((m * m - a.adjoint() * a).norm(), 1e-10 * a.squaredNorm());
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
  EXPECT_NEAR(op_norm(a), svd.singularValues()(0), 1e-12 * svd.singularValues()(0));
  EXPECT_NEAR(lambda_max(m), svd.singularValues()(0), 1e-10);
  EXPECT_LT((abs_power(a, 2.0) - a.adjoint() * a).norm(), 1e-10 * a.squaredNorm());
}

TEST(Functional, ZeroToTheZeroIsOne) {
  EXPECT_EQ(detail::power_with_zero(0.0, 0.0), 1.0);
  EXPECT_EQ(detail::power_with_zero(0.0, 0.5), 0.0);
  const ComplexMatrix z = zeros(3, 3);
  EXPECT_LT((frac_power(z, 0.0) - identity(3)).norm(), 1e-15);
}

TEST(Compress, ShiftAndWeights) {
  const ComplexMatrix s = compress(OperatorExpr::shift(), 4);
  ComplexMatrix expect = zeros(4, 4);
  for (int i = 0; i < 3; ++i) expect(i + 1, i) = 1.0;
  EXPECT_EQ(s, expect);
  const ComplexMatrix d = compress(OperatorExpr::weighted_shift(SequenceRule::dirichlet()), 4);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(d(i + 1, i).real(), std::sqrt((i + 2.0) / (i + 1.0)), 1e-15);
}

TEST(Compress, ExpressionAlgebra) {
  const OperatorExpr s = OperatorExpr::shift();
  const ComplexMatrix s4 = compress(s, 6);
  EXPECT_LT((compress(s * s, 6) - s4 * s4).norm(), 1e-15);
  EXPECT_LT((compress(s.adjoint() * s, 6) - identity(6)).norm(), 1e-15);
  EXPECT_LT((compress(s + Complex(2.0) * OperatorExpr::identity(), 6) - (s4 + 2.0 * identity(6))).norm(), 1e-15);
}

TEST(Compress, TensorMatchesKron) {
  ComplexMatrix a(2, 2), b(2, 2);
  a << 1.0, 2.0, 3.0, 4.0;
  b << 0.0, 1.0, Complex(0.0, 1.0), 0.0;
  const OperatorExpr t = OperatorExpr::tensor({OperatorExpr::dense(a), OperatorExpr::dense(b)});
  EXPECT_LT((compress(t, 4) - kron(a, b)).norm(), 1e-15);
}

TEST(Blaschke, SingleZeroCoefficients) {
  const Complex a(0.5, 0.0);
  const auto e = blaschke_coeffs({a}, 32);
  for (double t : {0.1, 0.7, 2.0}) {
    const Complex z = std::polar(0.6, t);
    Complex sum = 0.0, zk = 1.0;
    for (const Complex& c : e.coeffs) {
      sum += c * zk;
      zk *= z;
    }
    EXPECT_LT(std::abs(sum - blaschke_eval({a}, z)), 1e-7);
  }
  double l2 = 0.0;
  for (const Complex& c : e.coeffs) l2 += std::norm(c);
  EXPECT_NEAR(l2 + e.tail_l2 * e.tail_l2, 1.0, 1e-12);
  EXPECT_NEAR(std::abs(blaschke_eval({a}, std::polar(1.0, 0.3))), 1.0, 1e-14);
}

TEST(Blaschke, ToeplitzIsIsometry) {
  const OperatorExpr t = OperatorExpr::toeplitz(ToeplitzSymbol::blaschke({Complex(0.5, 0.0)}));
  const ComplexMatrix m = compress(t, 96, 64);
  EXPECT_LT((m.adjoint() * m - identity(64)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(TwoIsometry, DirichletAndShift) {
  EXPECT_LT(two_isometry_defect(OperatorExpr::weighted_shift(SequenceRule::dirichlet()), 32), 1e-13);
  EXPECT_LT(two_isometry_defect(OperatorExpr::shift(), 32), 1e-15);
  EXPECT_GT(two_isometry_defect(OperatorExpr::weighted_shift(SequenceRule::bergman()), 32), 1e-3);
}

TEST(CrossChecks, SqrtEqualityAndLemma) {
  Rng rng(8);
  const ComplexMatrix x = psd_matrix(rng, 4);
  const std::vector<ComplexMatrix> ai{gaussian_matrix(rng, 4, 4) / 4.0, gaussian_matrix(rng, 4, 4) / 4.0};
  const auto r = mat_fun_cross_checks(ai.front(), x, ai, 2.0, 1e-11);
  EXPECT_LT(r.equality_gap, 1e-10);
  EXPECT_GE(r.lemma_margin, -1e-10);
}
