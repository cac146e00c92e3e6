#include <gtest/gtest.h>

#include "opineq/core/errors.hpp"
#include "opineq/core/matrix.hpp"
#include "opineq/core/random.hpp"
#include "opineq/core/summation.hpp"

using namespace opineq;

TEST(Random, SameSeedSameStream) {
  Rng a(7), b(7);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.bits(), b.bits());
}

TEST(Random, DerivedSeedsDiffer) {
  EXPECT_NE(derive_seed(42, 0), derive_seed(42, 1));
  EXPECT_NE(derive_seed(42, 0), derive_seed(43, 0));
  EXPECT_EQ(derive_seed(42, 5), derive_seed(42, 5));
}

TEST(Random, UniformRangeAndIndex) {
  Rng r(1);
  for (int i = 0; i < 1000; ++i) {
    const double u = r.uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
    EXPECT_LT(r.index(5), 5u);
  }
}

TEST(Random, UnitaryAndPsdGenerators) {
  Rng r(3);
  const ComplexMatrix u = unitary_matrix(r, 6);
  EXPECT_LT((u.adjoint() * u - identity(6)).norm(), 1e-13);
  const ComplexMatrix p = psd_matrix(r, 6);
  EXPECT_LT(hermitian_defect(p), 1e-14);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(p);
  EXPECT_GT(es.eigenvalues().minCoeff(), 0.0);
  EXPECT_NEAR(unit_vector(r, 9).norm(), 1.0, 1e-15);
}

TEST(Matrix, KronAndPower) {
  ComplexMatrix a(2, 2);
  a << 0.0, 1.0, 0.0, 0.0;
  EXPECT_EQ(matrix_power(a, 2).norm(), 0.0);
  const ComplexMatrix k = kron(identity(2), a);
  EXPECT_EQ(k.rows(), 4);
  EXPECT_EQ(k(0, 1), Complex(1.0));
  EXPECT_EQ(k(2, 3), Complex(1.0));
  EXPECT_TRUE(is_diagonal(identity(3)));
  EXPECT_FALSE(is_diagonal(a));
}

TEST(Matrix, RequireSquareThrows) {
  EXPECT_THROW(require_square(zeros(2, 3), "test"), DomainError);
  ComplexMatrix bad = identity(2);
  bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(require_finite(bad, "test"), DomainError);
}

TEST(Summation, CompensatedBeatsNaive) {
  CompensatedSum s;
  double naive = 0.0;
  s.add(1.0);
  naive += 1.0;
  for (int i = 0; i < 1000000; ++i) {
    s.add(1e-16);
    naive += 1e-16;
  }
  EXPECT_NEAR(s.value(), 1.0 + 1e-10, 1e-15);
  EXPECT_EQ(naive, 1.0);
}

TEST(Enclosure, Basics) {
  const Enclosure e{1.0, 3.0};
  EXPECT_DOUBLE_EQ(e.mid(), 2.0);
  EXPECT_DOUBLE_EQ(e.width(), 2.0);
  EXPECT_TRUE(e.contains(2.5));
  EXPECT_FALSE(e.contains(3.5));
}
