#include <gtest/gtest.h>

#include "opineq/core/random.hpp"
#include "opineq/isom/isom.hpp"
#include "opineq/linops/compress.hpp"

using namespace opineq;
using namespace opineq::isom;

TEST(Wandering, ShiftHasOneDimension) {
  const auto w = wandering_basis(OperatorExpr::shift(), 32, 1e-8);
  EXPECT_EQ(w.dimension(), 1u);
  EXPECT_NEAR(std::abs(w.basis(0, 0)), 1.0, 1e-14);
  EXPECT_LT(w.residual, 1e-12);
}

TEST(Wandering, BlaschkeDegreeCountsDimension) {
  EXPECT_EQ(wandering_basis(inner_toeplitz({Complex(0.5, 0.0)}), 64, 1e-8).dimension(), 1u);
  EXPECT_EQ(wandering_basis(inner_toeplitz({Complex(0.5, 0.0), Complex(-0.2, 0.3)}), 64, 1e-8).dimension(), 2u);
}

TEST(Wandering, WoldModel) {
  Rng rng(4);
  const ComplexMatrix u = unitary_matrix(rng, 3);
  const auto v = wold_model(2, u);
  EXPECT_EQ(wandering_basis(v, 40, 1e-8).dimension(), 2u);
  const ComplexMatrix m = compress(v, 40);
  EXPECT_LT((m.topLeftCorner(3, 3) - u).norm(), 1e-15);
  EXPECT_THROW(wold_model(0, ComplexMatrix()), DomainError);
}

TEST(Decay, PureVersusUnitary) {
  const ComplexVector x = ComplexVector::Ones(6);
  const auto shift = purity_decay(OperatorExpr::shift(), x, 8);
  EXPECT_TRUE(shift.non_increasing());
  EXPECT_FALSE(shift.not_pure());
  EXPECT_EQ(shift.ratios.back().second, 0.0);

  Rng rng(9);
  const auto unitary = purity_decay(OperatorExpr::dense(unitary_matrix(rng, 6)), x, 8);
  EXPECT_TRUE(unitary.not_pure());
}

TEST(Models, DirichletAndInner) {
  const ComplexMatrix d = compress(dirichlet_shift(), 3);
  EXPECT_NEAR(d(1, 0).real(), std::sqrt(2.0), 1e-15);
  const ComplexMatrix t = compress(inner_toeplitz({Complex(0.5, 0.0)}), 3);
  EXPECT_NEAR(t(0, 0).real(), -0.5, 1e-15);
  EXPECT_NEAR(unitarity_defect(identity(3)), 0.0, 1e-15);
  EXPECT_THROW(wandering_basis(OperatorExpr::shift(), 0, 1e-8), DomainError);
}
