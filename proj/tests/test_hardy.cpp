#include <gtest/gtest.h>

#include <numbers>

#include "opineq/hardy/constants.hpp"

using namespace opineq;
using namespace opineq::hardy;

constexpr double kPi = std::numbers::pi;

TEST(Weights, ClassicalAndImprovedValues) {
  EXPECT_DOUBLE_EQ(weight(WeightKind::classical, 1), 0.25);
  EXPECT_NEAR(weight(WeightKind::improved, 1), 2.0 - std::sqrt(2.0), 4e-16);
  const double n = 1000.0;
  EXPECT_NEAR(weight(WeightKind::improved, 1000), 2.0 - std::sqrt(1.0 + 1.0 / n) - std::sqrt(1.0 - 1.0 / n), 1e-12);
  for (std::size_t k = 1; k < 50; ++k) EXPECT_GT(weight(WeightKind::improved, k), weight(WeightKind::classical, k));
  EXPECT_THROW(weight(WeightKind::classical, 0), DomainError);
  EXPECT_THROW(parse_weight_kind("other"), DomainError);
}

TEST(Weights, Sums) {
  const auto c = weight_sum(WeightKind::classical, 1e-10);
  EXPECT_NEAR(c.value, kPi * kPi / 24.0, 1e-9);
  EXPECT_TRUE(c.bracket.contains(kPi * kPi / 24.0));
  const auto i = weight_sum(WeightKind::improved, 1e-10);
  // Frozen: independent mpmath evaluation of sum (2 - sqrt(1+1/n) - sqrt(1-1/n)).
  EXPECT_NEAR(i.value, 0.754292303507, 1e-10);
}

TEST(TailPowerSum, MatchesZeta) {
  const auto t = tail_power_sum(2.0, 2);
  EXPECT_TRUE(t.contains(kPi * kPi / 6.0 - 1.25));
  EXPECT_LT(t.width(), 1e-9);
  const auto t4 = tail_power_sum(4.0, 1);
  EXPECT_TRUE(t4.contains(std::pow(kPi, 4) / 90.0 - 1.0));
  EXPECT_THROW(tail_power_sum(1.0, 2), DomainError);
}

TEST(Constants, MainFrozenOracles) {
  EXPECT_NEAR(constant_main(2.0, 2).value, 2.234801505594, 1e-10);
  EXPECT_NEAR(constant_main(2.0, 2).value, closed_form::main_p2_n2(), 1e-10);
  EXPECT_NEAR(constant_main(3.0, 2).value, 2.579826298875737, 1e-9);
  EXPECT_NEAR(constant_main(1.5, 2).value, 1.868956153274777, 1e-9);
  const auto c = constant_main(2.0, 2);
  EXPECT_TRUE(c.value_bracket.contains(closed_form::main_p2_n2()));
}

TEST(Constants, MainDecreasesInN) {
  double prev = constant_main(2.0, 1).value;
  for (std::size_t n = 2; n <= 8; ++n) {
    const double v = constant_main(2.0, n).value;
    EXPECT_LT(v, prev);
    EXPECT_LT(v, hardy_factor(2.0));
    prev = v;
  }
}

TEST(Constants, ThreeTerm) {
  EXPECT_NEAR(constant_three_term(2.0).value, 2.160446805689, 1e-10);
  EXPECT_NEAR(constant_three_term(2.0).value, closed_form::three_term_p2(), 1e-10);
  EXPECT_NEAR(constant_three_term(3.0, true).value, 0.799559681976, 1e-9);
}

TEST(Constants, Improved) {
  EXPECT_NEAR(constant_improved(), 1.5875411030, 1e-9);
  EXPECT_NEAR(constant_from_weights(WeightKind::classical).value, closed_form::main_p2_n2(), 1e-6);
  EXPECT_DOUBLE_EQ(hardy_factor(2.0), 4.0);
  EXPECT_THROW(hardy_factor(1.0), DomainError);
}

TEST(ScalarHardy, HoldsOnSequences) {
  const std::vector<double> a{1.0, 0.5, 0.25, 0.0, 2.0};
  for (double p : {1.5, 2.0, 3.0}) {
    const auto r = check_scalar_hardy(a, p);
    EXPECT_GE(r.margin, 0.0) << p;
  }
  EXPECT_GE(check_scalar_hardy(a, 2.0, WeightKind::improved).margin, 0.0);
  const std::vector<double> zero(4, 0.0);
  EXPECT_TRUE(check_scalar_hardy(zero, 2.0).equality);
  const std::vector<double> neg{-1.0};
  EXPECT_THROW(check_scalar_hardy(neg, 2.0), DomainError);
  EXPECT_THROW(check_scalar_hardy(a, 3.0, WeightKind::improved), DomainError);
}
