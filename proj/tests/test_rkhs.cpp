#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "opineq/rkhs/rkhs.hpp"

using namespace opineq;
using namespace opineq::rkhs;

TEST(Kernel, ClosedForms) {
  const Complex z(0.3, 0.2), w(-0.1, 0.5);
  const Complex x = z * std::conj(w);
  EXPECT_LT(std::abs(kernel_eval(RkhsModel::hardy(), z, w) - 1.0 / (1.0 - x)), 1e-14);
  EXPECT_LT(std::abs(kernel_eval(RkhsModel::bergman(), z, w) - 1.0 / ((1.0 - x) * (1.0 - x))), 1e-14);
  EXPECT_LT(std::abs(kernel_eval(RkhsModel::dirichlet(), z, w) + std::log(1.0 - x) / x), 1e-13);
  EXPECT_NEAR(kernel_norm2(RkhsModel::hardy(), Complex(0.5, 0.0)), 4.0 / 3.0, 1e-14);
}

TEST(Kernel, CustomBetaMatchesHardy) {
  const RkhsModel m = RkhsModel::beta("ones", [](std::size_t) { return 1.0; }, [](std::size_t) { return 1.0; });
  const Complex z(0.4, -0.3), w(0.2, 0.6);
  EXPECT_LT(std::abs(kernel_eval(m, z, w, 1e-15) - kernel_eval(RkhsModel::hardy(), z, w)), 1e-13);
  EXPECT_THROW(RkhsModel::beta("bad", [](std::size_t) { return 0.0; }, [](std::size_t) { return 1.0; }), DomainError);
}

TEST(Kernel, NormalizedTruncationMass) {
  const Complex w(0.9, 0.0);
  const std::size_t n = kernel_truncation(RkhsModel::hardy(), w, 1e-12);
  const KernelState ks = normalized_kernel(RkhsModel::hardy(), w, n, 1e-12);
  EXPECT_LE(ks.tail, 1e-12);
  EXPECT_NEAR(ks.coeffs.squaredNorm() + ks.tail, 1.0, 1e-12);
}

TEST(Transform, ShiftOnHardyAndBergman) {
  for (const auto& m : {RkhsModel::hardy(), RkhsModel::bergman()})
    for (const Complex w : {Complex(0.5, 0.0), Complex(0.3, -0.6), Complex(0.0, 0.95)}) {
      const auto v = berezin_transform(OperatorExpr::shift(), m, w);
      if (m.name() == "hardy") {
        EXPECT_LT(std::abs(v.value - w), 1e-11 + v.error_bound);
      }
      EXPECT_LT(v.error_bound, 1e-10);
    }
}

TEST(Transform, DiagonalOnHardy) {
  const OperatorExpr d = OperatorExpr::diagonal(SequenceRule::harmonic());
  const double r2 = 0.25;
  double expect = 0.0;
  for (int n = 0; n < 200; ++n) expect += (1.0 - r2) * std::pow(r2, n) / (n + 1.0);
  const auto v = berezin_transform(d, RkhsModel::hardy(), Complex(0.5, 0.0));
  EXPECT_NEAR(v.value.real(), expect, 1e-11);
}

TEST(BerezinNumber, ShiftHardyVersusDiscrete) {
  const auto g = DiscGrid::standard(0.999, 10, 64);
  const auto h = berezin_number(OperatorExpr::shift(), RkhsModel::hardy(), g);
  EXPECT_GE(h.lower, 0.999 - 1e-12);
  EXPECT_LE(h.upper, 1.0 + 1e-12);
  const auto d = berezin_number(OperatorExpr::shift(), RkhsModel::discrete(), g);
  EXPECT_EQ(d.lower, 0.0);
}

TEST(BerezinNumber, DiagonalDiscreteIsSupremum) {
  const OperatorExpr d = OperatorExpr::diagonal(SequenceRule::list({0.2, Complex(0.0, -0.7), 0.5}, 0.0));
  const auto b = berezin_number(d, RkhsModel::discrete(3));
  EXPECT_NEAR(b.lower, 0.7, 1e-15);
  EXPECT_EQ(b.witness.front(), Complex(1.0, 0.0));
}

TEST(BerNorm, TensorMultiplicative) {
  ComplexMatrix a(2, 2), b(2, 2);
  a << 0.3, 0.5, Complex(0.0, 0.2), -0.4;
  b << 0.1, 0.9, 0.4, Complex(0.3, 0.3);
  const OperatorExpr ta = OperatorExpr::dense(a), tb = OperatorExpr::dense(b);
  const RkhsModel m2 = RkhsModel::discrete(2);
  const double na = ber_norm(ta, m2).lower, nb = ber_norm(tb, m2).lower;
  const double nt = ber_norm(OperatorExpr::tensor({ta, tb}), RkhsModel::product({m2, m2})).lower;
  EXPECT_NEAR(nt, na * nb, 1e-12 * na * nb);
}

TEST(BerezinNumber, JointSamplingSharesPoints) {
  const auto g = DiscGrid::standard(0.9, 3, 16);
  const std::vector<OperatorExpr> ops{OperatorExpr::shift(), Complex(0.5) * OperatorExpr::shift()};
  const auto est = joint_berezin_number(ops, RkhsModel::hardy(), g);
  ASSERT_EQ(est.size(), 2u);
  EXPECT_EQ(est[0].samples, est[1].samples);
  EXPECT_NEAR(est[1].lower, 0.5 * est[0].lower, 1e-13);
}

TEST(Grid, StandardRingsAndValidation) {
  const auto g = DiscGrid::standard(0.9, 10, 8);
  EXPECT_EQ(g.radii, (std::vector<double>{0.5, 0.75, 0.875, 0.9}));
  EXPECT_EQ(g.disc_points().size(), 32u);
  DiscGrid bad = g;
  bad.radii = {0.5, 1.0};
  EXPECT_THROW(bad.validate(), DomainError);
}

TEST(Samples, CsvHeaderAndRows) {
  auto g = DiscGrid::standard(0.5, 1, 4);
  const auto s = berezin_samples(OperatorExpr::shift(), RkhsModel::hardy(), g);
  std::ostringstream os;
  write_berezin_csv(os, s);
  const std::string text = os.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), "re_w,im_w,re_val,im_val");
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 1 + static_cast<long>(s.size()));
}

TEST(Errors, ModelNames) {
  EXPECT_EQ(parse_model("bergman").name(), "bergman");
  EXPECT_THROW(parse_model("sobolev"), DomainError);
  EXPECT_THROW(berezin_transform(OperatorExpr::shift(), RkhsModel::hardy(), Complex(1.0, 0.0)), DomainError);
}
