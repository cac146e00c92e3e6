// The shift M_z has Berezin number 1 on the Hardy space, while the same
// operator written in the discrete model (kernel vectors e_i) has Berezin
// number 0: the Berezin number is not unitarily invariant.
#include <cstdio>

#include "opineq/rkhs/rkhs.hpp"

int main() {
  using namespace opineq;
  const OperatorExpr shift = OperatorExpr::shift();
  const auto grid = rkhs::DiscGrid::standard(0.999, 10, 128);

  const auto hardy = rkhs::berezin_number(shift, rkhs::RkhsModel::hardy(), grid);
  std::printf("hardy:    ber in [%.15f, %.15f], witness %.6f%+.6fi\n", hardy.lower, hardy.upper,
              hardy.witness.front().real(), hardy.witness.front().imag());

  const auto discrete = rkhs::berezin_number(shift, rkhs::RkhsModel::discrete(), grid);
  std::printf("discrete: ber in [%.15f, %.15f]\n", discrete.lower, discrete.upper);

  for (double r : {0.5, 0.9, 0.99}) {
    const auto v = rkhs::berezin_transform(shift, rkhs::RkhsModel::hardy(), Complex(r, 0.0));
    std::printf("  transform at %.2f: %.15f (error <= %.1e)\n", r, v.value.real(), v.error_bound);
  }
  return 0;
}
