#include <cstdio>

#include "opineq/hardy/constants.hpp"
#include "opineq/harness/registry.hpp"

int main() {
  using namespace opineq;
  std::printf("constant_main(p, N) with its certified bracket\n");
  for (double p : {1.5, 2.0, 3.0})
    for (std::size_t n : {1, 2, 3, 5, 10}) {
      const auto c = hardy::constant_main(p, n);
      std::printf("  p = %.1f  N = %2zu  %.12f  [%.12f, %.12f]\n", p, n, c.value, c.value_bracket.lo,
                  c.value_bracket.hi);
    }
  std::printf("\nimproved weights: %.10f\n\n", hardy::constant_improved());
  for (const auto& r : harness::constants_table())
    std::printf("%-24s %12.6f  %-10s %s%s\n", r.key.c_str(), r.value, r.origin.c_str(), r.expression.c_str(),
                r.best ? "  (smallest)" : "");
  return 0;
}
