// Numerical radius and Crawford number of growing compressions of an
// operator read from JSON, e.g. data/toeplitz_half.json or data/dirichlet_shift.json.
#include <cstdio>
#include <exception>

#include "opineq/io/json.hpp"
#include "opineq/linops/compress.hpp"
#include "opineq/range/estimate.hpp"

int main(int argc, char** argv) {
  using namespace opineq;
  const char* path = argc > 1 ? argv[1] : OPINEQ_SAMPLE_DATA "/toeplitz_half.json";
  try {
    const OperatorExpr op = io::read_operator(path);
    std::printf("%6s  %18s  %18s\n", "N", "omega", "crawford");
    for (std::size_t n = 4; n <= 64; n *= 2) {
      const auto est = range::analyze_range(compress(op, n), 1e-10, 1e-10);
      std::printf("%6zu  %18.12f  %18.12f\n", n, est.omega->mid(), est.crawford->mid());
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 1;
  }
  return 0;
}
