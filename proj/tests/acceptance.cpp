// One pass/fail line per acceptance criterion. Exit status 1 when any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iterator>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "opineq/hardy/constants.hpp"
#include "opineq/harness/harness.hpp"
#include "opineq/isom/isom.hpp"
#include "opineq/linops/compress.hpp"
#include "opineq/range/range.hpp"
#include "opineq/rkhs/rkhs.hpp"

using namespace opineq;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void expect(bool ok, const std::string& what) {
    if (!ok) pass = false;
    notes.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
  }
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

range::RangeEstimate both(const ComplexMatrix& a, double tol) {
  return range::analyze_range(a, tol, tol, harness::harness_sweep());
}

Outcome criterion1() {
  Outcome o;
  const auto t0 = Clock::now();
  ComplexMatrix a = zeros(2, 2);
  a(1, 0) = 1.0;
  const double w = range::omega(a, 1e-12);
  const double w2 = range::omega(a * a, 1e-12);
  const double t = seconds_since(t0);
  o.expect(std::abs(w - 0.5) <= 1e-9, fmt("omega(A) = %.15g", w));
  o.expect(std::abs(w2) <= 1e-9, fmt("omega(A^2) = %.3g", w2));
  o.expect(t < 1.0, fmt("runtime %.3f s < 1 s", t));
  return o;
}

Outcome criterion2() {
  Outcome o;
  ComplexMatrix u(2, 2);
  u << 0.0, 1.0, 1.0, 0.0;
  const auto est = range::analyze_range(u, 1e-12, 1e-12);
  const OperatorExpr op = OperatorExpr::dense(u);
  const auto m = rkhs::RkhsModel::discrete(2);
  const double ber = rkhs::berezin_number(op, m).lower;
  const double bn = rkhs::ber_norm(op, m).lower;
  o.expect(std::abs(est.omega->mid() - 1.0) <= 1e-10, fmt("omega(U) = %.15g", est.omega->mid()));
  o.expect(std::abs(est.crawford->mid()) <= 1e-10, fmt("c(U) = %.3g", est.crawford->mid()));
  o.expect(std::abs(ber) <= 1e-10, fmt("ber(U) on the discrete model = %.3g", ber));
  o.expect(std::abs(bn - 1.0) <= 1e-10, fmt("||U||_ber = %.15g", bn));
  return o;
}

Outcome criterion3() {
  Outcome o;
  const auto t0 = Clock::now();
  const double cm = hardy::constant_main(2.0, 2).value;
  const double c3 = hardy::constant_three_term(2.0).value;
  const double ci = hardy::constant_improved();
  const double sc = hardy::weight_sum(hardy::WeightKind::classical, 1e-11).value;
  const double si = hardy::weight_sum(hardy::WeightKind::improved, 1e-11).value;
  const double t = seconds_since(t0);
  const double pi2 = std::numbers::pi * std::numbers::pi;
  o.expect(cm >= 2.2346 && cm <= 2.2350, fmt("constant_main(2, 2) = %.12f in [2.2346, 2.2350]", cm));
  o.expect(c3 >= 2.1603 && c3 <= 2.1605, fmt("N = 3 constant = %.12f in [2.1603, 2.1605]", c3));
  o.expect(ci >= 1.59384 && ci <= 1.59386, fmt("constant_improved() = %.10f in [1.59384, 1.59386]", ci));
  o.expect(std::abs(sc - pi2 / 24.0) <= 1e-9, fmt("classical weight sum = %.15f vs pi^2/24", sc));
  o.expect(si >= 0.75300 && si <= 0.75310, fmt("improved weight sum = %.12f in [0.75300, 0.75310]", si));
  o.expect(t < 5.0, fmt("runtime %.3f s < 5 s", t));
  return o;
}

Outcome criterion4() {
  Outcome o;
  const auto g = rkhs::DiscGrid::standard(0.999);
  const OperatorExpr shift = OperatorExpr::shift();
  const auto h = rkhs::berezin_number(shift, rkhs::RkhsModel::hardy(), g);
  const auto d = rkhs::berezin_number(shift, rkhs::RkhsModel::discrete(), g);
  o.expect(h.lower >= 0.999, fmt("ber(M_z) lower = %.17g >= 0.999", h.lower));
  o.expect(h.upper <= 1.0 + 1e-12, fmt("ber(M_z) upper = %.17g <= 1 + 1e-12", h.upper));
  o.expect(d.lower == 0.0, fmt("ber(shift) on the discrete model = %.3g", d.lower));
  return o;
}

Outcome criterion5() {
  Outcome o;
  double worst = 0.0, worst_mc = 0.0, worst_c = 0.0;
  bool increasing = true;
  double prev = 0.0;
  for (std::size_t n = 2; n <= 64; ++n) {
    const ComplexMatrix j = compress(OperatorExpr::shift(), n);
    const auto est = both(j, 1e-10);
    const double exact = std::cos(std::numbers::pi / static_cast<double>(n + 1));
    worst = std::max(worst, std::abs(est.omega->mid() - exact));
    worst_c = std::max(worst_c, est.crawford->hi);
    if (est.omega->mid() <= prev) increasing = false;
    prev = est.omega->mid();
    if (n <= 8 || n % 8 == 0) {
      const auto mc = range::mc_oracle_polished(j, 64, derive_seed(5, n), 2000, 2);
      worst_mc = std::max(worst_mc, std::abs(mc.max_abs - exact));
    }
  }
  o.expect(worst <= 1e-8, fmt("max |omega_N - cos(pi/(N+1))| = %.3g over N = 2..64", worst));
  o.expect(worst_mc <= 1e-3, fmt("Monte-Carlo oracle within %.3g of the closed form", worst_mc));
  o.expect(increasing, "omega_N strictly increasing toward 1");
  o.expect(worst_c <= 1e-10, fmt("max c_N upper end = %.3g", worst_c));
  return o;
}

Outcome criterion6() {
  Outcome o;
  const OperatorExpr t = isom::inner_toeplitz({Complex(0.5, 0.0)});
  std::vector<double> w, c;
  std::string trail;
  for (std::size_t n : {8, 16, 32, 64, 128}) {
    const auto est = both(compress(t, n), 1e-10);
    w.push_back(est.omega->mid());
    c.push_back(est.crawford->mid());
    o.expect(est.omega->hi <= 1.0 + 1e-10, fmt("N = %.0f: omega upper end %.15g <= 1 + 1e-10", static_cast<double>(n), est.omega->hi));
    trail += fmt(" %.0f:", static_cast<double>(n)) + fmt("(%.6f, ", w.back()) + fmt("%.6f)", c.back());
  }
  bool w_up = true, c_down = true;
  for (std::size_t i = 1; i < w.size(); ++i) {
    w_up = w_up && w[i] >= w[i - 1] - 1e-10;
    c_down = c_down && c[i] <= c[i - 1] + 1e-10;
  }
  o.expect(w_up, "omega increases along N = 8..128");
  o.expect(w.back() >= 0.97, fmt("omega_128 = %.12f >= 0.97", w.back()));
  o.expect(c_down, "c decreases along N = 8..128");
  o.expect(c.back() <= 0.05, fmt("c_128 = %.6g <= 0.05", c.back()));
  const auto wb = isom::wandering_basis(t, 128, 1e-8);
  o.expect(wb.dimension() == 1, fmt("wandering dimension = %.0f", static_cast<double>(wb.dimension())));
  o.notes.push_back("     (N: omega, c)" + trail);
  return o;
}

Outcome criterion7() {
  Outcome o;
  const double b = 29.0 / 24.0;
  const double root = std::sqrt(0.5 * (b + std::sqrt(b * b - 4.0 / 6.0)));
  const ComplexMatrix d4 = compress(isom::dirichlet_shift(), 4);
  const double w = range::omega(d4, 1e-12);
  o.expect(std::abs(w - root) <= 1e-6, fmt("omega(D_4) = %.12f, oracle root %.12f", w, root));
  const auto rep = harness::run_check("two-isometry-omega", harness::CheckConfig{});
  o.expect(rep.violation_count > 0, fmt("two-isometry-omega records %.0f violation(s)", static_cast<double>(rep.violation_count)));
  bool n4 = false;
  for (const auto& v : rep.violations)
    if (v.values.contains("N") && v.values["N"] == 4) n4 = true;
  o.expect(n4, "a recorded violation is the N = 4 compression");
  const auto cr = harness::run_check("two-isometry-crawford", harness::CheckConfig{});
  o.expect(!cr.failed() && cr.violation_count == 0, "two-isometry-crawford passes");
  const double c4 = range::crawford(d4, 1e-11);
  o.expect(std::abs(c4) <= 1e-10, fmt("c(D_4) = %.3g", c4));
  return o;
}

Outcome criterion8() {
  Outcome o;
  const std::vector<std::string> ids{"power-inequality", "norm-equivalence", "mccarthy", "mixed-schwarz",
                                     "omega-abs-p", "sqrt-sum-equality", "isometry-multiplicativity",
                                     "ber-norm-tensor", "main-hardy-p", "berezin-hardy-p2", "improved-berezin",
                                     "alpha-interpolated", "convex-berezin"};
  harness::CheckConfig cfg;
  const auto t0 = Clock::now();
  for (const auto& id : ids) {
    const auto r = harness::run_check(id, cfg);
    const bool ok = r.violation_count == 0 && r.min_margin >= -harness::kMarginTol && r.instances > 0;
    o.expect(ok, id + fmt(": min margin %.3g", r.min_margin) + fmt(", %.0f instances", static_cast<double>(r.instances)));
  }
  const double t = seconds_since(t0);
  o.expect(t < 60.0, fmt("total runtime %.2f s < 60 s", t));
  return o;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome criterion9() {
  Outcome o;
#ifdef OPINEQ_CLI_PATH
  std::vector<std::string> files{"acceptance_run1.json", "acceptance_run2.json"};
  for (const auto& f : files) {
    const std::string cmd = std::string("\"") + OPINEQ_CLI_PATH + "\" check all --seed 42 --out " + f + " > /dev/null";
    const int rc = std::system(cmd.c_str());
    o.expect(rc == 0, "`check all --seed 42 --out " + f + "` exits 0");
  }
  const std::string a = slurp(files[0]), b = slurp(files[1]);
  o.expect(!a.empty() && a == b, fmt("report files byte-identical (%.0f bytes)", static_cast<double>(a.size())));
#else
  harness::CheckConfig cfg;
  const std::string a = harness::to_json(harness::run_all(cfg), cfg).dump(2);
  const std::string b = harness::to_json(harness::run_all(cfg), cfg).dump(2);
  o.expect(a == b, "in-process reports byte-identical (command-line tool not built)");
#endif
  return o;
}

Outcome criterion10() {
  Outcome o;
  const OperatorExpr d = OperatorExpr::diagonal(SequenceRule::harmonic());
  double prev = std::numeric_limits<double>::infinity();
  bool monotone = true;
  double last = 0.0;
  for (int k = 0; k <= 10; ++k) {
    const std::size_t n = std::size_t{1} << k;
    last = range::crawford(compress(d, n), 1e-12);
    if (last > prev) monotone = false;
    prev = last;
  }
  o.expect(monotone, "c(N) non-increasing over N = 2^k, k = 0..10");
  o.expect(last <= 1e-3, fmt("c(1024) = %.6g <= 1e-3", last));
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"nilpotent 2x2: omega = 1/2, omega of square = 0", criterion1},
      {"swap unitary golden values", criterion2},
      {"Hardy constants and weight sums", criterion3},
      {"ber(M_z) on Hardy vs discrete model", criterion4},
      {"Jordan block compressions", criterion5},
      {"Toeplitz isometry with zero 1/2", criterion6},
      {"falsifiable two-isometry check", criterion7},
      {"property suites, default config", criterion8},
      {"determinism of check all", criterion9},
      {"compact normal Crawford number", criterion10},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto t0 = Clock::now();
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.expect(false, std::string("exception: ") + e.what());
    }
    const double t = seconds_since(t0);
    std::printf("criterion %2zu %s  %s (%.2f s)\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(), t);
    for (const auto& n : o.notes) std::printf("    %s\n", n.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
