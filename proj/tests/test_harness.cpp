#include <gtest/gtest.h>

#include <set>

#include "opineq/harness/harness.hpp"

using namespace opineq;
using namespace opineq::harness;

namespace {

CheckConfig small() {
  CheckConfig c;
  c.instances = 12;
  c.dims = 5;
  return c;
}

}  // namespace

TEST(Registry, IdsUniqueAndKnown) {
  std::set<std::string> seen;
  for (const auto& c : registry()) {
    EXPECT_TRUE(seen.insert(c.id).second) << c.id;
    EXPECT_FALSE(c.statement.empty()) << c.id;
    EXPECT_TRUE(c.run) << c.id;
  }
  for (const char* id : {"power-inequality", "toeplitz-inner", "two-isometry-omega", "berezin-hardy-p2",
                         "improved-berezin", "convex-berezin", "compact-normal-crawford"})
    EXPECT_TRUE(seen.count(id)) << id;
  EXPECT_EQ(find_check("two-isometry-omega")->severity, Severity::falsifiable);
}

TEST(Registry, UnknownIdAndBadConfig) {
  EXPECT_THROW(run_check("no-such-check", CheckConfig{}), DomainError);
  CheckConfig bad;
  bad.dims = 0;
  EXPECT_THROW(run_check("power-inequality", bad), DomainError);
}

TEST(Registry, EmptyFilterGivesEmptyList) {
  EXPECT_TRUE(run_all(CheckConfig{}, [](const std::string&) { return false; }).empty());
}

TEST(Report, KeyOrderAndNullWallTime) {
  const auto r = run_check("nilpotent-example", small());
  const Json j = to_json(r);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  const std::vector<std::string> head{"id", "config", "seed", "instances", "min_margin", "violations", "wall_ms"};
  ASSERT_GE(keys.size(), head.size());
  EXPECT_TRUE(std::equal(head.begin(), head.end(), keys.begin()));
  EXPECT_TRUE(j["wall_ms"].is_null());
  CheckConfig timed = small();
  timed.timing = true;
  EXPECT_TRUE(to_json(run_check("nilpotent-example", timed))["wall_ms"].is_number());
}

TEST(Report, DeterministicBytes) {
  for (const char* id : {"power-inequality", "mccarthy", "ber-norm-tensor", "main-hardy-p"}) {
    const std::string a = to_json(run_check(id, small())).dump();
    const std::string b = to_json(run_check(id, small())).dump();
    EXPECT_EQ(a, b) << id;
  }
}

TEST(Report, SeedChangesInstances) {
  CheckConfig a = small(), b = small();
  b.seed = 43;
  EXPECT_NE(to_json(run_check("norm-equivalence", a))["min_margin"], to_json(run_check("norm-equivalence", b))["min_margin"]);
}

TEST(MarginLog, ViolationsAndNaN) {
  CheckReport r;
  r.seed = 42;
  r.severity = Severity::assert_;
  MarginLog log(r);
  log.record(0, 0.5, [] { return Json{}; });
  log.record(1, -1e-13, [] { return Json{}; });
  EXPECT_FALSE(r.failed());
  log.record(2, -1e-3, [] { return Json{{"x", 1}}; });
  EXPECT_TRUE(r.failed());
  EXPECT_EQ(r.violations.front().seed, derive_seed(42, 2));
  log.record(3, std::numeric_limits<double>::quiet_NaN(), [] { return Json{}; });
  EXPECT_EQ(r.violation_count, 2u);
  EXPECT_TRUE(std::isinf(r.min_margin));
  log.record_equal(4, 1e-9, 1e-10, [] { return Json{}; });
  EXPECT_EQ(r.violation_count, 3u);
}

TEST(Falsifiable, DoesNotFailExitStatus) {
  const auto r = run_check("two-isometry-omega", small());
  EXPECT_GT(r.violation_count, 0u);
  EXPECT_FALSE(r.failed());
  EXPECT_EQ(exit_status({r}), 0);
}

TEST(Checks, SmallConfigGreen) {
  for (const char* id : {"power-inequality", "norm-equivalence", "mccarthy", "mixed-schwarz", "omega-abs-p",
                         "sqrt-sum-equality", "isometry-multiplicativity", "ber-norm-tensor", "ber-sqrt",
                         "main-hardy-p", "berezin-hardy-p2", "improved-berezin", "alpha-interpolated",
                         "convex-berezin", "scalar-hardy", "examples-golden", "hardy-p2", "hardy-n3"}) {
    const auto r = run_check(id, small());
    EXPECT_EQ(r.violation_count, 0u) << id << " " << to_json(r).dump();
    EXPECT_GE(r.min_margin, -kMarginTol) << id;
  }
}

TEST(ConstantsTable, SortedWithBestFlag) {
  const auto rows = constants_table();
  ASSERT_FALSE(rows.empty());
  std::size_t best = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i > 0) {
      EXPECT_LE(rows[i - 1].value, rows[i].value);
    }
    best += rows[i].best ? 1 : 0;
  }
  EXPECT_EQ(best, 1u);
  EXPECT_TRUE(rows.front().best);
  auto find = [&](const std::string& k) {
    for (const auto& r : rows)
      if (r.key == k) return r.value;
    return -1.0;
  };
  EXPECT_EQ(find("improved"), 1.593852);
  EXPECT_NEAR(find("hilbert-hardy"), 6.7039, 1e-4);
  EXPECT_NEAR(find("garayev-2"), 24.0 * std::numbers::pi / 17.0, 1e-15);
  EXPECT_NEAR(find("main-p2-n2"), 2.234801505594, 1e-10);
  EXPECT_NEAR(find("alpha-pq-p2"), 128.0 / 13.0, 1e-15);
  EXPECT_LT(find("improved"), find("main-p2-n2"));
  EXPECT_LT(find("main-p2-n2"), find("alpha-pq-p2"));
}
