#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "opineq/core/random.hpp"
#include "opineq/io/json.hpp"

namespace opineq::harness {

using io::Json;

/// Margins below -kMarginTol count as violations.
inline constexpr double kMarginTol = 1e-12;

/// Violations kept verbatim in a report; the rest are only counted.
inline constexpr std::size_t kMaxListedViolations = 20;

enum class Severity { assert_, falsifiable };

inline const char* to_string(Severity s) { return s == Severity::assert_ ? "assert" : "falsifiable"; }

struct CheckConfig {
  std::uint64_t seed = 42;
  std::size_t instances = 500;
  std::size_t dims = 8;
  bool timing = false;
};

struct Violation {
  std::size_t instance = 0;
  std::uint64_t seed = 0;
  double margin = 0.0;
  Json values;
};

struct CheckReport {
  std::string id;
  Severity severity = Severity::assert_;
  std::string statement;
  Json config = Json::object();
  std::uint64_t seed = 0;
  std::size_t instances = 0;
  double min_margin = std::numeric_limits<double>::infinity();
  std::vector<Violation> violations;
  std::size_t violation_count = 0;
  Json stats = Json::object();
  std::optional<double> wall_ms;

  bool failed() const { return severity == Severity::assert_ && violation_count > 0; }
};

/// Accumulates margins of one check. Every call to record() is one evaluated
/// inequality; `values` is only materialized for violations.
class MarginLog {
 public:
  explicit MarginLog(CheckReport& r) : r_(r) {}

  void record(std::size_t instance, double margin, const std::function<Json()>& values) {
    if (!(margin == margin)) margin = -std::numeric_limits<double>::infinity();
    r_.min_margin = std::min(r_.min_margin, margin);
    if (margin >= -kMarginTol) return;
    ++r_.violation_count;
    if (r_.violations.size() < kMaxListedViolations)
      r_.violations.push_back({instance, derive_seed(r_.seed, instance), margin, values()});
  }

  /// Equality-type claims: |deviation| <= slack, recorded as slack - |deviation|.
  void record_equal(std::size_t instance, double deviation, double slack, const std::function<Json()>& values) {
    record(instance, slack - std::abs(deviation), values);
  }

 private:
  CheckReport& r_;
};

inline Json to_json(const CheckReport& r) {
  Json j;
  j["id"] = r.id;
  j["config"] = r.config;
  j["seed"] = r.seed;
  j["instances"] = r.instances;
  j["min_margin"] = std::isfinite(r.min_margin) ? Json(r.min_margin) : Json(nullptr);
  Json v = Json::array();
  for (const auto& x : r.violations) {
    Json e;
    e["instance"] = x.instance;
    e["seed"] = x.seed;
    e["margin"] = std::isfinite(x.margin) ? Json(x.margin) : Json(nullptr);
    e["values"] = x.values;
    v.push_back(std::move(e));
  }
  j["violations"] = std::move(v);
  j["wall_ms"] = r.wall_ms ? Json(*r.wall_ms) : Json(nullptr);
  j["severity"] = to_string(r.severity);
  j["statement"] = r.statement;
  j["violation_count"] = r.violation_count;
  j["stats"] = r.stats;
  return j;
}

inline Json to_json(const std::vector<CheckReport>& reports, const CheckConfig& cfg) {
  Json j;
  j["seed"] = cfg.seed;
  j["instances"] = cfg.instances;
  j["dims"] = cfg.dims;
  std::size_t failed = 0, falsified = 0;
  Json list = Json::array();
  for (const auto& r : reports) {
    if (r.failed()) ++failed;
    if (r.severity == Severity::falsifiable && r.violation_count > 0) ++falsified;
    list.push_back(to_json(r));
  }
  j["assert_failures"] = failed;
  j["falsified"] = falsified;
  j["reports"] = std::move(list);
  return j;
}

}  // namespace opineq::harness
