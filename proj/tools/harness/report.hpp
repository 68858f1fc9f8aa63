#pragma once

// Verification report: one record per named check holding the worst value
// seen across every evaluation, the pinned threshold and the verdict.
//
// JSON schema "riesz.report/1":
//   {
//     "schema": "riesz.report/1",
//     "suite": "<check-iso|mms>",
//     "config": { ... suite-specific, echoes the inputs ... },
//     "data": { ... optional suite-specific results ... },
//     "checks": [ { "name", "worstResidual", "threshold",
//                   "comparison": "<=" | ">=", "gating", "evaluations",
//                   "pass" } ],
//     "pass": bool,           // every gating record passes
//     "elapsedSeconds": real  // the only non-reproducible field
//   }

#include <json.hpp>

#include <cstddef>
#include <string>
#include <vector>

namespace riesz::harness {

enum class Comparison { AtMost, AtLeast };

struct CheckRecord {
  std::string name;
  double worstResidual = 0.0;
  double threshold = 0.0;
  Comparison comparison = Comparison::AtMost;
  /// Non-gating records are diagnostics and never fail the suite.
  bool gating = true;
  std::size_t evaluations = 0;

  bool pass() const;
  /// Folds one more observation into the worst value.
  void observe(double value);
};

class Report {
 public:
  explicit Report(std::string suite) : suite_(std::move(suite)) {}

  /// Adds or returns the record with this name. The first call fixes the
  /// threshold, comparison and gating.
  CheckRecord& record(const std::string& name, double threshold,
                      Comparison comparison = Comparison::AtMost, bool gating = true);
  const CheckRecord* find(const std::string& name) const;
  const std::vector<CheckRecord>& records() const noexcept { return records_; }

  nlohmann::json& config() noexcept { return config_; }
  nlohmann::json& data() noexcept { return data_; }
  void setElapsed(double seconds) noexcept { elapsed_ = seconds; }

  bool pass() const;
  nlohmann::json toJson(bool includeTiming = true) const;
  std::string dump(bool includeTiming = true) const;

 private:
  std::string suite_;
  std::vector<CheckRecord> records_;
  nlohmann::json config_ = nlohmann::json::object();
  nlohmann::json data_ = nlohmann::json::object();
  double elapsed_ = 0.0;
};

/// Writes the report JSON to `path`; throws riesz::Error on I/O failure.
void writeReport(const Report& report, const std::string& path);

}  // namespace riesz::harness
