#include "report.hpp"

#include "riesz/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

namespace riesz::harness {

bool CheckRecord::pass() const {
  if (!std::isfinite(worstResidual)) {
    return false;
  }
  return comparison == Comparison::AtMost ? worstResidual <= threshold
                                          : worstResidual >= threshold;
}

void CheckRecord::observe(double value) {
  if (!std::isfinite(value)) {
    worstResidual = std::numeric_limits<double>::infinity();
  } else if (evaluations == 0) {
    worstResidual = value;
  } else if (comparison == Comparison::AtMost) {
    worstResidual = std::max(worstResidual, value);
  } else {
    worstResidual = std::min(worstResidual, value);
  }
  ++evaluations;
}

CheckRecord& Report::record(const std::string& name, double threshold, Comparison comparison,
                            bool gating) {
  const auto it = std::find_if(records_.begin(), records_.end(),
                               [&](const CheckRecord& r) { return r.name == name; });
  if (it != records_.end()) {
    return *it;
  }
  records_.push_back({name, 0.0, threshold, comparison, gating, 0});
  return records_.back();
}

const CheckRecord* Report::find(const std::string& name) const {
  const auto it = std::find_if(records_.begin(), records_.end(),
                               [&](const CheckRecord& r) { return r.name == name; });
  return it == records_.end() ? nullptr : &*it;
}

bool Report::pass() const {
  return std::all_of(records_.begin(), records_.end(),
                     [](const CheckRecord& r) { return !r.gating || r.pass(); });
}

nlohmann::json Report::toJson(bool includeTiming) const {
  nlohmann::json checks = nlohmann::json::array();
  for (const CheckRecord& r : records_) {
    // Infinity is not representable in JSON; a failed evaluation is null.
    nlohmann::json worst = std::isfinite(r.worstResidual) ? nlohmann::json(r.worstResidual)
                                                          : nlohmann::json(nullptr);
    checks.push_back({{"name", r.name},
                      {"worstResidual", worst},
                      {"threshold", r.threshold},
                      {"comparison", r.comparison == Comparison::AtMost ? "<=" : ">="},
                      {"gating", r.gating},
                      {"evaluations", r.evaluations},
                      {"pass", r.pass()}});
  }
  nlohmann::json j = {{"schema", "riesz.report/1"},
                      {"suite", suite_},
                      {"config", config_},
                      {"data", data_},
                      {"checks", checks},
                      {"pass", pass()}};
  if (includeTiming) {
    j["elapsedSeconds"] = elapsed_;
  }
  return j;
}

std::string Report::dump(bool includeTiming) const { return toJson(includeTiming).dump(2) + "\n"; }

void writeReport(const Report& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw Error("cannot write report '" + path + "'");
  }
  out << report.dump();
  out.flush();
  if (!out) {
    throw Error("failed writing report '" + path + "'");
  }
}

}  // namespace riesz::harness
