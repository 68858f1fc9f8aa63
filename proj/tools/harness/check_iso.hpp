#pragma once

#include "report.hpp"

#include "riesz/operator.hpp"
#include "riesz/random.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace riesz::harness {

struct RunConfig {
  std::uint64_t seed = 42;
  std::size_t trials = 10;
  std::vector<std::pair<Index, Index>> dims{{20, 30}};
  double tol = kDefaultTol;
  std::string reportPath;
  /// 0 means one worker per hardware thread.
  unsigned threads = 0;
};

/// Throws riesz::InvalidInput for trials == 0, tol <= 0 or empty dims.
void validate(const RunConfig& cfg);

/// Parses "RxC[,RxC...]".
std::vector<std::pair<Index, Index>> parseDims(const std::string& text);

enum class CaseKind {
  Gaussian,
  Zero,
  Identity,
  IdentityPadded,
  DuplicatedColumns,
  NearRankDeficient,
};

std::string caseName(CaseKind kind);

/// Pinned thresholds for every check evaluated by the suite.
namespace thresholds {
inline constexpr double kIsoNorm = 1e-10;
inline constexpr double kCosetMapNorm = 1e-10;
inline constexpr double kCompositeNorm = 1e-8;
inline constexpr double kRoundtrip = 1e-8;
inline constexpr double kInversePaths = 1e-8;
inline constexpr double kPrincipalAngle = 1e-8;
inline constexpr double kJFactorization = 1e-12;
inline constexpr double kInjectivity = 1e-8;
inline constexpr double kEq2Slack = 1e-10;
inline constexpr double kLinearity = 1e-12;
inline constexpr double kRepresentative = 1e-12;
inline constexpr double kQuotientNorm = 1e-12;
inline constexpr double kProjectorCase = 1e-10;
inline constexpr double kProjectorStructure = 1e-12;
inline constexpr double kNormTranspose = 1e-10;
}  // namespace thresholds

/// Observations for one operator, in a fixed order. Missing entries mean
/// the check does not apply to that operator.
struct CaseResult {
  CaseKind kind = CaseKind::Gaussian;
  Index rows = 0;
  Index cols = 0;
  std::vector<std::pair<std::string, double>> metrics;
};

/// Evaluates the full invariant list on one operator. `expectedRank` is
/// checked when provided. Every random draw comes from `rng`.
CaseResult evaluateOperator(const Operator& a, CaseKind kind, std::optional<std::size_t> expectedRank,
                            double tol, Rng& rng);

/// Builds every case for the configuration, evaluates them (concurrently
/// when threads != 1) and assembles the report in deterministic order.
Report runCheckIso(const RunConfig& cfg);

}  // namespace riesz::harness
