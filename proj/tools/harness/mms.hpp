#pragma once

#include "report.hpp"

#include "riesz/pressure.hpp"

#include <array>
#include <vector>

namespace riesz::harness {

struct MmsConfig {
  MmsCase mmsCase = MmsCase::CosX;
  std::vector<Index> nList{8, 16, 32};
  std::array<double, 3> lengths{1.0, 1.0, 1.0};
  SolverOptions solver;
};

/// Successive L2-error ratios must reach this per mesh doubling.
inline constexpr double kMmsRatioPerDoubling = 3.5;

/// Throws riesz::InvalidInput unless nList is strictly increasing and every
/// entry is at least 4.
void validate(const MmsConfig& cfg);

/// n cells along every axis the case uses, one cell along the others.
Grid mmsGrid(MmsCase c, Index n, const std::array<double, 3>& lengths);

struct MmsPoint {
  Index n = 0;
  Index cells = 0;
  double error = 0.0;  // discrete L2 norm of p - p_exact
  double incompatibility = 0.0;
  SolvePath path = SolvePath::Dense;
  Index iterations = 0;
};

MmsPoint runMmsPoint(MmsCase c, Index n, const std::array<double, 3>& lengths,
                     const SolverOptions& solver);

/// Error table and observed orders; one gating record per successive pair.
Report runMms(const MmsConfig& cfg);

}  // namespace riesz::harness
