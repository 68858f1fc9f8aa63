#include "mms.hpp"

#include "riesz/errors.hpp"

#include <chrono>
#include <cmath>
#include <string>

namespace riesz::harness {

void validate(const MmsConfig& cfg) {
  if (cfg.nList.empty()) {
    throw InvalidInput("mms needs at least one resolution");
  }
  for (std::size_t i = 0; i < cfg.nList.size(); ++i) {
    if (cfg.nList[i] < 4) {
      throw InvalidInput("mms resolutions must be at least 4");
    }
    if (i > 0 && cfg.nList[i] <= cfg.nList[i - 1]) {
      throw InvalidInput("mms resolutions must be strictly increasing");
    }
  }
}

Grid mmsGrid(MmsCase c, Index n, const std::array<double, 3>& lengths) {
  const int axes = axisCount(c);
  return Grid(n, axes >= 2 ? n : 1, axes >= 3 ? n : 1, lengths[0], lengths[1], lengths[2]);
}

MmsPoint runMmsPoint(MmsCase c, Index n, const std::array<double, 3>& lengths,
                     const SolverOptions& solver) {
  const Grid grid = mmsGrid(c, n, lengths);
  const Manufactured m = manufactured(grid, c);
  const DivergenceSystem sys(grid, solver);
  const PressureSolution sol = recoverPressure(sys, m.force);
  const ScalarField diff(grid, sol.pressure.values() - m.pressure.values());
  return {n, grid.cellCount(), diff.l2Norm(), sol.incompatibility, sol.path, sol.iterations};
}

Report runMms(const MmsConfig& cfg) {
  validate(cfg);
  const auto start = std::chrono::steady_clock::now();

  std::vector<MmsPoint> points;
  for (Index n : cfg.nList) {
    points.push_back(runMmsPoint(cfg.mmsCase, n, cfg.lengths, cfg.solver));
  }

  Report report("mms");
  nlohmann::json table = nlohmann::json::array();
  for (const MmsPoint& p : points) {
    table.push_back({{"n", p.n},
                     {"cells", p.cells},
                     {"l2Error", p.error},
                     {"incompatibility", p.incompatibility},
                     {"path", std::string(toString(p.path))},
                     {"iterations", p.iterations}});
  }
  nlohmann::json orders = nlohmann::json::array();
  const double minOrder = std::log2(kMmsRatioPerDoubling);
  for (std::size_t i = 1; i < points.size(); ++i) {
    const double ratio = points[i - 1].error / points[i].error;
    const double refinement = double(points[i].n) / double(points[i - 1].n);
    const double order = std::log(ratio) / std::log(refinement);
    orders.push_back({{"from", points[i - 1].n}, {"to", points[i].n}, {"ratio", ratio}, {"order", order}});
    const std::string name =
        "order_" + std::to_string(points[i - 1].n) + "_" + std::to_string(points[i].n);
    report.record(name, minOrder, Comparison::AtLeast).observe(std::isfinite(order) ? order : 0.0);
  }

  report.config() = {{"case", std::string(toString(cfg.mmsCase))},
                     {"n", cfg.nList},
                     {"lengths", cfg.lengths},
                     {"denseCellLimit", cfg.solver.denseCellLimit}};
  report.data() = {{"errors", table}, {"orders", orders}};
  report.setElapsed(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  return report;
}

}  // namespace riesz::harness
