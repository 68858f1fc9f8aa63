#include "riesz/pressure.hpp"
#include "riesz/random.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace riesz;

void BM_BuildDivergence(benchmark::State& state) {
  const Index n = state.range(0);
  for (auto _ : state) {
    DivergenceSystem sys(Grid(n, n, n));
    benchmark::DoNotOptimize(sys.velocityDim());
  }
}
BENCHMARK(BM_BuildDivergence)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

// Same grid through both solvers; 8^3 is the largest cube on the dense path.
void BM_RecoverPressure(benchmark::State& state) {
  const Index n = state.range(0);
  const auto path = state.range(1) == 0 ? SolvePath::Dense : SolvePath::ConjugateGradient;
  const DivergenceSystem sys(Grid(n, n, n));
  Rng rng(4);
  const VectorField g = sys.velocityField(rng.gaussianVector(sys.velocityDim()));
  for (auto _ : state) {
    PressureSolution p = recoverPressure(sys, g, path);
    benchmark::DoNotOptimize(p.pressure.values().data());
  }
  state.SetLabel(std::string(toString(path)));
}
BENCHMARK(BM_RecoverPressure)->Args({4, 0})->Args({4, 1})->Args({8, 0})->Args({8, 1})
    ->Unit(benchmark::kMillisecond);

void BM_RecoverPressureCg(benchmark::State& state) {
  const Index n = state.range(0);
  const DivergenceSystem sys(Grid(n, n, n));
  const Manufactured m = manufactured(sys.grid(), MmsCase::CosXCosYCosZ);
  Rng rng(5);
  VectorField g = m.force;
  g.component(Axis::X) += sys.velocityField(rng.gaussianVector(sys.velocityDim())).component(Axis::X);
  for (auto _ : state) {
    PressureSolution p = recoverPressure(sys, g);
    benchmark::DoNotOptimize(p.pressure.values().data());
    state.counters["iterations"] = static_cast<double>(p.iterations);
  }
}
BENCHMARK(BM_RecoverPressureCg)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace
