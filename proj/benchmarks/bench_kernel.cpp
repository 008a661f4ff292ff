#include <benchmark/benchmark.h>

#include "freemin/grid.hpp"
#include "freemin/kernel.hpp"

namespace {

using namespace freemin;

void BM_LogKernelApply(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Grid grid = make_uniform_grid(n, false);
  InteractionKernel w = make_log_kernel(grid, 1.5, 1e-6);
  Density p = random_density(n, 0);
  std::vector<double> out(static_cast<size_t>(n));
  for (auto _ : state) {
    w.apply(p.values(), out);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_LogKernelApply)->Arg(256)->Arg(1024);

void BM_TridiagonalApply(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Grid grid = make_uniform_grid(n, true);
  InteractionKernel w = make_tridiagonal_kernel(grid, 100.0);
  Density p = random_density(n, 0);
  std::vector<double> out(static_cast<size_t>(n));
  for (auto _ : state) {
    w.apply(p.values(), out);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_TridiagonalApply)->Arg(1024)->Arg(8192);

void BM_LogKernelBuild(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Grid grid = make_uniform_grid(n, false);
  for (auto _ : state) {
    InteractionKernel w = make_log_kernel(grid, 1.5, 1e-6);
    benchmark::DoNotOptimize(w.size());
  }
}
BENCHMARK(BM_LogKernelBuild)->Arg(1024);

}  // namespace
