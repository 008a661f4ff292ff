#include <benchmark/benchmark.h>

#include "freemin/descent.hpp"
#include "freemin/experiment.hpp"
#include "freemin/normalize.hpp"

namespace {

using namespace freemin;

void BM_SolveC(benchmark::State& state) {
  const int n = 1024;
  const bool shifted = state.range(0) != 0;
  MetricMode mode =
      shifted ? MetricMode::shifted(std::vector<double>(n, 100.0)) : MetricMode::plain();
  Reparameterization r(DivergenceKind::hellinger, mode, ReferenceMeasure::uniform(n));
  Density p = random_density(n, 3);
  std::vector<double> g = r.phi(p);
  for (double& x : g) x -= 0.25;
  for (auto _ : state) {
    NormalizationResult res = solve_c(r, g);
    benchmark::DoNotOptimize(res.c);
  }
}
BENCHMARK(BM_SolveC)->Arg(0)->Arg(1);

void BM_PresetStep(benchmark::State& state) {
  const char* names[] = {"kl_nonpd", "kl_pd", "rkl_nonpd", "h_pd"};
  ExperimentConfig config = parse_config(preset_text(names[state.range(0)]));
  ProblemSpec spec = build_problem(config);
  IterateState s = initial_state(spec, initial_density(config));
  s = step(spec, s);  // move off the random start
  for (auto _ : state) {
    IterateState next = step(spec, s);
    benchmark::DoNotOptimize(next.p.values().data());
  }
}
BENCHMARK(BM_PresetStep)->DenseRange(0, 3)->Unit(benchmark::kMicrosecond);

void BM_FreeEnergy(benchmark::State& state) {
  ExperimentConfig config = parse_config(preset_text("kl_nonpd"));
  ProblemSpec spec = build_problem(config);
  Density p = initial_density(config);
  for (auto _ : state) {
    benchmark::DoNotOptimize(free_energy(spec, p));
  }
}
BENCHMARK(BM_FreeEnergy);

}  // namespace
