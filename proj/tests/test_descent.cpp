#include <doctest.h>

#include <cmath>
#include <sstream>

#include "freemin/descent.hpp"
#include "freemin/errors.hpp"
#include "support.hpp"

using namespace freemin;

namespace {

const DivergenceKind kKinds[] = {DivergenceKind::kl, DivergenceKind::reverse_kl,
                                 DivergenceKind::hellinger};

ProblemSpec make_spec(DivergenceKind kind, int n, ReferenceMeasure mu, Potential v,
                      InteractionKernel w, bool shifted, double dt = 1.0, bool periodic = false) {
  MetricMode mode = shifted ? MetricMode::shifted(w.diagonal()) : MetricMode::plain();
  return ProblemSpec(kind, make_uniform_grid(n, periodic), std::move(mu), std::move(v),
                     std::move(w), std::move(mode), dt);
}

ProblemSpec free_spec(DivergenceKind kind, int n, ReferenceMeasure mu) {
  return make_spec(kind, n, std::move(mu), Potential::zero(n), InteractionKernel::zero(n), false);
}

}  // namespace

TEST_SUITE("descent") {

TEST_CASE("drift vanishes at the entropy fixed point") {
  // KL with uniform mu, V = 0, W = 0: the absorbed potential is the
  // constant ln n, so at the uniform density g + V_eff = 0 exactly.
  ProblemSpec spec = free_spec(DivergenceKind::kl, 4, ReferenceMeasure::uniform(4));
  Density uniform = Density::from_values(std::vector<double>(4, 0.25));
  IterateState state = initial_state(spec, uniform);
  for (double d : drift(spec, state)) CHECK(std::abs(d) <= 1e-12);
}

TEST_CASE("shifted mode cancels the kernel diagonal in the drift") {
  InteractionKernel tri = make_tridiagonal_kernel(make_uniform_grid(4, true), 2.0);
  ProblemSpec spec = make_spec(DivergenceKind::kl, 4, ReferenceMeasure::uniform(4),
                               Potential::zero(4), tri, true, 1.0, true);
  Density uniform = Density::from_values(std::vector<double>(4, 0.25));
  IterateState state = initial_state(spec, uniform);
  std::vector<double> d = drift(spec, state);
  // (W - alpha) p keeps only the off-diagonal couplings: 2 * (alpha/2) * 0.25.
  for (int i = 0; i < 4; ++i) {
    double base = state.g[static_cast<size_t>(i)] + std::log(4.0);
    CHECK(d[static_cast<size_t>(i)] - base == doctest::Approx(0.5).epsilon(1e-13));
  }
}

TEST_CASE("drift equals the exact gradient up to the KL constant") {
  test::Rng rng(61);
  for (DivergenceKind kind : kKinds) {
    for (bool shifted : {false, true}) {
      int n = 4;
      InteractionKernel w = shifted
                                ? make_tridiagonal_kernel(make_uniform_grid(n, true), 3.0)
                                : test::random_symmetric_kernel(rng, n);
      ProblemSpec spec = make_spec(kind, n, test::random_measure(rng, n),
                                   test::random_potential(rng, n), w, shifted, 1.0, shifted);
      Density p = test::random_interior_density(rng, n);
      IterateState state = initial_state(spec, p);
      std::vector<double> d = drift(spec, state);
      std::vector<double> g = gradient(spec, p);
      double offset = kind == DivergenceKind::kl ? 1.0 : 0.0;
      for (int i = 0; i < n; ++i) {
        CHECK(std::abs(d[static_cast<size_t>(i)] - (g[static_cast<size_t>(i)] - offset)) < 1e-12);
      }
    }
  }
}

TEST_CASE("one explicit Euler step solves the interaction-free problem") {
  test::Rng rng(62);
  Density p0 = test::random_interior_density(rng, 6);

  ProblemSpec kl = free_spec(DivergenceKind::kl, 6, ReferenceMeasure::uniform(6));
  IterateState after = step(kl, initial_state(kl, p0));
  CHECK(after.k == 1);
  for (int i = 0; i < 6; ++i) {
    CHECK(std::abs(after.p[i] - 1.0 / 6) <= 1e-12);
    CHECK(after.g[static_cast<size_t>(i)] == doctest::Approx(-std::log(6.0)).epsilon(1e-12));
  }

  for (DivergenceKind kind : {DivergenceKind::reverse_kl, DivergenceKind::hellinger}) {
    ReferenceMeasure mu = test::random_measure(rng, 6);
    ProblemSpec spec = free_spec(kind, 6, mu);
    IterateState one = step(spec, initial_state(spec, p0));
    CHECK(test::max_abs_diff(one.p.values(), mu.values()) <= 1e-12);
  }
}

TEST_CASE("run converges in one step without interaction and stays flat") {
  test::Rng rng(63);
  for (DivergenceKind kind : kKinds) {
    ProblemSpec spec = free_spec(kind, 5, test::random_measure(rng, 5));
    RunResult result = run(spec, test::random_interior_density(rng, 5), 10);
    REQUIRE(result.trace.energies.size() == 11);
    for (size_t k = 1; k < result.trace.energies.size(); ++k) {
      CHECK(result.trace.errors[k] <= 1e-12);
      CHECK(std::abs(result.trace.energies[k] - result.trace.energies[1]) <= 1e-12);
    }
    CHECK(result.trace.errors[0] >= -1e-12);
  }
}

TEST_CASE("early exit on energy stagnation") {
  ProblemSpec spec = free_spec(DivergenceKind::kl, 5, ReferenceMeasure::uniform(5));
  RunResult result = run(spec, random_density(5, 3), 50, 1e-10);
  CHECK(result.trace.energies.size() < 51);
  CHECK(result.state.k == static_cast<int>(result.trace.energies.size()) - 1);
}

TEST_CASE("iterates preserve the simplex") {
  test::Rng rng(64);
  InteractionKernel w = test::random_symmetric_kernel(rng, 8, 0.5);
  ProblemSpec spec = make_spec(DivergenceKind::kl, 8, test::random_measure(rng, 8),
                               test::random_potential(rng, 8), w, false);
  IterateState state = initial_state(spec, test::random_interior_density(rng, 8));
  for (int k = 0; k < 30; ++k) {
    state = step(spec, state);
    double sum = 0.0;
    for (int i = 0; i < 8; ++i) {
      CHECK(state.p[i] > 0.0);
      sum += state.p[i];
    }
    CHECK(std::abs(sum - 1.0) <= 1e-12);
  }
}

TEST_CASE("energy descends on a small attractive instance") {
  Grid grid = make_uniform_grid(64, false);
  ProblemSpec spec(DivergenceKind::kl, grid, ReferenceMeasure::uniform(64), Potential::zero(64),
                   make_log_kernel(grid, 1.5, 1e-6), MetricMode::plain(), 1.0);
  RunResult result = run(spec, random_density(64, 0), 60);
  for (size_t k = 1; k < result.trace.energies.size(); ++k) {
    CHECK(result.trace.energies[k] <= result.trace.energies[k - 1] + 1e-12);
  }
  CHECK(result.trace.errors.back() < 1e-8);
}

TEST_CASE("baseline multiplicative weights") {
  // One step against the analytic update for E = sum p ln p + <V, p>.
  Potential v = Potential::from_values({0.0, std::log(2.0)});
  auto grad = [&](const Density& p) {
    std::vector<double> g(2);
    for (int i = 0; i < 2; ++i) g[static_cast<size_t>(i)] = std::log(p[i]) + 1.0 + v[i];
    return g;
  };
  Density p1 = baseline_md(grad, Density::from_values({0.5, 0.5}), 1.0, 1);
  CHECK(p1[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(p1[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

  // Zero gradient leaves the density untouched.
  auto zero_grad = [](const Density& p) { return std::vector<double>(p.values().size(), 0.0); };
  Density p0 = Density::from_values({0.3, 0.7});
  Density same = baseline_md(zero_grad, p0, 1.0, 5);
  CHECK(test::max_abs_diff(same.values(), p0.values()) < 1e-15);

  auto bad_grad = [](const Density& p) {
    return std::vector<double>(p.values().size(), std::nan(""));
  };
  CHECK_THROWS_AS(baseline_md(bad_grad, p0, 1.0, 1), SolverError);
}

TEST_CASE("baseline equivalence with the KL plain scheme") {
  test::Rng rng(65);
  for (int instance = 0; instance < 3; ++instance) {
    int n = 8;
    ProblemSpec spec = make_spec(DivergenceKind::kl, n, test::random_measure(rng, n),
                                 test::random_potential(rng, n),
                                 test::random_symmetric_kernel(rng, n, 0.5), false);
    auto grad = [&](const Density& p) { return gradient(spec, p); };
    Density p0 = test::random_interior_density(rng, n);

    IterateState state = initial_state(spec, p0);
    Density baseline = p0;
    for (int k = 0; k < 20; ++k) {
      state = step(spec, state);
      baseline = baseline_md(grad, baseline, spec.dt(), 1);
      CHECK(test::max_abs_diff(state.p.values(), baseline.values()) < 1e-12);
    }
  }
}

TEST_CASE("stationarity residual") {
  ProblemSpec kl = free_spec(DivergenceKind::kl, 4, ReferenceMeasure::uniform(4));
  CHECK(stationarity_residual(kl, Density::from_values(std::vector<double>(4, 0.25))) <= 1e-12);

  test::Rng rng(66);
  ReferenceMeasure mu = test::random_measure(rng, 4);
  ProblemSpec rkl = free_spec(DivergenceKind::reverse_kl, 4, mu);
  CHECK(stationarity_residual(rkl, Density::from_values(mu.values())) <= 1e-12);
}

TEST_CASE("a fixed point of step is a stationary point") {
  test::Rng rng(67);
  InteractionKernel tri = make_tridiagonal_kernel(make_uniform_grid(6, true), 4.0);
  ProblemSpec spec = make_spec(DivergenceKind::kl, 6, test::random_measure(rng, 6),
                               test::random_potential(rng, 6), tri, true, 1.0, true);
  RunResult result = run(spec, test::random_interior_density(rng, 6), 300);
  IterateState again = step(spec, result.state);
  CHECK(test::max_abs_diff(again.g, result.state.g) < 1e-12);
  CHECK(stationarity_residual(spec, result.state.p) <= 1e-8);
}

TEST_CASE("runs are deterministic") {
  Grid grid = make_uniform_grid(32, false);
  ProblemSpec spec(DivergenceKind::hellinger, grid, make_power_measure(grid, 4.0),
                   Potential::zero(32), make_log_kernel(grid, 1.0 / 3.0, 1e-6),
                   MetricMode::plain(), 1.0);
  RunResult a = run(spec, random_density(32, 17), 40);
  RunResult b = run(spec, random_density(32, 17), 40);
  CHECK(a.trace.energies == b.trace.energies);
  CHECK(a.trace.errors == b.trace.errors);
  CHECK(a.state.p.values() == b.state.p.values());
}

TEST_CASE("trace csv round trip") {
  EnergyTrace trace;
  trace.energies = {3.0, 2.5, 2.5000000001};
  trace.reference_energy = 2.0;
  trace.errors = {1.0, 0.5, 0.5000000001};

  std::ostringstream out;
  write_trace_csv(out, trace);
  CHECK(out.str().substr(0, 18) == "iter,energy,error\n");
  CHECK(out.str().find("0,3,1\n") != std::string::npos);

  std::istringstream in(out.str());
  EnergyTrace back = read_trace_csv(in);
  CHECK(back.energies == trace.energies);
  CHECK(back.errors == trace.errors);
  CHECK(back.reference_energy == doctest::Approx(2.0).epsilon(1e-15));

  std::istringstream bad("wrong,header\n1,2,3\n");
  CHECK_THROWS_AS(read_trace_csv(bad), ConfigError);
}

}  // TEST_SUITE
