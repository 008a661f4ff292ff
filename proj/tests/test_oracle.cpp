#include <doctest.h>

#include <cmath>

#include "freemin/descent.hpp"
#include "freemin/oracle.hpp"
#include "support.hpp"

using namespace freemin;

namespace {

ProblemSpec make_spec(DivergenceKind kind, int n, ReferenceMeasure mu, Potential v,
                      InteractionKernel w, bool shifted, bool periodic = false) {
  MetricMode mode = shifted ? MetricMode::shifted(w.diagonal()) : MetricMode::plain();
  return ProblemSpec(kind, make_uniform_grid(n, periodic), std::move(mu), std::move(v),
                     std::move(w), std::move(mode), 1.0);
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("finite differences recover analytic gradients") {
  ProblemSpec kl = make_spec(DivergenceKind::kl, 2, ReferenceMeasure::uniform(2),
                             Potential::zero(2), InteractionKernel::zero(2), false);
  Density half = Density::from_values({0.5, 0.5});
  for (double g : fd_gradient(kl, half, 1e-5)) CHECK(g == doctest::Approx(1.0).epsilon(1e-9));

  ProblemSpec h = make_spec(DivergenceKind::hellinger, 2,
                            ReferenceMeasure::from_values({0.25, 0.75}), Potential::zero(2),
                            InteractionKernel::zero(2), false);
  std::vector<double> fd = fd_gradient(h, half, 1e-6);
  CHECK(fd[0] == doctest::Approx(-std::sqrt(0.5)).epsilon(1e-7));
  CHECK(fd[1] == doctest::Approx(-std::sqrt(1.5)).epsilon(1e-7));

  CHECK_THROWS_AS(fd_gradient(kl, half, 0.3), std::invalid_argument);
}

TEST_CASE("bisection oracle closed-form instances") {
  // Symmetric two-point instances force p = (1/2, 1/2), so c = phi(1/2).
  Reparameterization kl_shifted(DivergenceKind::kl, MetricMode::shifted({2.0, 2.0}),
                                ReferenceMeasure::uniform(2));
  std::vector<double> zero2{0.0, 0.0};
  CHECK(bisect_c(kl_shifted, zero2, 1e-14) ==
        doctest::Approx(std::log(0.5) + 1.0).epsilon(1e-12));

  Reparameterization h_shifted(DivergenceKind::hellinger, MetricMode::shifted({100.0, 100.0}),
                               ReferenceMeasure::uniform(2));
  CHECK(bisect_c(h_shifted, zero2, 1e-14) == doctest::Approx(49.0).epsilon(1e-12));

  Reparameterization rkl(DivergenceKind::reverse_kl, MetricMode::plain(),
                         ReferenceMeasure::from_values({0.25, 0.75}));
  std::vector<double> g{-1.0, -2.0};
  double c = bisect_c(rkl, g, 1e-14);
  // mass(c) = 0.25/(1 - c) + 0.75/(2 - c) must equal 1
  CHECK(0.25 / (1.0 - c) + 0.75 / (2.0 - c) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("reference minimizer recovers closed-form minimizers") {
  ProblemSpec kl = make_spec(DivergenceKind::kl, 4, ReferenceMeasure::uniform(4),
                             Potential::zero(4), InteractionKernel::zero(4), false);
  Density m = reference_minimizer(kl, 1e-10);
  for (int i = 0; i < 4; ++i) CHECK(std::abs(m[i] - 0.25) < 1e-8);

  test::Rng rng(71);
  ReferenceMeasure mu = test::random_measure(rng, 4);
  ProblemSpec rkl = make_spec(DivergenceKind::reverse_kl, 4, mu, Potential::zero(4),
                              InteractionKernel::zero(4), false);
  CHECK(test::max_abs_diff(reference_minimizer(rkl, 1e-10).values(), mu.values()) < 1e-8);
}

TEST_CASE("reference minimizer agrees with the descent scheme") {
  test::Rng rng(72);
  InteractionKernel tri = make_tridiagonal_kernel(make_uniform_grid(6, true), 10.0);
  ProblemSpec spec = make_spec(DivergenceKind::kl, 6, test::random_measure(rng, 6),
                               test::random_potential(rng, 6), tri, true, true);
  Density via_run = run(spec, test::random_interior_density(rng, 6), 400).state.p;
  Density via_pgd = reference_minimizer(spec, 1e-10);
  CHECK(test::max_abs_diff(via_run.values(), via_pgd.values()) < 1e-6);
}

TEST_CASE("reference minimizer rejects unsupported instances") {
  test::Rng rng(73);
  ProblemSpec big = make_spec(DivergenceKind::kl, 32, ReferenceMeasure::uniform(32),
                              Potential::zero(32), InteractionKernel::zero(32), false);
  CHECK_THROWS_AS(reference_minimizer(big, 1e-8), std::invalid_argument);

  ProblemSpec non_pd = make_spec(DivergenceKind::kl, 6, ReferenceMeasure::uniform(6),
                                 Potential::zero(6), test::random_symmetric_kernel(rng, 6),
                                 false);
  CHECK_THROWS_AS(reference_minimizer(non_pd, 1e-8), std::invalid_argument);
}

TEST_CASE("oracle report accumulates extrema") {
  OracleReport report;
  report.quantity = "demo";
  report.record(1.0, 1.0 + 1e-8);
  report.record(100.0, 100.0 + 1e-4);
  CHECK(report.instances == 2);
  CHECK(report.max_abs_error == doctest::Approx(1e-4).epsilon(1e-6));
  CHECK(report.max_rel_error == doctest::Approx(1e-6).epsilon(1e-4));
  CHECK(std::isfinite(report.max_abs_error));
}

}  // TEST_SUITE
