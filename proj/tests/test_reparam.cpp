#include <doctest.h>

#include <cmath>

#include "freemin/reparam.hpp"
#include "support.hpp"

using namespace freemin;

namespace {

const DivergenceKind kKinds[] = {DivergenceKind::kl, DivergenceKind::reverse_kl,
                                 DivergenceKind::hellinger};

Reparameterization make_reparam(DivergenceKind kind, bool shifted, ReferenceMeasure mu,
                                double alpha = 2.0) {
  MetricMode mode = shifted
                        ? MetricMode::shifted(std::vector<double>(
                              static_cast<size_t>(mu.size()), alpha))
                        : MetricMode::plain();
  return Reparameterization(kind, std::move(mode), std::move(mu));
}

}  // namespace

TEST_SUITE("reparam") {

TEST_CASE("phi closed forms") {
  ReferenceMeasure mu2 = ReferenceMeasure::uniform(2);

  Reparameterization kl = make_reparam(DivergenceKind::kl, false, mu2);
  CHECK(kl.phi_at(0, 0.5) == doctest::Approx(std::log(0.5)).epsilon(1e-15));

  Reparameterization rkl_shifted = make_reparam(DivergenceKind::reverse_kl, true, mu2, 2.0);
  CHECK(rkl_shifted.phi_at(0, 0.5) == doctest::Approx(0.0).epsilon(1e-15));

  ReferenceMeasure mu4 = ReferenceMeasure::uniform(4);
  Reparameterization h = make_reparam(DivergenceKind::hellinger, false, mu4);
  CHECK(h.phi_at(0, 0.25) == doctest::Approx(-1.0).epsilon(1e-15));

  CHECK_THROWS_AS(kl.phi_at(0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(kl.phi_at(0, 0.0), std::invalid_argument);
}

TEST_CASE("phi_inv closed forms and the solved schemes") {
  ReferenceMeasure mu2 = ReferenceMeasure::uniform(2);

  Reparameterization kl = make_reparam(DivergenceKind::kl, false, mu2);
  CHECK(kl.phi_inv_at(0, std::log(0.5)) == doctest::Approx(0.5).epsilon(1e-15));

  Reparameterization rkl_shifted = make_reparam(DivergenceKind::reverse_kl, true, mu2, 2.0);
  CHECK(rkl_shifted.phi_inv_at(0, 0.0) == doctest::Approx(0.5).epsilon(1e-15));

  ReferenceMeasure mu4 = ReferenceMeasure::uniform(4);
  Reparameterization h_shifted = make_reparam(DivergenceKind::hellinger, true, mu4, 100.0);
  double g = h_shifted.phi_at(0, 0.3);
  CHECK(g == doctest::Approx(-std::sqrt(0.25 / 0.3) + 30.0).epsilon(1e-14));
  CHECK(std::abs(h_shifted.phi_inv_at(0, g) - 0.3) < 1e-12);

  CHECK_THROWS_AS(kl.phi_inv_at(0, 0.0), std::invalid_argument);   // at sup
  CHECK_THROWS_AS(kl.phi_inv_at(0, 0.5), std::invalid_argument);   // above sup
}

TEST_CASE("sup_g table") {
  Reparameterization kl = make_reparam(DivergenceKind::kl, false, ReferenceMeasure::uniform(3));
  CHECK(kl.sup_g() == std::vector<double>{0.0, 0.0, 0.0});

  ReferenceMeasure mu = ReferenceMeasure::from_values({0.25, 0.75});
  Reparameterization rkl = make_reparam(DivergenceKind::reverse_kl, false, mu);
  CHECK(rkl.sup_g() == std::vector<double>{-0.25, -0.75});

  Reparameterization h_shifted =
      make_reparam(DivergenceKind::hellinger, true, ReferenceMeasure::uniform(4), 100.0);
  CHECK(h_shifted.sup_at(0) == doctest::Approx(99.5).epsilon(1e-15));
}

TEST_CASE("round trip on random interior densities, all six schemes") {
  test::Rng rng(41);
  for (DivergenceKind kind : kKinds) {
    for (bool shifted : {false, true}) {
      for (int trial = 0; trial < 25; ++trial) {
        int n = rng.uniform_int(2, 8);
        double alpha = rng.uniform(0.5, 50.0);
        Reparameterization r = make_reparam(kind, shifted, test::random_measure(rng, n), alpha);
        Density p = test::random_interior_density(rng, n);
        std::vector<double> back = r.phi_inv(r.phi(p));
        CHECK(test::max_abs_diff(back, p.values()) < 1e-12);
        for (double q : back) {
          CHECK(q > 0.0);
          CHECK(q < 1.0);
        }
      }
    }
  }
}

TEST_CASE("round trip at the paper's large shifts") {
  test::Rng rng(42);
  for (DivergenceKind kind : kKinds) {
    for (double alpha : {100.0, 1000.0}) {
      Reparameterization r = make_reparam(kind, true, ReferenceMeasure::uniform(6), alpha);
      for (int trial = 0; trial < 10; ++trial) {
        Density p = test::random_interior_density(rng, 6);
        CHECK(test::max_abs_diff(r.phi_inv(r.phi(p)), p.values()) < 1e-12);
      }
    }
  }
}

TEST_CASE("phi is componentwise strictly increasing") {
  test::Rng rng(43);
  for (DivergenceKind kind : kKinds) {
    for (bool shifted : {false, true}) {
      Reparameterization r = make_reparam(kind, shifted, test::random_measure(rng, 5),
                                          rng.uniform(0.5, 20.0));
      for (int trial = 0; trial < 10; ++trial) {
        double p = rng.uniform(0.01, 0.5);
        double q = p + rng.uniform(0.01, 0.45);
        for (int i = 0; i < 5; ++i) CHECK(r.phi_at(i, p) < r.phi_at(i, q));
      }
    }
  }
}

TEST_CASE("phi derivative matches finite differences") {
  test::Rng rng(44);
  for (DivergenceKind kind : kKinds) {
    for (bool shifted : {false, true}) {
      Reparameterization r = make_reparam(kind, shifted, test::random_measure(rng, 4),
                                          rng.uniform(0.5, 20.0));
      for (int trial = 0; trial < 10; ++trial) {
        double p = rng.uniform(0.05, 0.9);
        double h = 1e-6;
        for (int i = 0; i < 4; ++i) {
          double fd = (r.phi_at(i, p + h) - r.phi_at(i, p - h)) / (2.0 * h);
          CHECK(test::rel_err(fd, r.phi_derivative_at(i, p)) < 1e-7);
        }
      }
    }
  }
}

}  // TEST_SUITE
