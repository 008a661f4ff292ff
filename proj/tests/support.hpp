#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "freemin/divergence.hpp"
#include "freemin/grid.hpp"
#include "freemin/kernel.hpp"

namespace freemin::test {

/// Deterministic uniform(a, b) draws; the explicit mapping keeps values
/// identical across standard library implementations.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform(double a, double b) {
    double u = (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53;
    return a + (b - a) * u;
  }

  int uniform_int(int a, int b) {  // inclusive
    return a + static_cast<int>(gen_() % static_cast<std::uint64_t>(b - a + 1));
  }

private:
  std::mt19937_64 gen_;
};

inline std::vector<double> random_positive(Rng& rng, int n, double lo, double hi) {
  std::vector<double> v(static_cast<size_t>(n));
  for (double& x : v) x = rng.uniform(lo, hi);
  return v;
}

inline Density random_interior_density(Rng& rng, int n) {
  return Density::renormalized(random_positive(rng, n, 0.1, 1.0));
}

inline ReferenceMeasure random_measure(Rng& rng, int n) {
  return ReferenceMeasure::renormalized(random_positive(rng, n, 0.2, 1.0));
}

inline Potential random_potential(Rng& rng, int n, double amplitude = 1.0) {
  std::vector<double> v(static_cast<size_t>(n));
  for (double& x : v) x = rng.uniform(-amplitude, amplitude);
  return Potential::from_values(std::move(v));
}

inline InteractionKernel random_symmetric_kernel(Rng& rng, int n, double amplitude = 1.0) {
  std::vector<double> w(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      double value = rng.uniform(-amplitude, amplitude);
      w[static_cast<size_t>(i) * n + j] = value;
      w[static_cast<size_t>(j) * n + i] = value;
    }
  }
  return InteractionKernel::dense(n, std::move(w), false);
}

inline double rel_err(double expected, double actual) {
  return std::abs(expected - actual) /
         std::max({1.0, std::abs(expected), std::abs(actual)});
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double max_rel_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (size_t i = 0; i < a.size(); ++i) m = std::max(m, rel_err(a[i], b[i]));
  return m;
}

}  // namespace freemin::test
