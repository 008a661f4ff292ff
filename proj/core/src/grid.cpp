#include "freemin/grid.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>
#include <string>

namespace freemin {

namespace {

constexpr double kSumTolerance = 1e-12;

double checked_sum(const std::vector<double>& v, const char* what) {
  double s = 0.0;
  for (double x : v) {
    if (!(x > 0.0) || !std::isfinite(x)) {
      throw std::invalid_argument(std::string(what) + ": entries must be strictly positive and finite");
    }
    s += x;
  }
  return s;
}

}  // namespace

Grid::Grid(std::vector<double> points, bool periodic)
    : points_(std::move(points)), periodic_(periodic) {
  if (points_.size() < 2) throw std::invalid_argument("Grid: need at least 2 points");
  double prev = 0.0;
  for (double x : points_) {
    if (!(x > prev) || x > 1.0) {
      throw std::invalid_argument("Grid: points must be strictly increasing within (0, 1]");
    }
    prev = x;
  }
}

Density Density::from_values(std::vector<double> values) {
  double s = checked_sum(values, "Density");
  if (std::abs(s - 1.0) > kSumTolerance) {
    throw std::invalid_argument("Density: entries sum to " + format_g17(s) + ", expected 1");
  }
  return Density(std::move(values));
}

Density Density::renormalized(std::vector<double> values) {
  double s = checked_sum(values, "Density");
  for (double& x : values) x /= s;
  return from_values(std::move(values));
}

ReferenceMeasure ReferenceMeasure::from_values(std::vector<double> values) {
  double s = checked_sum(values, "ReferenceMeasure");
  if (std::abs(s - 1.0) > kSumTolerance) {
    throw std::invalid_argument("ReferenceMeasure: entries sum to " + format_g17(s) + ", expected 1");
  }
  return ReferenceMeasure(std::move(values));
}

ReferenceMeasure ReferenceMeasure::renormalized(std::vector<double> values) {
  double s = checked_sum(values, "ReferenceMeasure");
  for (double& x : values) x /= s;
  return from_values(std::move(values));
}

ReferenceMeasure ReferenceMeasure::uniform(int n) {
  if (n < 2) throw std::invalid_argument("ReferenceMeasure::uniform: n must be >= 2");
  return ReferenceMeasure(std::vector<double>(static_cast<size_t>(n), 1.0 / n));
}

Potential Potential::from_values(std::vector<double> values) {
  for (double x : values) {
    if (!std::isfinite(x)) throw std::invalid_argument("Potential: entries must be finite");
  }
  return Potential(std::move(values));
}

Potential Potential::zero(int n) {
  return Potential(std::vector<double>(static_cast<size_t>(n), 0.0));
}

Grid make_uniform_grid(int n, bool periodic) {
  if (n < 2) throw std::invalid_argument("make_uniform_grid: n must be >= 2");
  std::vector<double> pts(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) pts[static_cast<size_t>(i)] = static_cast<double>(i + 1) / n;
  return Grid(std::move(pts), periodic);
}

ReferenceMeasure make_power_measure(const Grid& grid, double exponent) {
  if (!(exponent >= 0.0)) throw std::invalid_argument("make_power_measure: exponent must be >= 0");
  std::vector<double> w(static_cast<size_t>(grid.n()));
  for (int i = 0; i < grid.n(); ++i) w[static_cast<size_t>(i)] = std::pow(grid[i], exponent);
  return ReferenceMeasure::renormalized(std::move(w));
}

Potential make_sine_potential(const Grid& grid, double frequency, double amplitude) {
  const double pi = std::acos(-1.0);
  std::vector<double> v(static_cast<size_t>(grid.n()));
  for (int i = 0; i < grid.n(); ++i) {
    v[static_cast<size_t>(i)] = amplitude * std::sin(frequency * pi * grid[i]);
  }
  return Potential::from_values(std::move(v));
}

Density random_density(int n, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("random_density: n must be >= 2");
  std::mt19937_64 gen(seed);
  std::vector<double> v(static_cast<size_t>(n));
  for (double& x : v) {
    // Explicit mapping instead of uniform_real_distribution: the standard
    // leaves the distribution's output unspecified, and reproducibility
    // across compilers matters here. The +0.5 keeps the value in (0,1).
    x = (static_cast<double>(gen() >> 11) + 0.5) * 0x1.0p-53;
  }
  return Density::renormalized(std::move(v));
}

std::string format_g17(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_columns(std::ostream& out, const Grid& grid, std::span<const double> values) {
  if (static_cast<int>(values.size()) != grid.n()) {
    throw std::invalid_argument("write_columns: value count does not match grid");
  }
  for (int i = 0; i < grid.n(); ++i) {
    out << (i + 1) << ' ' << format_g17(grid[i]) << ' '
        << format_g17(values[static_cast<size_t>(i)]) << '\n';
  }
}

}  // namespace freemin
