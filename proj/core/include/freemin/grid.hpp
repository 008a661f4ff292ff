#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

namespace freemin {

/// One-dimensional grid on (0, 1].
///
/// Points are strictly increasing; the canonical experiment grid places
/// x_i = i/n for i = 1..n so that x = 0 never appears (power-law reference
/// measures would vanish there).
class Grid {
public:
  Grid(std::vector<double> points, bool periodic);

  int n() const { return static_cast<int>(points_.size()); }
  const std::vector<double>& points() const { return points_; }
  double operator[](int i) const { return points_[static_cast<size_t>(i)]; }
  bool periodic() const { return periodic_; }

private:
  std::vector<double> points_;
  bool periodic_;
};

/// Strictly positive probability vector: p_i > 0, |sum p - 1| <= 1e-12.
class Density {
public:
  /// Validates without rescaling; throws if the invariants fail.
  static Density from_values(std::vector<double> values);
  /// Divides by the sum, then validates. Input entries must be positive.
  static Density renormalized(std::vector<double> values);

  int size() const { return static_cast<int>(values_.size()); }
  const std::vector<double>& values() const { return values_; }
  double operator[](int i) const { return values_[static_cast<size_t>(i)]; }

private:
  explicit Density(std::vector<double> v) : values_(std::move(v)) {}
  std::vector<double> values_;
};

/// Strictly positive reference weights mu_i, normalized to sum 1.
class ReferenceMeasure {
public:
  static ReferenceMeasure from_values(std::vector<double> values);
  static ReferenceMeasure renormalized(std::vector<double> values);
  /// mu_i = 1/n.
  static ReferenceMeasure uniform(int n);

  int size() const { return static_cast<int>(values_.size()); }
  const std::vector<double>& values() const { return values_; }
  double operator[](int i) const { return values_[static_cast<size_t>(i)]; }

private:
  explicit ReferenceMeasure(std::vector<double> v) : values_(std::move(v)) {}
  std::vector<double> values_;
};

/// External potential V; entries must be finite.
class Potential {
public:
  static Potential from_values(std::vector<double> values);
  static Potential zero(int n);

  int size() const { return static_cast<int>(values_.size()); }
  const std::vector<double>& values() const { return values_; }
  double operator[](int i) const { return values_[static_cast<size_t>(i)]; }

private:
  explicit Potential(std::vector<double> v) : values_(std::move(v)) {}
  std::vector<double> values_;
};

/// Uniform grid with x_i = i/n, i = 1..n. Requires n >= 2.
Grid make_uniform_grid(int n, bool periodic);

/// mu_i proportional to x_i^exponent, normalized to sum 1. Requires exponent >= 0.
ReferenceMeasure make_power_measure(const Grid& grid, double exponent);

/// V_i = amplitude * sin(frequency * pi * x_i).
Potential make_sine_potential(const Grid& grid, double frequency, double amplitude);

/// Seeded i.i.d. uniform(0,1) entries, renormalized to the simplex.
/// Bit-for-bit reproducible for a fixed seed across platforms.
Density random_density(int n, std::uint64_t seed);

/// Plain-text column serialization: one line per grid point,
/// "index x value" with 1-based index and 17 significant digits.
void write_columns(std::ostream& out, const Grid& grid, std::span<const double> values);

/// printf "%.17g" round-trip formatting used by all text outputs.
std::string format_g17(double x);

}  // namespace freemin
