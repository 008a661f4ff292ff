#pragma once

#include <span>
#include <string>
#include <vector>

#include "freemin/divergence.hpp"
#include "freemin/grid.hpp"
#include "freemin/reparam.hpp"

namespace freemin {

/// Aggregated outcome of an oracle cross-check over many instances.
/// Relative error is measured against max(1, |expected|, |actual|).
struct OracleReport {
  std::string quantity;
  double max_abs_error = 0.0;
  double max_rel_error = 0.0;
  int instances = 0;

  void record(double expected, double actual);
  void record(std::span<const double> expected, std::span<const double> actual);
};

/// Central finite differences of the free energy along coordinate
/// directions, taken on the unnormalized extension of the energy (each
/// term's formula applied to the perturbed vector as-is). The Hellinger
/// core is -2 sum sqrt(mu p), whose unrestricted derivative is the
/// gradient this oracle checks. Requires min p > 2h.
std::vector<double> fd_gradient(const ProblemSpec& spec, const Density& p, double h);

/// Pure bisection for the normalization constant, sharing no code with
/// solve_c: its own bracket, its own componentwise inverses (inner
/// bisection where no closed form exists). Stops at |hi - lo| <= tol.
double bisect_c(const Reparameterization& r, std::span<const double> g_tilde, double tol);

/// Projected gradient descent with Euclidean simplex projection and step
/// 1/(L+1), L re-estimated at the current point by power iteration on the
/// Hessian. A slow, independent reference for tiny convex instances
/// (n <= 16, positive semi-definite W); runs until the gradient spread
/// drops below tol.
Density reference_minimizer(const ProblemSpec& spec, double tol);

}  // namespace freemin
