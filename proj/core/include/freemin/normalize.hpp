#pragma once

#include <span>
#include <utility>
#include <vector>

#include "freemin/grid.hpp"
#include "freemin/reparam.hpp"

namespace freemin {

struct NormalizationResult {
  double c = 0.0;        ///< Lagrange constant with sum_i phi_inv(g~_i + c) = 1
  double residual = 0.0; ///< |mass(c) - 1|, at most 1e-12 on success
  int evaluations = 0;   ///< mass-function evaluations spent
};

/// Search interval for c when no closed form applies. Both endpoints are
/// minima over components: lo = min_i(phi_i(1/n) - g~_i) keeps every
/// preimage at or below 1/n (mass <= 1), hi = min_i(phi_i(1) - g~_i) puts
/// one preimage at 1 (mass >= 1). Returned slightly widened so the sign
/// conditions hold strictly even in symmetric corner cases where the root
/// sits exactly on an endpoint; throws SolverError if they still fail.
/// Rejects the KL plain scheme, which bypasses the bracket entirely.
std::pair<double, double> bracket(const Reparameterization& r, std::span<const double> g_tilde);

/// Solve sum_i phi_inv(g~_i + c) = 1 for c. KL plain uses the closed form
/// c = -ln(sum exp g~_i) (max-shifted); every other scheme runs a
/// safeguarded Newton iteration on the bracket, with bisection whenever a
/// Newton step exits it. Residual tolerance 1e-12, iteration cap 200.
NormalizationResult solve_c(const Reparameterization& r, std::span<const double> g_tilde);

struct NormalizedState {
  std::vector<double> g;  ///< g~ + c
  Density p;              ///< phi_inv(g), rescaled by its sum
  double c = 0.0;
};

/// Apply the normalization step g -> g~ + c and map back to the simplex.
NormalizedState normalize_state(const Reparameterization& r, std::span<const double> g_tilde);

}  // namespace freemin
