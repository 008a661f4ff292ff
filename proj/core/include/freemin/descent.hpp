#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include "freemin/divergence.hpp"
#include "freemin/grid.hpp"
#include "freemin/normalize.hpp"
#include "freemin/reparam.hpp"

namespace freemin {

/// One mirror-descent iterate: g = phi(p) up to the normalization rescale.
struct IterateState {
  int k = 0;              ///< iteration index
  std::vector<double> g;  ///< reparameterized coordinates
  Density p;              ///< current density
  double c = 0.0;         ///< Lagrange constant from the last normalization
};

/// Per-iteration free energies and the derived error series.
struct EnergyTrace {
  std::vector<double> energies;    ///< F(p^k), k = 0..K
  double reference_energy = 0.0;   ///< min energy over the run extended by 50 steps
  std::vector<double> errors;      ///< energies - reference_energy (>= 0)
};

struct RunResult {
  IterateState state;
  EnergyTrace trace;
};

/// g^0 = phi(p0), k = 0.
IterateState initial_state(const ProblemSpec& spec, const Density& p0);

/// The negated g-velocity: g + V_eff + W_eff p, where the KL schemes absorb
/// the reference measure into the potential (V_eff = V - ln mu) and shifted
/// mode removes the kernel diagonal (W_eff p = Wp - alpha.p). The Lagrange
/// constant is excluded; normalization supplies it.
std::vector<double> drift(const ProblemSpec& spec, const IterateState& state);

/// One explicit Euler step g~ = g - dt * drift followed by normalization.
IterateState step(const ProblemSpec& spec, const IterateState& state);

/// Iterate up to max_iters steps, recording F(p^k) for every k including 0.
/// A positive tol stops early once |F_k - F_{k-1}| <= tol * max(1, |F_k|);
/// the default never exits early. The error reference is the minimum energy
/// seen when the run is continued for another 50 steps.
RunResult run(const ProblemSpec& spec, const Density& p0, int max_iters, double tol = 0.0);

/// Classical multiplicative-weights mirror descent
/// p <- p * exp(-eta * grad) / Z, with max-shifted exponentials.
Density baseline_md(const std::function<std::vector<double>(const Density&)>& energy_gradient,
                    const Density& p0, double eta, int iters);

/// max_i grad_i - min_i grad_i; zero at an interior stationary point.
double stationarity_residual(const ProblemSpec& spec, const Density& p);

/// CSV serialization: header "iter,energy,error", 17 significant digits, LF.
void write_trace_csv(std::ostream& out, const EnergyTrace& trace);

/// Inverse of write_trace_csv; reference_energy is recovered as
/// min(energies - errors). Throws ConfigError on malformed input.
EnergyTrace read_trace_csv(std::istream& in);

}  // namespace freemin
