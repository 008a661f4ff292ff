#pragma once

#include <vector>

#include "freemin/grid.hpp"
#include "freemin/kernel.hpp"

namespace freemin {

enum class DivergenceKind { kl, reverse_kl, hellinger };

/// Metric choice for the descent: the bare divergence Hessian diagonal
/// (plain) or that diagonal shifted by alpha = diag(W) when W is
/// positive-definite (shifted).
class MetricMode {
public:
  static MetricMode plain() { return MetricMode({}); }
  /// Requires alpha_i > 0 for all i.
  static MetricMode shifted(std::vector<double> alpha);

  bool is_shifted() const { return !alpha_.empty(); }
  const std::vector<double>& alpha() const { return alpha_; }

private:
  explicit MetricMode(std::vector<double> alpha) : alpha_(std::move(alpha)) {}
  std::vector<double> alpha_;
};

/// Everything that defines one minimization problem:
///   F(p) = D(p||mu) + <V, p> + (1/2) <p, W p>
/// plus the metric mode and the Euler step size.
class ProblemSpec {
public:
  /// Validates dimensions, dt > 0, and that shifted mode is only used
  /// with a kernel claimed positive-definite (alpha must equal diag(W)).
  ProblemSpec(DivergenceKind kind, Grid grid, ReferenceMeasure mu, Potential V,
              InteractionKernel W, MetricMode mode, double dt);

  DivergenceKind kind() const { return kind_; }
  const Grid& grid() const { return grid_; }
  const ReferenceMeasure& mu() const { return mu_; }
  const Potential& V() const { return V_; }
  const InteractionKernel& W() const { return W_; }
  const MetricMode& mode() const { return mode_; }
  double dt() const { return dt_; }
  int n() const { return grid_.n(); }

private:
  DivergenceKind kind_;
  Grid grid_;
  ReferenceMeasure mu_;
  Potential V_;
  InteractionKernel W_;
  MetricMode mode_;
  double dt_;
};

/// D(p||mu) for the given kind. KL: sum p ln(p/mu); reverse KL:
/// sum mu ln(mu/p); Hellinger: sum (sqrt(p)-sqrt(mu))^2, constant included.
double divergence_value(DivergenceKind kind, const Density& p, const ReferenceMeasure& mu);

/// F(p) = D(p||mu) + <V, p> + (1/2) <p, W p>. Throws SolverError if the
/// result is not finite.
double free_energy(const ProblemSpec& spec, const Density& p);

/// The KL energy after absorbing the reference into the potential:
/// sum p ln p + <absorbed_V, p> + (1/2) <p, W p>. Equals free_energy of a
/// KL spec when absorbed_V = V - ln mu.
double kl_reduced_energy(const Potential& absorbed_V, const InteractionKernel& W,
                         const Density& p);

/// Exact variational derivative of F. KL: ln(p/mu) + 1 + V + Wp;
/// reverse KL: -mu/p + V + Wp; Hellinger: -sqrt(mu/p) + V + Wp.
std::vector<double> gradient(const ProblemSpec& spec, const Density& p);

/// Diagonal of the descent metric at p. Plain mode gives the divergence
/// Hessian diagonal (KL: 1/p; rKL: mu/p^2; Hellinger: sqrt(mu)/(2 p^{3/2}));
/// shifted mode adds alpha componentwise.
std::vector<double> metric_diagonal(const ProblemSpec& spec, const Density& p);

}  // namespace freemin
