#include "freemin/divergence.hpp"

#include <cmath>
#include <stdexcept>

#include "freemin/errors.hpp"

namespace freemin {

MetricMode MetricMode::shifted(std::vector<double> alpha) {
  if (alpha.empty()) throw std::invalid_argument("MetricMode::shifted: alpha must be non-empty");
  for (double a : alpha) {
    if (!(a > 0.0)) throw std::invalid_argument("MetricMode::shifted: alpha entries must be > 0");
  }
  return MetricMode(std::move(alpha));
}

ProblemSpec::ProblemSpec(DivergenceKind kind, Grid grid, ReferenceMeasure mu, Potential V,
                         InteractionKernel W, MetricMode mode, double dt)
    : kind_(kind),
      grid_(std::move(grid)),
      mu_(std::move(mu)),
      V_(std::move(V)),
      W_(std::move(W)),
      mode_(std::move(mode)),
      dt_(dt) {
  const int n = grid_.n();
  if (mu_.size() != n || V_.size() != n || W_.size() != n) {
    throw std::invalid_argument("ProblemSpec: mu, V, W, grid dimensions disagree");
  }
  if (!(dt_ > 0.0)) throw std::invalid_argument("ProblemSpec: dt must be > 0");
  if (mode_.is_shifted()) {
    if (!W_.claimed_positive_definite()) {
      throw std::invalid_argument("ProblemSpec: shifted metric requires a positive-definite kernel");
    }
    if (mode_.alpha() != W_.diagonal()) {
      throw std::invalid_argument("ProblemSpec: shifted metric alpha must equal diag(W)");
    }
  }
}

double divergence_value(DivergenceKind kind, const Density& p, const ReferenceMeasure& mu) {
  if (p.size() != mu.size()) throw std::invalid_argument("divergence_value: dimension mismatch");
  double acc = 0.0;
  switch (kind) {
    case DivergenceKind::kl:
      for (int i = 0; i < p.size(); ++i) acc += p[i] * std::log(p[i] / mu[i]);
      break;
    case DivergenceKind::reverse_kl:
      for (int i = 0; i < p.size(); ++i) acc += mu[i] * std::log(mu[i] / p[i]);
      break;
    case DivergenceKind::hellinger:
      for (int i = 0; i < p.size(); ++i) {
        double d = std::sqrt(p[i]) - std::sqrt(mu[i]);
        acc += d * d;
      }
      break;
  }
  if (!std::isfinite(acc)) throw SolverError("divergence_value: non-finite result");
  return acc;
}

double free_energy(const ProblemSpec& spec, const Density& p) {
  if (p.size() != spec.n()) throw std::invalid_argument("free_energy: dimension mismatch");
  double f = divergence_value(spec.kind(), p, spec.mu());
  for (int i = 0; i < p.size(); ++i) f += spec.V()[i] * p[i];
  f += energy_quadratic(spec.W(), p);
  if (!std::isfinite(f)) throw SolverError("free_energy: non-finite result");
  return f;
}

double kl_reduced_energy(const Potential& absorbed_V, const InteractionKernel& W,
                         const Density& p) {
  if (absorbed_V.size() != p.size() || W.size() != p.size()) {
    throw std::invalid_argument("kl_reduced_energy: dimension mismatch");
  }
  double f = 0.0;
  for (int i = 0; i < p.size(); ++i) f += p[i] * std::log(p[i]) + absorbed_V[i] * p[i];
  f += energy_quadratic(W, p);
  if (!std::isfinite(f)) throw SolverError("kl_reduced_energy: non-finite result");
  return f;
}

std::vector<double> gradient(const ProblemSpec& spec, const Density& p) {
  if (p.size() != spec.n()) throw std::invalid_argument("gradient: dimension mismatch");
  std::vector<double> g = spec.W().apply(p.values());
  switch (spec.kind()) {
    case DivergenceKind::kl:
      for (int i = 0; i < p.size(); ++i) {
        g[static_cast<size_t>(i)] += std::log(p[i] / spec.mu()[i]) + 1.0 + spec.V()[i];
      }
      break;
    case DivergenceKind::reverse_kl:
      for (int i = 0; i < p.size(); ++i) {
        g[static_cast<size_t>(i)] += -spec.mu()[i] / p[i] + spec.V()[i];
      }
      break;
    case DivergenceKind::hellinger:
      for (int i = 0; i < p.size(); ++i) {
        g[static_cast<size_t>(i)] += -std::sqrt(spec.mu()[i] / p[i]) + spec.V()[i];
      }
      break;
  }
  for (double x : g) {
    if (!std::isfinite(x)) throw SolverError("gradient: non-finite entry (density at simplex boundary?)");
  }
  return g;
}

std::vector<double> metric_diagonal(const ProblemSpec& spec, const Density& p) {
  if (p.size() != spec.n()) throw std::invalid_argument("metric_diagonal: dimension mismatch");
  std::vector<double> m(static_cast<size_t>(p.size()));
  switch (spec.kind()) {
    case DivergenceKind::kl:
      for (int i = 0; i < p.size(); ++i) m[static_cast<size_t>(i)] = 1.0 / p[i];
      break;
    case DivergenceKind::reverse_kl:
      for (int i = 0; i < p.size(); ++i) m[static_cast<size_t>(i)] = spec.mu()[i] / (p[i] * p[i]);
      break;
    case DivergenceKind::hellinger:
      for (int i = 0; i < p.size(); ++i) {
        m[static_cast<size_t>(i)] = std::sqrt(spec.mu()[i]) / (2.0 * p[i] * std::sqrt(p[i]));
      }
      break;
  }
  if (spec.mode().is_shifted()) {
    const auto& alpha = spec.mode().alpha();
    for (int i = 0; i < p.size(); ++i) m[static_cast<size_t>(i)] += alpha[static_cast<size_t>(i)];
  }
  return m;
}

}  // namespace freemin
