#include "freemin/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "freemin/errors.hpp"

namespace freemin {

namespace {

/// Unnormalized-extension energy, written out term by term with naive
/// loops. Uses the reduced Hellinger core so that the unrestricted
/// derivative matches the gradient under test.
double extended_energy(const ProblemSpec& spec, const std::vector<double>& p) {
  const int n = spec.n();
  double acc = 0.0;
  switch (spec.kind()) {
    case DivergenceKind::kl:
      for (int i = 0; i < n; ++i) acc += p[static_cast<size_t>(i)] * std::log(p[static_cast<size_t>(i)] / spec.mu()[i]);
      break;
    case DivergenceKind::reverse_kl:
      for (int i = 0; i < n; ++i) acc += spec.mu()[i] * std::log(spec.mu()[i] / p[static_cast<size_t>(i)]);
      break;
    case DivergenceKind::hellinger:
      for (int i = 0; i < n; ++i) acc += -2.0 * std::sqrt(spec.mu()[i] * p[static_cast<size_t>(i)]);
      break;
  }
  for (int i = 0; i < n; ++i) acc += spec.V()[i] * p[static_cast<size_t>(i)];
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      acc += 0.5 * p[static_cast<size_t>(i)] * spec.W().entry(i, j) * p[static_cast<size_t>(j)];
    }
  }
  return acc;
}

/// Componentwise preimage used by the bisection oracle; independent of
/// Reparameterization::phi_inv_at. The two schemes without a closed form
/// are themselves inverted by scalar bisection.
double oracle_phi_inv(DivergenceKind kind, bool shifted, double mu, double alpha, double g) {
  if (!shifted) {
    switch (kind) {
      case DivergenceKind::kl:
        return std::exp(g);
      case DivergenceKind::reverse_kl:
        return -mu / g;
      case DivergenceKind::hellinger:
        return mu / (g * g);
    }
  }
  if (kind == DivergenceKind::reverse_kl) {
    return (g + std::sqrt(g * g + 4.0 * alpha * mu)) / (2.0 * alpha);
  }
  auto phi = [&](double p) {
    return kind == DivergenceKind::kl ? std::log(p) + alpha * p
                                      : -std::sqrt(mu / p) + alpha * p;
  };
  double lo = 1e-300;
  double hi = 1.0;
  if (phi(lo) >= g) return lo;
  for (int it = 0; it < 2000; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (phi(mid) < g) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double oracle_sup(DivergenceKind kind, bool shifted, double mu, double alpha) {
  double base = 0.0;
  switch (kind) {
    case DivergenceKind::kl:
      base = 0.0;
      break;
    case DivergenceKind::reverse_kl:
      base = -mu;
      break;
    case DivergenceKind::hellinger:
      base = -std::sqrt(mu);
      break;
  }
  return shifted ? base + alpha : base;
}

double oracle_phi(DivergenceKind kind, bool shifted, double mu, double alpha, double p) {
  double base = 0.0;
  switch (kind) {
    case DivergenceKind::kl:
      base = std::log(p);
      break;
    case DivergenceKind::reverse_kl:
      base = -mu / p;
      break;
    case DivergenceKind::hellinger:
      base = -std::sqrt(mu / p);
      break;
  }
  return shifted ? base + alpha * p : base;
}

/// Euclidean projection onto the probability simplex (sort and threshold).
std::vector<double> project_simplex(std::vector<double> v) {
  std::vector<double> sorted = v;
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());
  double running = 0.0;
  double theta = 0.0;
  int support = 0;
  for (size_t j = 0; j < sorted.size(); ++j) {
    running += sorted[j];
    double candidate = (running - 1.0) / static_cast<double>(j + 1);
    if (sorted[j] - candidate > 0.0) {
      theta = candidate;
      support = static_cast<int>(j + 1);
    }
  }
  (void)support;
  for (double& x : v) x = std::max(x - theta, 0.0);
  return v;
}

}  // namespace

void OracleReport::record(double expected, double actual) {
  double abs_err = std::abs(expected - actual);
  double rel_err = abs_err / std::max({1.0, std::abs(expected), std::abs(actual)});
  max_abs_error = std::max(max_abs_error, abs_err);
  max_rel_error = std::max(max_rel_error, rel_err);
  ++instances;
}

void OracleReport::record(std::span<const double> expected, std::span<const double> actual) {
  if (expected.size() != actual.size()) {
    throw std::invalid_argument("OracleReport::record: dimension mismatch");
  }
  for (size_t i = 0; i < expected.size(); ++i) {
    double abs_err = std::abs(expected[i] - actual[i]);
    double rel_err = abs_err / std::max({1.0, std::abs(expected[i]), std::abs(actual[i])});
    max_abs_error = std::max(max_abs_error, abs_err);
    max_rel_error = std::max(max_rel_error, rel_err);
  }
  ++instances;
}

std::vector<double> fd_gradient(const ProblemSpec& spec, const Density& p, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("fd_gradient: h must be > 0");
  const int n = spec.n();
  for (int i = 0; i < n; ++i) {
    if (!(p[i] > 2.0 * h)) {
      throw std::invalid_argument("fd_gradient: perturbation would exit positivity");
    }
  }
  std::vector<double> grad(static_cast<size_t>(n));
  std::vector<double> work = p.values();
  for (int i = 0; i < n; ++i) {
    const double pi = work[static_cast<size_t>(i)];
    work[static_cast<size_t>(i)] = pi + h;
    double f_plus = extended_energy(spec, work);
    work[static_cast<size_t>(i)] = pi - h;
    double f_minus = extended_energy(spec, work);
    work[static_cast<size_t>(i)] = pi;
    grad[static_cast<size_t>(i)] = (f_plus - f_minus) / (2.0 * h);
  }
  return grad;
}

double bisect_c(const Reparameterization& r, std::span<const double> g_tilde, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("bisect_c: tol must be > 0");
  const int n = r.size();
  if (static_cast<int>(g_tilde.size()) != n) {
    throw std::invalid_argument("bisect_c: dimension mismatch");
  }
  const bool shifted = r.mode().is_shifted();
  auto mu = [&](int i) { return r.mu()[i]; };
  auto alpha = [&](int i) { return shifted ? r.mode().alpha()[static_cast<size_t>(i)] : 0.0; };

  // Same endpoint construction as the paper's intervals, min_i phi_i(1/n)
  // and min_i phi_i(1), derived locally.
  double lo = std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    lo = std::min(lo, oracle_phi(r.kind(), shifted, mu(i), alpha(i), 1.0 / n) -
                          g_tilde[static_cast<size_t>(i)]);
    hi = std::min(hi, oracle_sup(r.kind(), shifted, mu(i), alpha(i)) -
                          g_tilde[static_cast<size_t>(i)]);
  }
  double delta = 1e-9 * std::max({1.0, std::abs(lo), std::abs(hi)});
  lo -= delta;
  hi += delta;

  auto mass = [&](double c) {
    double m = 0.0;
    for (int i = 0; i < n; ++i) {
      double gi = g_tilde[static_cast<size_t>(i)] + c;
      double sup = oracle_sup(r.kind(), shifted, mu(i), alpha(i));
      // Saturate at the boundary; only reachable inside the widened margin.
      m += gi < sup ? oracle_phi_inv(r.kind(), shifted, mu(i), alpha(i), gi) : 1.0;
    }
    return m;
  };
  if (!(mass(lo) < 1.0) || !(mass(hi) > 1.0)) {
    throw SolverError("bisect_c: sign condition failed on the widened bracket");
  }
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (mass(mid) < 1.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

Density reference_minimizer(const ProblemSpec& spec, double tol) {
  const int n = spec.n();
  if (n > 16) throw std::invalid_argument("reference_minimizer: intended for n <= 16");
  if (spec.W().kind() != InteractionKernel::Kind::zero && !spec.W().claimed_positive_definite()) {
    throw std::invalid_argument("reference_minimizer: requires positive semi-definite W");
  }
  constexpr double kFloor = 1e-13;
  constexpr int kMaxIterations = 2000000;

  auto naive_gradient = [&](const std::vector<double>& p) {
    std::vector<double> g(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
      double d = 0.0;
      switch (spec.kind()) {
        case DivergenceKind::kl:
          d = std::log(p[static_cast<size_t>(i)] / spec.mu()[i]) + 1.0;
          break;
        case DivergenceKind::reverse_kl:
          d = -spec.mu()[i] / p[static_cast<size_t>(i)];
          break;
        case DivergenceKind::hellinger:
          d = -std::sqrt(spec.mu()[i] / p[static_cast<size_t>(i)]);
          break;
      }
      double wp = 0.0;
      for (int j = 0; j < n; ++j) wp += spec.W().entry(i, j) * p[static_cast<size_t>(j)];
      g[static_cast<size_t>(i)] = d + spec.V()[i] + wp;
    }
    return g;
  };

  auto hessian_diag = [&](const std::vector<double>& p) {
    std::vector<double> d(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
      double pi = p[static_cast<size_t>(i)];
      switch (spec.kind()) {
        case DivergenceKind::kl:
          d[static_cast<size_t>(i)] = 1.0 / pi;
          break;
        case DivergenceKind::reverse_kl:
          d[static_cast<size_t>(i)] = spec.mu()[i] / (pi * pi);
          break;
        case DivergenceKind::hellinger:
          d[static_cast<size_t>(i)] = std::sqrt(spec.mu()[i]) / (2.0 * pi * std::sqrt(pi));
          break;
      }
    }
    return d;
  };

  // Crude largest-eigenvalue bound of diag(d) + W by power iteration.
  auto lipschitz_bound = [&](const std::vector<double>& p) {
    std::vector<double> d = hessian_diag(p);
    std::vector<double> v(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = 1.0 + 0.01 * i;
    double norm = 1.0;
    for (int it = 0; it < 30; ++it) {
      std::vector<double> hv(static_cast<size_t>(n), 0.0);
      for (int i = 0; i < n; ++i) {
        double acc = d[static_cast<size_t>(i)] * v[static_cast<size_t>(i)];
        for (int j = 0; j < n; ++j) acc += spec.W().entry(i, j) * v[static_cast<size_t>(j)];
        hv[static_cast<size_t>(i)] = acc;
      }
      norm = std::sqrt(std::inner_product(hv.begin(), hv.end(), hv.begin(), 0.0));
      if (!(norm > 0.0)) return 1.0;
      for (double& x : hv) x /= norm;
      v = std::move(hv);
    }
    return norm;
  };

  std::vector<double> p(static_cast<size_t>(n), 1.0 / n);
  for (int it = 0; it < kMaxIterations; ++it) {
    std::vector<double> g = naive_gradient(p);
    auto [gmin, gmax] = std::minmax_element(g.begin(), g.end());
    if (*gmax - *gmin <= tol) {
      return Density::renormalized(std::move(p));
    }
    double step_size = 1.0 / (lipschitz_bound(p) + 1.0);
    for (int i = 0; i < n; ++i) {
      p[static_cast<size_t>(i)] -= step_size * g[static_cast<size_t>(i)];
    }
    p = project_simplex(std::move(p));
    // Keep strictly interior so divergence gradients stay finite; the
    // minimizer is interior, so this only touches transient iterates.
    for (double& x : p) x = std::max(x, kFloor);
    double sum = std::accumulate(p.begin(), p.end(), 0.0);
    for (double& x : p) x /= sum;
  }
  throw SolverError("reference_minimizer: iteration cap exceeded");
}

}  // namespace freemin
