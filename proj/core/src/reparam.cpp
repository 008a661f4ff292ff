#include "freemin/reparam.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "freemin/errors.hpp"

namespace freemin {

namespace {

constexpr double kTinyP = 1e-300;

/// Safeguarded Newton for phi(p) = g on the bracket [lo, hi], where phi is
/// strictly increasing with phi(lo) <= g <= phi(hi). Falls back to
/// bisection whenever a Newton step leaves the current bracket.
template <typename F, typename DF>
double invert_monotone(F phi, DF dphi, double g, double lo, double hi) {
  const double tol = 1e-14 * std::max(1.0, std::abs(g));
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    double fx = phi(x) - g;
    if (std::abs(fx) <= tol) return x;
    if (fx < 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    double next = x - fx / dphi(x);
    if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
    if (next == x) return x;  // bracket exhausted at machine precision
    x = next;
  }
  throw SolverError("phi_inv: scalar inversion did not converge");
}

}  // namespace

Reparameterization::Reparameterization(DivergenceKind kind, MetricMode mode, ReferenceMeasure mu)
    : kind_(kind), mode_(std::move(mode)), mu_(std::move(mu)) {
  if (mode_.is_shifted() && static_cast<int>(mode_.alpha().size()) != mu_.size()) {
    throw std::invalid_argument("Reparameterization: alpha and mu dimensions disagree");
  }
}

double Reparameterization::phi_at(int i, double p) const {
  if (!(p > 0.0) || !(p < 1.0)) {
    throw std::invalid_argument("phi: p must lie strictly inside (0, 1)");
  }
  double base = 0.0;
  switch (kind_) {
    case DivergenceKind::kl:
      base = std::log(p);
      break;
    case DivergenceKind::reverse_kl:
      base = -mu_[i] / p;
      break;
    case DivergenceKind::hellinger:
      base = -std::sqrt(mu_[i] / p);
      break;
  }
  return mode_.is_shifted() ? base + alpha_at(i) * p : base;
}

double Reparameterization::phi_derivative_at(int i, double p) const {
  double base = 0.0;
  switch (kind_) {
    case DivergenceKind::kl:
      base = 1.0 / p;
      break;
    case DivergenceKind::reverse_kl:
      base = mu_[i] / (p * p);
      break;
    case DivergenceKind::hellinger:
      base = std::sqrt(mu_[i]) / (2.0 * p * std::sqrt(p));
      break;
  }
  return mode_.is_shifted() ? base + alpha_at(i) : base;
}

double Reparameterization::sup_at(int i) const {
  double base = 0.0;
  switch (kind_) {
    case DivergenceKind::kl:
      base = 0.0;
      break;
    case DivergenceKind::reverse_kl:
      base = -mu_[i];
      break;
    case DivergenceKind::hellinger:
      base = -std::sqrt(mu_[i]);
      break;
  }
  return mode_.is_shifted() ? base + alpha_at(i) : base;
}

double Reparameterization::phi_inv_at(int i, double g) const {
  if (!(g < sup_at(i))) {
    throw std::invalid_argument("phi_inv: g must lie strictly below sup_g");
  }
  const double mu = mu_[i];
  if (!mode_.is_shifted()) {
    switch (kind_) {
      case DivergenceKind::kl:
        return std::exp(g);
      case DivergenceKind::reverse_kl:
        return -mu / g;
      case DivergenceKind::hellinger:
        return mu / (g * g);
    }
  }
  const double alpha = alpha_at(i);
  switch (kind_) {
    case DivergenceKind::kl: {
      // Root of ln p + alpha p = g. Since alpha p in (0, alpha), the root
      // lies in [exp(g - alpha), exp(g)].
      double hi = std::min(1.0, std::exp(g));
      if (hi <= kTinyP) {
        // exp(g) underflows; the alpha p term is immaterial there.
        double p = std::exp(g);
        if (p <= 0.0) throw SolverError("phi_inv: preimage underflows to zero");
        return p;
      }
      double lo = std::max(kTinyP, std::exp(g - alpha));
      return invert_monotone([&](double p) { return std::log(p) + alpha * p; },
                             [&](double p) { return 1.0 / p + alpha; }, g, lo, hi);
    }
    case DivergenceKind::reverse_kl: {
      // Closed form p = (g + sqrt(g^2 + 4 alpha mu)) / (2 alpha), written to
      // avoid cancellation when g is very negative.
      double s = std::sqrt(g * g + 4.0 * alpha * mu);
      return g <= 0.0 ? 2.0 * mu / (s - g) : (g + s) / (2.0 * alpha);
    }
    case DivergenceKind::hellinger: {
      // Root of -sqrt(mu/p) + alpha p = g: sqrt(mu/p) = alpha p - g gives
      // the enclosing bounds mu/(alpha - g)^2 < p and, for g < 0, p < mu/g^2.
      double lo = std::max(kTinyP, mu / ((alpha - g) * (alpha - g)));
      double hi = g < 0.0 ? std::min(1.0, mu / (g * g)) : 1.0;
      return invert_monotone([&](double p) { return -std::sqrt(mu / p) + alpha * p; },
                             [&](double p) { return std::sqrt(mu) / (2.0 * p * std::sqrt(p)) + alpha; },
                             g, lo, hi);
    }
  }
  throw std::logic_error("phi_inv: unreachable");
}

std::vector<double> Reparameterization::phi(const Density& p) const {
  if (p.size() != size()) throw std::invalid_argument("phi: dimension mismatch");
  std::vector<double> g(static_cast<size_t>(size()));
  for (int i = 0; i < size(); ++i) g[static_cast<size_t>(i)] = phi_at(i, p[i]);
  return g;
}

std::vector<double> Reparameterization::phi_inv(std::span<const double> g) const {
  if (static_cast<int>(g.size()) != size()) {
    throw std::invalid_argument("phi_inv: dimension mismatch");
  }
  std::vector<double> p(static_cast<size_t>(size()));
  for (int i = 0; i < size(); ++i) p[static_cast<size_t>(i)] = phi_inv_at(i, g[static_cast<size_t>(i)]);
  return p;
}

std::vector<double> Reparameterization::sup_g() const {
  std::vector<double> s(static_cast<size_t>(size()));
  for (int i = 0; i < size(); ++i) s[static_cast<size_t>(i)] = sup_at(i);
  return s;
}

}  // namespace freemin
