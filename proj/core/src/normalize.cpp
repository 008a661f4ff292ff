#include "freemin/normalize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "freemin/errors.hpp"

namespace freemin {

namespace {

constexpr double kResidualTol = 1e-12;
constexpr int kMaxIterations = 200;

bool is_kl_plain(const Reparameterization& r) {
  return r.kind() == DivergenceKind::kl && !r.mode().is_shifted();
}

/// Total preimage mass and its derivative in c. Components whose argument
/// reaches sup_g (possible only inside the widened margin) are continued
/// linearly past p = 1, which keeps the function strictly increasing and
/// finite throughout the search interval.
void mass_and_slope(const Reparameterization& r, std::span<const double> g_tilde, double c,
                    double* mass, double* slope) {
  double m = 0.0;
  double s = 0.0;
  for (int i = 0; i < r.size(); ++i) {
    const double gi = g_tilde[static_cast<size_t>(i)] + c;
    const double sup = r.sup_at(i);
    if (gi < sup) {
      double p = r.phi_inv_at(i, gi);
      m += p;
      s += 1.0 / r.phi_derivative_at(i, p);
    } else {
      double inv_slope = 1.0 / r.phi_derivative_at(i, 1.0);
      m += 1.0 + (gi - sup) * inv_slope;
      s += inv_slope;
    }
  }
  *mass = m;
  *slope = s;
}

}  // namespace

std::pair<double, double> bracket(const Reparameterization& r, std::span<const double> g_tilde) {
  if (is_kl_plain(r)) {
    throw std::invalid_argument("bracket: KL plain uses the closed-form constant");
  }
  if (static_cast<int>(g_tilde.size()) != r.size()) {
    throw std::invalid_argument("bracket: dimension mismatch");
  }
  const double inv_n = 1.0 / r.size();
  double lo = std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  for (int i = 0; i < r.size(); ++i) {
    lo = std::min(lo, r.phi_at(i, inv_n) - g_tilde[static_cast<size_t>(i)]);
    hi = std::min(hi, r.sup_at(i) - g_tilde[static_cast<size_t>(i)]);
  }
  const double delta = 1e-9 * std::max({1.0, std::abs(lo), std::abs(hi)});
  lo -= delta;
  hi += delta;

  double mass, slope;
  mass_and_slope(r, g_tilde, lo, &mass, &slope);
  if (!(mass < 1.0)) throw SolverError("bracket: mass at left endpoint is not below 1");
  mass_and_slope(r, g_tilde, hi, &mass, &slope);
  if (!(mass > 1.0)) throw SolverError("bracket: mass at right endpoint is not above 1");
  return {lo, hi};
}

NormalizationResult solve_c(const Reparameterization& r, std::span<const double> g_tilde) {
  if (static_cast<int>(g_tilde.size()) != r.size()) {
    throw std::invalid_argument("solve_c: dimension mismatch");
  }
  for (double g : g_tilde) {
    if (!std::isfinite(g)) throw std::invalid_argument("solve_c: g~ must be finite");
  }

  if (is_kl_plain(r)) {
    // c = -ln(sum exp g~), computed with max subtraction.
    double m = *std::max_element(g_tilde.begin(), g_tilde.end());
    double sum = 0.0;
    for (double g : g_tilde) sum += std::exp(g - m);
    NormalizationResult result;
    result.c = -(m + std::log(sum));
    double mass = 0.0;
    for (double g : g_tilde) mass += std::exp(g + result.c);
    result.residual = std::abs(mass - 1.0);
    result.evaluations = 1;
    return result;
  }

  auto [lo, hi] = bracket(r, g_tilde);
  NormalizationResult result;
  result.evaluations = 2;  // the two endpoint checks inside bracket()
  double c = 0.5 * (lo + hi);
  for (int it = 0; it < kMaxIterations; ++it) {
    double mass, slope;
    mass_and_slope(r, g_tilde, c, &mass, &slope);
    ++result.evaluations;
    double f = mass - 1.0;
    double newton = f / slope;
    // Converged when both the residual and the Newton estimate of the
    // remaining c-error are small; the residual alone would leave c loose
    // wherever the mass function is flat. One last refinement then drives
    // the error quadratically below the check tolerances.
    if (std::abs(f) <= kResidualTol && std::abs(newton) <= 1e-13 * std::max(1.0, std::abs(c))) {
      double refined = c - newton;
      if (refined > lo && refined < hi) {
        double refined_mass, refined_slope;
        mass_and_slope(r, g_tilde, refined, &refined_mass, &refined_slope);
        ++result.evaluations;
        if (std::abs(refined_mass - 1.0) <= std::abs(f)) {
          result.c = refined;
          result.residual = std::abs(refined_mass - 1.0);
          return result;
        }
      }
      result.c = c;
      result.residual = std::abs(f);
      return result;
    }
    if (f < 0.0) {
      lo = c;
    } else {
      hi = c;
    }
    double next = c - newton;
    if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
    if (next == c) {
      // Interval exhausted at machine precision; accept the best point.
      result.c = c;
      result.residual = std::abs(f);
      if (result.residual <= kResidualTol) return result;
      break;
    }
    c = next;
  }
  throw SolverError("solve_c: normalization did not converge within the iteration cap");
}

NormalizedState normalize_state(const Reparameterization& r, std::span<const double> g_tilde) {
  NormalizationResult sol = solve_c(r, g_tilde);
  std::vector<double> g(g_tilde.begin(), g_tilde.end());
  for (double& x : g) x += sol.c;
  std::vector<double> p = r.phi_inv(g);
  double sum = 0.0;
  for (double x : p) sum += x;
  if (std::abs(sum - 1.0) > 1e-12) {
    throw SolverError("normalize_state: preimage mass defect exceeds tolerance");
  }
  // The root residual leaves a ~1e-13 mass defect; rescaling by the sum
  // restores exact simplex membership for downstream energy evaluation.
  return NormalizedState{std::move(g), Density::renormalized(std::move(p)), sol.c};
}

}  // namespace freemin
