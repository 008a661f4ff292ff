#pragma once

#include <span>
#include <vector>

#include "freemin/divergence.hpp"
#include "freemin/grid.hpp"

namespace freemin {

/// The componentwise monotone change of variables g = phi(p) that turns
/// the metric gradient flow into g' = -(g + V + W_eff p + c).
///
/// Six schemes, indexed by (divergence, metric mode):
///
///   KL plain:         phi = ln p                  inverse exp(g)
///   KL shifted:       phi = ln p + alpha p        inverse solved numerically
///   rKL plain:        phi = -mu/p                 inverse -mu/g
///   rKL shifted:      phi = -mu/p + alpha p       inverse (g + sqrt(g^2+4 alpha mu))/(2 alpha)
///   Hellinger plain:  phi = -sqrt(mu/p)           inverse mu/g^2
///   Hellinger shifted: phi = -sqrt(mu/p) + alpha p inverse solved numerically
///
/// Each phi_i maps (0,1) onto (-inf, sup_g(i)) and is strictly increasing;
/// its derivative is the metric diagonal.
class Reparameterization {
public:
  Reparameterization(DivergenceKind kind, MetricMode mode, ReferenceMeasure mu);

  int size() const { return mu_.size(); }
  DivergenceKind kind() const { return kind_; }
  const MetricMode& mode() const { return mode_; }
  const ReferenceMeasure& mu() const { return mu_; }

  /// g_i = phi_i(p). Requires p in (0, 1).
  double phi_at(int i, double p) const;
  /// phi_i'(p); equals the metric diagonal entry.
  double phi_derivative_at(int i, double p) const;
  /// p = phi_i^{-1}(g). Requires g < sup_g(i); the two schemes without a
  /// closed form are solved to |phi(p) - g| <= 1e-14 * max(1, |g|).
  double phi_inv_at(int i, double g) const;
  /// sup of phi_i over (0,1), i.e. phi_i(1).
  double sup_at(int i) const;

  std::vector<double> phi(const Density& p) const;
  /// Raw componentwise preimages; normalization is a separate step.
  std::vector<double> phi_inv(std::span<const double> g) const;
  std::vector<double> sup_g() const;

private:
  double alpha_at(int i) const { return mode_.alpha()[static_cast<size_t>(i)]; }

  DivergenceKind kind_;
  MetricMode mode_;
  ReferenceMeasure mu_;
};

}  // namespace freemin
