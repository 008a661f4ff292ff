#pragma once

#include <span>
#include <vector>

#include "freemin/grid.hpp"

namespace freemin {

/// Symmetric interaction kernel W.
///
/// Three storage kinds: an explicit dense symmetric matrix, a circulant
/// tridiagonal stencil (diagonal a, neighbors b, wrap-around between the
/// first and last index), and the all-zeros kernel which never allocates
/// a matrix. The positive-definiteness flag is supplied by the
/// constructor and trusted downstream, not certified spectrally.
class InteractionKernel {
public:
  enum class Kind { zero, dense, tridiagonal_periodic };

  static InteractionKernel zero(int n);
  /// Row-major n*n entries; symmetry is validated exactly.
  static InteractionKernel dense(int n, std::vector<double> entries, bool claimed_positive_definite);
  static InteractionKernel tridiagonal_periodic(int n, double diag, double off_diag,
                                                bool claimed_positive_definite);

  Kind kind() const { return kind_; }
  int size() const { return n_; }
  bool claimed_positive_definite() const { return claimed_pd_; }

  /// W_ij without materializing anything.
  double entry(int i, int j) const;

  /// out = W v.
  void apply(std::span<const double> v, std::span<double> out) const;
  std::vector<double> apply(std::span<const double> v) const;

  /// alpha_i = W_ii.
  std::vector<double> diagonal() const;

private:
  InteractionKernel(Kind kind, int n, std::vector<double> dense_entries, double tri_diag,
                    double tri_off, bool claimed_pd)
      : kind_(kind),
        n_(n),
        dense_(std::move(dense_entries)),
        tri_diag_(tri_diag),
        tri_off_(tri_off),
        claimed_pd_(claimed_pd) {}

  Kind kind_;
  int n_;
  std::vector<double> dense_;  // row-major, dense kind only
  double tri_diag_ = 0.0;
  double tri_off_ = 0.0;
  bool claimed_pd_;
};

/// Dense kernel W_ij = scale * ln(|x_i - x_j| + epsilon). Attractive for
/// positive scale; never claimed positive-definite. Requires epsilon > 0.
InteractionKernel make_log_kernel(const Grid& grid, double scale, double epsilon);

/// Circulant kernel with diagonal alpha and neighbor coupling alpha/2;
/// its symbol alpha*(1 + cos theta) is nonnegative, so it is claimed
/// positive-definite. Requires a periodic grid, alpha > 0, and n >= 3
/// (the wrap-around stencil degenerates at n = 2).
InteractionKernel make_tridiagonal_kernel(const Grid& grid, double alpha);

/// (1/2) <p, W p>, computed by composing apply with a dot product.
double energy_quadratic(const InteractionKernel& kernel, const Density& p);

}  // namespace freemin
