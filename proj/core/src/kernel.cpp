#include "freemin/kernel.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace freemin {

InteractionKernel InteractionKernel::zero(int n) {
  if (n < 1) throw std::invalid_argument("InteractionKernel::zero: n must be >= 1");
  return InteractionKernel(Kind::zero, n, {}, 0.0, 0.0, false);
}

InteractionKernel InteractionKernel::dense(int n, std::vector<double> entries,
                                           bool claimed_positive_definite) {
  if (n < 1 || entries.size() != static_cast<size_t>(n) * static_cast<size_t>(n)) {
    throw std::invalid_argument("InteractionKernel::dense: entries must be n*n");
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (entries[static_cast<size_t>(i) * n + j] != entries[static_cast<size_t>(j) * n + i]) {
        throw std::invalid_argument("InteractionKernel::dense: matrix is not exactly symmetric");
      }
    }
  }
  return InteractionKernel(Kind::dense, n, std::move(entries), 0.0, 0.0,
                           claimed_positive_definite);
}

InteractionKernel InteractionKernel::tridiagonal_periodic(int n, double diag, double off_diag,
                                                          bool claimed_positive_definite) {
  if (n < 3) throw std::invalid_argument("InteractionKernel::tridiagonal_periodic: n must be >= 3");
  return InteractionKernel(Kind::tridiagonal_periodic, n, {}, diag, off_diag,
                           claimed_positive_definite);
}

double InteractionKernel::entry(int i, int j) const {
  switch (kind_) {
    case Kind::zero:
      return 0.0;
    case Kind::dense:
      return dense_[static_cast<size_t>(i) * n_ + j];
    case Kind::tridiagonal_periodic: {
      if (i == j) return tri_diag_;
      int d = std::abs(i - j);
      if (d == 1 || d == n_ - 1) return tri_off_;
      return 0.0;
    }
  }
  return 0.0;
}

void InteractionKernel::apply(std::span<const double> v, std::span<double> out) const {
  if (static_cast<int>(v.size()) != n_ || static_cast<int>(out.size()) != n_) {
    throw std::invalid_argument("InteractionKernel::apply: dimension mismatch");
  }
  switch (kind_) {
    case Kind::zero:
      for (double& x : out) x = 0.0;
      break;
    case Kind::dense:
      for (int i = 0; i < n_; ++i) {
        const double* row = dense_.data() + static_cast<size_t>(i) * n_;
        double acc = 0.0;
        for (int j = 0; j < n_; ++j) acc += row[j] * v[static_cast<size_t>(j)];
        out[static_cast<size_t>(i)] = acc;
      }
      break;
    case Kind::tridiagonal_periodic:
      for (int i = 0; i < n_; ++i) {
        int left = (i == 0) ? n_ - 1 : i - 1;
        int right = (i == n_ - 1) ? 0 : i + 1;
        out[static_cast<size_t>(i)] = tri_diag_ * v[static_cast<size_t>(i)] +
                                      tri_off_ * (v[static_cast<size_t>(left)] +
                                                  v[static_cast<size_t>(right)]);
      }
      break;
  }
}

std::vector<double> InteractionKernel::apply(std::span<const double> v) const {
  std::vector<double> out(static_cast<size_t>(n_));
  apply(v, out);
  return out;
}

std::vector<double> InteractionKernel::diagonal() const {
  std::vector<double> d(static_cast<size_t>(n_));
  for (int i = 0; i < n_; ++i) d[static_cast<size_t>(i)] = entry(i, i);
  return d;
}

InteractionKernel make_log_kernel(const Grid& grid, double scale, double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("make_log_kernel: epsilon must be > 0");
  const int n = grid.n();
  std::vector<double> w(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      double value = scale * std::log(std::abs(grid[i] - grid[j]) + epsilon);
      w[static_cast<size_t>(i) * n + j] = value;
      w[static_cast<size_t>(j) * n + i] = value;
    }
  }
  return InteractionKernel::dense(n, std::move(w), false);
}

InteractionKernel make_tridiagonal_kernel(const Grid& grid, double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("make_tridiagonal_kernel: alpha must be > 0");
  if (!grid.periodic()) {
    throw std::invalid_argument("make_tridiagonal_kernel: wrap-around coupling requires a periodic grid");
  }
  return InteractionKernel::tridiagonal_periodic(grid.n(), alpha, alpha / 2.0, true);
}

double energy_quadratic(const InteractionKernel& kernel, const Density& p) {
  if (kernel.size() != p.size()) {
    throw std::invalid_argument("energy_quadratic: dimension mismatch");
  }
  std::vector<double> wp = kernel.apply(p.values());
  double acc = 0.0;
  for (int i = 0; i < p.size(); ++i) acc += p[i] * wp[static_cast<size_t>(i)];
  return 0.5 * acc;
}

}  // namespace freemin
