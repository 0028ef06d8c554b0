#pragma once

// Eigenvalue kernels for symmetric positive semidefinite operators.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace coarsebox {

/// y = M x for a symmetric PSD operator M of dimension n.
using MatVec = std::function<void(std::span<const double> x, std::span<double> y)>;

struct PowerIterationOptions {
  /// Stop once successive Rayleigh quotients differ by less than tol * (1 + rho).
  double tol = 1e-13;
  /// 0 selects the default cap of 10 n + 1000.
  std::size_t max_iterations = 0;
  /// When positive, also require ||M v - rho v|| <= residual_tol * rho.
  double residual_tol = 0.0;
};

struct EigenEstimate {
  double value = 0.0;
  std::vector<double> vector;
  std::size_t iterations = 0;
  double residual = 0.0;
};

/// All-ones plus a fixed small sinusoidal perturbation; deterministic.
std::vector<double> power_seed(std::size_t n);

/// Largest eigenpair by power iteration from power_seed(n).
/// Throws ConvergenceError when the cap is reached.
EigenEstimate top_eigenpair(std::size_t n, const MatVec& apply, const PowerIterationOptions& opts = {});

/// Largest eigenvalue by Lanczos with full reorthogonalization from power_seed(n).
/// Stops once the top Ritz value moves by less than tol * (1 + theta) over five
/// steps, or the Krylov space is exhausted.
double top_eigenvalue(std::size_t n, const MatVec& apply, double tol = 1e-13);

/// Largest eigenvalue of the symmetric tridiagonal matrix with diagonal `diag`
/// and off-diagonal `off` (one shorter), by Sturm-sequence bisection.
double tridiagonal_max_eigenvalue(std::span<const double> diag, std::span<const double> off);

/// All eigenvalues of a dense symmetric matrix (row-major, n x n) by cyclic
/// Jacobi rotations, in descending order.
std::vector<double> symmetric_eigenvalues(std::vector<double> a, std::size_t n);

}  // namespace coarsebox
