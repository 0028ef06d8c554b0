#include "coarsebox/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "coarsebox/error.hpp"

namespace coarsebox {

namespace {

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

std::vector<double> power_seed(std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = 1.0 + 1e-6 * std::sin(static_cast<double>(i) + 1.0);
  return v;
}

EigenEstimate top_eigenpair(std::size_t n, const MatVec& apply, const PowerIterationOptions& opts) {
  EigenEstimate est;
  if (n == 0) return est;
  const std::size_t cap = opts.max_iterations ? opts.max_iterations : 10 * n + 1000;

  std::vector<double> v = power_seed(n);
  const double n0 = norm2(v);
  for (double& x : v) x /= n0;
  std::vector<double> w(n);

  double previous = -1.0;
  for (std::size_t it = 1; it <= cap; ++it) {
    apply(v, w);
    const double rho = dot(v, w);
    const double wn = norm2(w);
    if (wn == 0.0) {
      est.value = 0.0;
      est.vector = std::move(v);
      est.iterations = it;
      return est;
    }
    double r2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = w[i] - rho * v[i];
      r2 += d * d;
    }
    const double residual = std::sqrt(r2);
    const bool stable = it > 1 && std::abs(rho - previous) < opts.tol * (1.0 + std::abs(rho));
    const bool small_residual = opts.residual_tol <= 0.0 || residual <= opts.residual_tol * std::abs(rho);
    if (stable && small_residual) {
      est.value = rho;
      est.vector = std::move(v);
      est.iterations = it;
      est.residual = residual;
      return est;
    }
    previous = rho;
    for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / wn;
  }
  throw ConvergenceError(previous, cap);
}

double tridiagonal_max_eigenvalue(std::span<const double> diag, std::span<const double> off) {
  const std::size_t k = diag.size();
  if (k == 0) return 0.0;
  if (off.size() + 1 != k) throw Error("off-diagonal must be one shorter than the diagonal");
  double lo = diag[0], hi = diag[0];
  for (std::size_t i = 0; i < k; ++i) {
    const double r = (i > 0 ? std::abs(off[i - 1]) : 0.0) + (i + 1 < k ? std::abs(off[i]) : 0.0);
    lo = std::min(lo, diag[i] - r);
    hi = std::max(hi, diag[i] + r);
  }
  // Number of eigenvalues below x: negative pivots of the LDL^T factorization of T - x.
  auto below = [&](double x) {
    std::size_t count = 0;
    double d = 1.0;
    for (std::size_t i = 0; i < k; ++i) {
      const double b2 = i > 0 ? off[i - 1] * off[i - 1] : 0.0;
      d = diag[i] - x - (i > 0 ? b2 / d : 0.0);
      if (d == 0.0) d = -1e-300;
      if (d < 0.0) ++count;
    }
    return count;
  };
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (below(mid) == k) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

double top_eigenvalue(std::size_t n, const MatVec& apply, double tol) {
  if (n == 0) return 0.0;
  std::vector<std::vector<double>> basis;
  std::vector<double> alpha, beta;
  std::vector<double> v = power_seed(n);
  const double n0 = norm2(v);
  for (double& x : v) x /= n0;
  std::vector<double> w(n);

  double scale = 0.0;
  std::vector<double> history;
  for (std::size_t j = 0; j < n; ++j) {
    apply(v, w);
    const double a = dot(v, w);
    alpha.push_back(a);
    basis.push_back(v);
    // Two passes of classical Gram-Schmidt against the whole basis.
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : basis) {
        const double c = dot(q, w);
        for (std::size_t i = 0; i < n; ++i) w[i] -= c * q[i];
      }
    }
    const double b = norm2(w);
    scale = std::max({scale, std::abs(a), b});
    const double theta = tridiagonal_max_eigenvalue(alpha, beta);
    history.push_back(theta);
    if (b <= 1e-13 * std::max(scale, 1e-300)) return theta;
    if (history.size() > 5 && std::abs(theta - history[history.size() - 6]) < tol * (1.0 + std::abs(theta))) {
      return theta;
    }
    beta.push_back(b);
    for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / b;
  }
  return history.back();
}

std::vector<double> symmetric_eigenvalues(std::vector<double> a, std::size_t n) {
  auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };
  double total = 0.0;
  for (double x : a) total += x * x;
  const double floor = 1e-30 * total;

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) off += at(i, j) * at(i, j);
    }
    if (off <= floor) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        if (apq == 0.0) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = at(i, i);
  std::sort(eig.begin(), eig.end(), std::greater<>());
  return eig;
}

}  // namespace coarsebox
