#pragma once

// Operator norm localization on finite components, and the weight-extraction
// pipeline that turns a badly localized operator into an expanding weight.

#include <cstddef>
#include <span>
#include <vector>

#include "coarsebox/boxspace.hpp"
#include "coarsebox/roeop.hpp"
#include "coarsebox/wwexpander.hpp"

namespace coarsebox {

/// The localization constant used by the extraction argument.
inline constexpr double kDefaultLocalizationConstant = 1.0 / 3.0;

struct LocalizationReport {
  std::size_t component = 0;
  double operator_norm = 0.0;
  /// max over centers x of ||a P_{F[x]}|| / ||a||.
  double best_ratio = 0.0;
  Point best_ball_center;
  /// Indexed by center.
  std::vector<double> per_center_ratios;

  /// Condition (beta) at constant c for this operator and F.
  bool localizes(double c) const { return best_ratio >= c; }
};

/// Every F-bounded set lies in some ball F[x], and ||a P_Y|| is monotone in Y, so the
/// supremum over F-bounded sets is attained on the balls. Throws if a vanishes on
/// the component.
LocalizationReport localization_ratio(const PropagationOperator& a, const Relation& f, std::size_t component,
                                      double tol = 1e-13, unsigned jobs = 1);

struct WitnessWeights {
  std::size_t component = 0;
  /// One entry per point of the component; zero outside `support`.
  std::vector<double> weights;
  /// Top eigenvalue of b = P a^T a P.
  double source_eigenvalue = 0.0;
  PointSet support;
  /// ||b xi - lambda xi|| of the returned eigenvector.
  double residual = 0.0;

  /// The weights restricted to `support`, as a probability vector in support order.
  std::vector<double> support_weights() const;
};

/// Zeroes the `forbidden` columns of a (a - a P_forbidden), forms b = P a^T a P on
/// the remaining points, takes the top eigenpair (lambda, xi) and returns |xi|^2
/// with entries below 1e-14 dropped and the rest renormalized.
WitnessWeights extract_weights(const PropagationOperator& a, std::size_t component,
                               std::span<const Index> forbidden = {}, double tol = 1e-13);

struct WitnessCheck {
  /// min over F-bounded Y inside the support of w(S[Y]) / w(Y), S = T^-1 o T.
  double min_ratio = 0.0;
  PointSet argmin;
  double threshold = 0.0;
  bool holds = false;
  bool exact = true;
};

/// T is the propagation of `a`. `threshold` defaults to 1 / c for the default c.
WitnessCheck verify_witness_inequality(const WitnessWeights& wit, const PropagationOperator& a, const Relation& f,
                                       ScanMode mode = ScanMode::exact, std::size_t cap = kDefaultSubsetCap,
                                       double threshold = 3.0);

}  // namespace coarsebox
