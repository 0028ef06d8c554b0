#pragma once

// Boundary-growth ratios w(T[Y]) / w(Y) over F-bounded sets Y, and the
// finite-truncation scan for weighted weak expander behaviour.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "coarsebox/boxspace.hpp"

namespace coarsebox {

enum class ScanMode {
  exact,      ///< every nonempty subset of every maximal ball; balls above the cap are an error
  heuristic,  ///< whole ball plus greedy growth (every start up to 64 points, else the center); an upper bound
  automatic,  ///< exact when every maximal ball of the component fits the cap, else heuristic
};

std::string to_string(ScanMode mode);
ScanMode parse_scan_mode(const std::string& text);

inline constexpr std::size_t kDefaultSubsetCap = 22;

struct SubsetScan {
  double min_ratio = 0.0;
  /// Minimizer: smallest ratio, ties broken by smaller size, then lexicographic order.
  PointSet argmin;
  /// False when the heuristic produced the value (an upper bound on the true minimum).
  bool exact = true;
  std::size_t balls_scanned = 0;
  std::size_t largest_ball = 0;
};

/// min of w(T[Y]) / w(Y) over nonempty Y contained in F[x] n support for some x.
/// `weights` covers the whole component and may be zero outside `support`; an
/// empty `support` means the whole component.
SubsetScan scan_bounded_subsets(const Relation& t, const Relation& f, std::size_t component,
                                std::span<const double> weights, std::span<const Index> support, ScanMode mode,
                                std::size_t cap = kDefaultSubsetCap);

struct BoundaryRatio {
  double min_ratio = 0.0;
  PointSet argmin;
  bool exact = true;
  /// Set when T lacked the diagonal and was widened by it.
  bool diagonal_added = false;
  std::size_t balls_scanned = 0;
};

BoundaryRatio min_boundary_ratio(const WeightedComponent& w, const Relation& t, const Relation& f,
                                 ScanMode mode, std::size_t cap = kDefaultSubsetCap);

struct ComponentRatio {
  std::size_t component = 0;
  double min_ratio = 0.0;
  PointSet argmin;
  bool exact = true;
};

struct ExpansionReport {
  Relation t;
  Relation f;
  double c = 0.0;
  std::vector<ComponentRatio> per_component;
  /// First component of the trailing window (the last ceil(m / 2) components).
  std::size_t window_start = 0;
  double tail_min = 0.0;
  /// tail_min > 1 + c
  bool passes = false;
  bool diagonal_added = false;
};

struct WWScan {
  std::vector<ExpansionReport> reports;
  /// Every F in the sequence passes: consistent with a weighted weak expander at level c.
  bool consistent = false;
};

/// `weights` holds one WeightedComponent per component, in order. The F sequence
/// must be increasing under inclusion.
WWScan ww_scan(const std::vector<WeightedComponent>& weights, const Relation& t,
               const std::vector<Relation>& f_sequence, double c, ScanMode mode,
               std::size_t cap = kDefaultSubsetCap, unsigned jobs = 1);

}  // namespace coarsebox
