#pragma once

// Labels: a decomposition T = phi(0) u phi(1) u ... u phi(k) of a controlled
// set containing the diagonal into partial bijections, with phi(0) the diagonal.

#include <utility>
#include <vector>

#include "coarsebox/boxspace.hpp"

namespace coarsebox {

struct Label {
  Relation base;
  /// classes[0] is the diagonal; classes[j], j >= 1, are partial bijections.
  std::vector<Relation> classes;

  std::size_t non_diagonal_classes() const { return classes.empty() ? 0 : classes.size() - 1; }
};

/// True iff each component of `r` has at most one pair per row and per column.
bool is_partial_bijection(const Relation& r);

/// Greedy decomposition: the diagonal goes to class 0, then non-diagonal pairs are
/// scanned in canonical order (component, x, y) and placed into the first class
/// where neither the row nor the column is taken. Uses at most 2d - 1 non-diagonal
/// classes for d = max_degree(r). Throws MissingDiagonalError if diag is not in r.
Label build_label(const Relation& r);

/// Checks every label clause by exhaustive scan.
bool verify_label(const Label& label);

/// phi(-k), ..., phi(-1), phi(0), phi(1), ..., phi(k) with phi(-j) = phi(j)^-1.
std::vector<Relation> signed_classes(const Label& label);

/// Sparse vector on one component, sorted by index.
using SparseVector = std::vector<std::pair<Index, double>>;

/// M^steps applied to the indicator of `start`, where M averages the translations
/// v -> v o phi^-1 over all 2k + 1 signed classes. M is doubly substochastic.
SparseVector label_walk(const Label& label, std::size_t component, Index start, unsigned steps);

}  // namespace coarsebox
