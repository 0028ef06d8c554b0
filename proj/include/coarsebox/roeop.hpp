#pragma once

// Finite-propagation operators: block-diagonal sparse matrices on l^2 of a box
// space, each carrying a Relation that bounds the support of its entries.

#include <cstddef>
#include <span>
#include <vector>

#include "coarsebox/boxspace.hpp"
#include "coarsebox/spectral.hpp"

namespace coarsebox {

/// CSR storage of one component block.
struct SparseBlock {
  Index n = 0;
  std::vector<std::size_t> row_ptr;  // size n + 1
  std::vector<Index> cols;
  std::vector<double> vals;

  std::size_t nnz() const { return vals.size(); }
  /// y = A x
  void apply(std::span<const double> x, std::span<double> y) const;
  /// y = A^T x
  void apply_transpose(std::span<const double> x, std::span<double> y) const;
};

struct Entry {
  Index x = 0;
  Index y = 0;
  double value = 0.0;
};

class PropagationOperator {
 public:
  /// Entries per component; duplicates are summed, exact zeros dropped. Every
  /// entry must lie in `propagation`.
  PropagationOperator(Relation propagation, const std::vector<std::vector<Entry>>& entries);

  static PropagationOperator identity(SpacePtr space);
  /// `value` on every pair of `r`; propagation r.
  static PropagationOperator indicator(const Relation& r, double value = 1.0);
  /// Indicator of the off-diagonal pairs of `r`; propagation r.
  static PropagationOperator adjacency(const Relation& r);

  const SpacePtr& space() const { return propagation_.space(); }
  const Relation& propagation() const { return propagation_; }
  const SparseBlock& block(std::size_t component) const { return blocks_.at(component); }
  std::size_t num_components() const { return blocks_.size(); }

  double at(std::size_t component, Index x, Index y) const;
  /// The pairs carrying a nonzero entry.
  Relation support() const;
  /// Row-major dense copy of one block.
  std::vector<double> dense(std::size_t component) const;

  /// Drops the columns listed in `columns` of one component (a - a P_columns);
  /// the propagation is kept.
  PropagationOperator without_columns(std::size_t component, std::span<const Index> columns) const;

 private:
  PropagationOperator(Relation propagation, std::vector<SparseBlock> blocks)
      : propagation_(std::move(propagation)), blocks_(std::move(blocks)) {}

  friend PropagationOperator multiply(const PropagationOperator&, const PropagationOperator&);
  friend PropagationOperator adjoint(const PropagationOperator&);
  friend PropagationOperator add(const PropagationOperator&, const PropagationOperator&);
  friend PropagationOperator scale(const PropagationOperator&, double);

  Relation propagation_;
  std::vector<SparseBlock> blocks_;
};

/// Product per component; propagation = compose(a.propagation, b.propagation).
PropagationOperator multiply(const PropagationOperator& a, const PropagationOperator& b);
/// Transpose (the entries are real); propagation = inverse(a.propagation).
PropagationOperator adjoint(const PropagationOperator& a);
/// Sum; propagation = union of both.
PropagationOperator add(const PropagationOperator& a, const PropagationOperator& b);
PropagationOperator scale(const PropagationOperator& a, double factor);

/// ||a|| on one component, as the square root of the top eigenvalue of a^T a:
/// dense Jacobi up to 256 points, Lanczos above with `tol` as its stopping tolerance.
double operator_norm(const PropagationOperator& a, std::size_t component, double tol = 1e-13);
/// operator_norm for every component, in order.
std::vector<double> operator_norms(const PropagationOperator& a, double tol = 1e-13);

/// ||a P_Y|| for Y inside one component; 0 for empty Y. Uses the Gram matrix of
/// the selected columns: dense Jacobi up to 256 columns, Lanczos above.
double compressed_norm(const PropagationOperator& a, std::size_t component, std::span<const Index> y,
                       double tol = 1e-13);

/// Column lists of a block (CSC view), used when many compressions share one operator.
class ColumnView {
 public:
  ColumnView(const PropagationOperator& a, std::size_t component);
  double compressed_norm(std::span<const Index> y, double tol = 1e-13) const;

 private:
  Index n_ = 0;
  std::vector<std::vector<std::pair<Index, double>>> cols_;
};

}  // namespace coarsebox
