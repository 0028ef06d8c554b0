#pragma once

// Unit-vector families x -> eta_x in l^2 of one component: controlled supports and
// small variation along a relation certify property A at a finite scale.

#include <cstddef>
#include <vector>

#include "coarsebox/boxspace.hpp"
#include "coarsebox/label.hpp"

namespace coarsebox {

class VectorFamily {
 public:
  /// `vectors[x]` is eta_x; entries must be nonzero, sorted by index and unique,
  /// and each vector must have unit norm within 1e-12.
  VectorFamily(SpacePtr space, std::size_t component, std::vector<SparseVector> vectors);

  const SpacePtr& space() const { return space_; }
  std::size_t component() const { return component_; }
  const SparseVector& at(Index x) const { return vectors_.at(x); }
  std::size_t size() const { return vectors_.size(); }
  /// {(x, y) : y in supp(eta_x)}
  const Relation& support_relation() const { return support_; }

 private:
  SpacePtr space_;
  std::size_t component_;
  std::vector<SparseVector> vectors_;
  Relation support_;
};

/// ||u - v||_2 for sparse vectors.
double distance(const SparseVector& u, const SparseVector& v);

/// eta_x is the normalized indicator of widen(base, radius)[x].
VectorFamily ball_average_family(std::size_t component, const Relation& base, unsigned radius);

/// eta_x is label_walk(x, steps) normalized in l^2; steps = 0 gives the basis vectors.
VectorFamily heat_family(std::size_t component, const Label& label, unsigned steps);

struct CertificateQuality {
  /// max over (x, y) in T of ||eta_x - eta_y||; 0 when T is empty on the component.
  double epsilon = 0.0;
  /// A pair attaining epsilon.
  Pair worst_pair;
  Relation support;
};

CertificateQuality certificate_quality(const VectorFamily& family, const Relation& t);

}  // namespace coarsebox
