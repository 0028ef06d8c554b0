#pragma once

// Weighted box spaces and the algebra of controlled sets.
//
// A box space is a disjoint union of finite components X_0, X_1, ...; a point is
// addressed by (component, index). A Relation is a controlled set: a set of
// ordered pairs (x, y) that never crosses components. Pairs are kept per
// component, sorted and deduplicated, so equal sets compare equal.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "coarsebox/error.hpp"

namespace coarsebox {

using Index = std::uint32_t;

struct Point {
  Index component = 0;
  Index index = 0;

  friend auto operator<=>(const Point&, const Point&) = default;
};

/// Sorted, duplicate-free list of point indices inside one component.
using PointSet = std::vector<Index>;

/// Sorts and deduplicates in place.
void canonicalize(PointSet& set);

class BoxSpace {
 public:
  /// Every size must be at least one. `labels`, when given, has one list per component.
  explicit BoxSpace(std::vector<Index> sizes, std::vector<std::vector<std::string>> labels = {});

  std::size_t num_components() const { return sizes_.size(); }
  Index size(std::size_t component) const { return sizes_.at(component); }
  std::span<const Index> sizes() const { return sizes_; }
  std::size_t total_points() const { return total_; }

  bool has_labels() const { return !labels_.empty(); }
  const std::vector<std::string>& labels(std::size_t component) const { return labels_.at(component); }

  bool contains(Point p) const { return p.component < sizes_.size() && p.index < sizes_[p.component]; }

  /// Structural equality: same component sizes. Labels are presentation only.
  friend bool operator==(const BoxSpace& a, const BoxSpace& b) { return a.sizes_ == b.sizes_; }

 private:
  std::vector<Index> sizes_;
  std::vector<std::vector<std::string>> labels_;
  std::size_t total_ = 0;
};

using SpacePtr = std::shared_ptr<const BoxSpace>;

SpacePtr make_space(std::vector<Index> sizes);

struct Pair {
  Index x = 0;
  Index y = 0;

  friend auto operator<=>(const Pair&, const Pair&) = default;
};

/// A controlled set on a box space.
class Relation {
 public:
  Relation() = default;

  /// Empty relation on `space`.
  explicit Relation(SpacePtr space);

  /// Builds from per-component pair lists; sorts, deduplicates and range-checks.
  Relation(SpacePtr space, std::vector<std::vector<Pair>> pairs);

  static Relation empty(SpacePtr space) { return Relation(std::move(space)); }
  static Relation diagonal(SpacePtr space);
  /// X_m x X_m for every component.
  static Relation full(SpacePtr space);

  const SpacePtr& space() const { return space_; }
  std::size_t num_components() const { return pairs_.size(); }
  std::span<const Pair> pairs(std::size_t component) const { return pairs_.at(component); }

  bool contains(std::size_t component, Index x, Index y) const;
  std::size_t size() const;
  bool is_empty() const { return size() == 0; }

  bool contains_diagonal() const;
  bool is_subset_of(const Relation& other) const;
  bool same_space(const Relation& other) const;

  friend bool operator==(const Relation& a, const Relation& b);

 private:
  friend class RelationBuilder;

  SpacePtr space_;
  std::vector<std::vector<Pair>> pairs_;
};

/// Accumulates pairs component by component, then canonicalizes once.
class RelationBuilder {
 public:
  explicit RelationBuilder(SpacePtr space);

  void add(std::size_t component, Index x, Index y) { pairs_[component].push_back({x, y}); }
  void add_all(const Relation& r);
  std::vector<Pair>& component(std::size_t c) { return pairs_[c]; }

  Relation build() &&;

 private:
  SpacePtr space_;
  std::vector<std::vector<Pair>> pairs_;
};

/// Strictly positive probability weights on one component.
class WeightedComponent {
 public:
  /// Throws unless all weights are > 0 and sum to 1 within 1e-12.
  WeightedComponent(Index component, std::vector<double> weights);

  static WeightedComponent uniform(Index component, Index size);
  /// Divides by the sum first; weights must still be strictly positive.
  static WeightedComponent normalized(Index component, std::vector<double> weights);

  Index component() const { return component_; }
  std::span<const double> weights() const { return weights_; }
  double operator[](Index i) const { return weights_[i]; }
  std::size_t size() const { return weights_.size(); }

  /// w(Y), summed in index order.
  double measure(std::span<const Index> points) const;

 private:
  Index component_;
  std::vector<double> weights_;
};

Relation inverse(const Relation& r);

/// {(x, y) : there is z with (x, z) in r1 and (z, y) in r2}.
Relation compose(const Relation& r1, const Relation& r2);

/// n-fold composition; n = 0 is rejected.
Relation power(const Relation& r, unsigned n);

Relation relation_union(const Relation& a, const Relation& b);
Relation relation_intersection(const Relation& a, const Relation& b);
/// Pairs of `a` not in `b`.
Relation relation_difference(const Relation& a, const Relation& b);

/// r[Y] = {x : there is y in Y with (x, y) in r}.
PointSet ball(const Relation& r, std::size_t component, std::span<const Index> y);

/// r[x] for every point x of the component, indexed by x.
std::vector<PointSet> balls(const Relation& r, std::size_t component);

/// True iff Y is contained in r[x] for some x of the same component.
bool is_bounded(const Relation& r, std::size_t component, std::span<const Index> y);

/// (diag u r u r^-1)^n: symmetric, contains the diagonal, increasing in n.
Relation widen(const Relation& r, unsigned n);

/// max over x of max(#r[x], #r^-1[x]); 0 for the empty relation.
std::size_t max_degree(const Relation& r);

/// The box subspace spanned by the given point sets, one per component of the
/// original space. Empty sets drop their component; points are renumbered in
/// increasing order.
struct BoxSubspace {
  SpacePtr space;
  Relation relation;
  /// For each new component, the original component index.
  std::vector<Index> origin_component;
  /// For each new component, the original point index of every new point.
  std::vector<PointSet> origin_points;
};

BoxSubspace box_subspace(const Relation& r, const std::vector<PointSet>& supports);

}  // namespace coarsebox
