#include "coarsebox/boxspace.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

namespace coarsebox {

void canonicalize(PointSet& set) {
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
}

BoxSpace::BoxSpace(std::vector<Index> sizes, std::vector<std::vector<std::string>> labels)
    : sizes_(std::move(sizes)), labels_(std::move(labels)) {
  for (std::size_t c = 0; c < sizes_.size(); ++c) {
    if (sizes_[c] == 0) throw Error("component " + std::to_string(c) + " is empty");
    total_ += sizes_[c];
  }
  if (!labels_.empty()) {
    if (labels_.size() != sizes_.size()) throw Error("label list count differs from component count");
    for (std::size_t c = 0; c < sizes_.size(); ++c) {
      if (labels_[c].size() != sizes_[c]) {
        throw Error("component " + std::to_string(c) + ": label count differs from size");
      }
    }
  }
}

SpacePtr make_space(std::vector<Index> sizes) { return std::make_shared<const BoxSpace>(std::move(sizes)); }

namespace {

void canonicalize(std::vector<Pair>& pairs) {
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
}

void require_same_space(const Relation& a, const Relation& b) {
  if (!a.same_space(b)) throw MismatchedSpaceError();
}

// Row offsets into a sorted pair list: pairs with x == i live in [off[i], off[i+1]).
std::vector<std::size_t> row_offsets(std::span<const Pair> pairs, Index n) {
  std::vector<std::size_t> off(n + 1, 0);
  for (const Pair& p : pairs) ++off[p.x + 1];
  std::partial_sum(off.begin(), off.end(), off.begin());
  return off;
}

}  // namespace

Relation::Relation(SpacePtr space) : space_(std::move(space)) {
  if (!space_) throw Error("relation requires a space");
  pairs_.resize(space_->num_components());
}

Relation::Relation(SpacePtr space, std::vector<std::vector<Pair>> pairs)
    : space_(std::move(space)), pairs_(std::move(pairs)) {
  if (!space_) throw Error("relation requires a space");
  if (pairs_.size() != space_->num_components()) {
    throw Error("pair lists do not match the number of components");
  }
  for (std::size_t c = 0; c < pairs_.size(); ++c) {
    const Index n = space_->size(c);
    for (const Pair& p : pairs_[c]) {
      if (p.x >= n || p.y >= n) {
        throw Error("pair (" + std::to_string(p.x) + ", " + std::to_string(p.y) +
                    ") outside component " + std::to_string(c));
      }
    }
    canonicalize(pairs_[c]);
  }
}

Relation Relation::diagonal(SpacePtr space) {
  RelationBuilder b(space);
  for (std::size_t c = 0; c < space->num_components(); ++c) {
    for (Index i = 0; i < space->size(c); ++i) b.add(c, i, i);
  }
  return std::move(b).build();
}

Relation Relation::full(SpacePtr space) {
  RelationBuilder b(space);
  for (std::size_t c = 0; c < space->num_components(); ++c) {
    const Index n = space->size(c);
    auto& v = b.component(c);
    v.reserve(std::size_t{n} * n);
    for (Index x = 0; x < n; ++x) {
      for (Index y = 0; y < n; ++y) v.push_back({x, y});
    }
  }
  return std::move(b).build();
}

bool Relation::contains(std::size_t component, Index x, Index y) const {
  const auto& v = pairs_.at(component);
  return std::binary_search(v.begin(), v.end(), Pair{x, y});
}

std::size_t Relation::size() const {
  std::size_t s = 0;
  for (const auto& v : pairs_) s += v.size();
  return s;
}

bool Relation::contains_diagonal() const {
  for (std::size_t c = 0; c < pairs_.size(); ++c) {
    for (Index i = 0; i < space_->size(c); ++i) {
      if (!contains(c, i, i)) return false;
    }
  }
  return true;
}

bool Relation::is_subset_of(const Relation& other) const {
  require_same_space(*this, other);
  for (std::size_t c = 0; c < pairs_.size(); ++c) {
    if (!std::includes(other.pairs_[c].begin(), other.pairs_[c].end(), pairs_[c].begin(), pairs_[c].end())) {
      return false;
    }
  }
  return true;
}

bool Relation::same_space(const Relation& other) const {
  if (space_ == other.space_) return true;
  return space_ && other.space_ && *space_ == *other.space_;
}

bool operator==(const Relation& a, const Relation& b) { return a.same_space(b) && a.pairs_ == b.pairs_; }

RelationBuilder::RelationBuilder(SpacePtr space) : space_(std::move(space)) {
  pairs_.resize(space_->num_components());
}

void RelationBuilder::add_all(const Relation& r) {
  for (std::size_t c = 0; c < pairs_.size(); ++c) {
    auto src = r.pairs(c);
    pairs_[c].insert(pairs_[c].end(), src.begin(), src.end());
  }
}

Relation RelationBuilder::build() && {
  Relation r;
  r.space_ = std::move(space_);
  r.pairs_ = std::move(pairs_);
  for (std::size_t c = 0; c < r.pairs_.size(); ++c) {
    const Index n = r.space_->size(c);
    for (const Pair& p : r.pairs_[c]) {
      if (p.x >= n || p.y >= n) throw Error("pair outside component " + std::to_string(c));
    }
    canonicalize(r.pairs_[c]);
  }
  return r;
}

WeightedComponent::WeightedComponent(Index component, std::vector<double> weights)
    : component_(component), weights_(std::move(weights)) {
  if (weights_.empty()) throw Error("weights must not be empty");
  double sum = 0.0;
  for (double w : weights_) {
    if (!(w > 0.0) || !std::isfinite(w)) throw Error("weights must be strictly positive and finite");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw Error("weights must sum to 1 (got " + std::to_string(sum) + ")");
}

WeightedComponent WeightedComponent::uniform(Index component, Index size) {
  return WeightedComponent(component, std::vector<double>(size, 1.0 / static_cast<double>(size)));
}

WeightedComponent WeightedComponent::normalized(Index component, std::vector<double> weights) {
  double sum = 0.0;
  for (double w : weights) sum += w;
  if (!(sum > 0.0)) throw Error("weights must have positive total mass");
  for (double& w : weights) w /= sum;
  return WeightedComponent(component, std::move(weights));
}

double WeightedComponent::measure(std::span<const Index> points) const {
  double s = 0.0;
  for (Index p : points) s += weights_.at(p);
  return s;
}

Relation inverse(const Relation& r) {
  RelationBuilder b(r.space());
  for (std::size_t c = 0; c < r.num_components(); ++c) {
    auto& v = b.component(c);
    v.reserve(r.pairs(c).size());
    for (const Pair& p : r.pairs(c)) v.push_back({p.y, p.x});
  }
  return std::move(b).build();
}

Relation compose(const Relation& r1, const Relation& r2) {
  require_same_space(r1, r2);
  RelationBuilder b(r1.space());
  for (std::size_t c = 0; c < r1.num_components(); ++c) {
    const auto p2 = r2.pairs(c);
    const auto off = row_offsets(p2, r1.space()->size(c));
    auto& out = b.component(c);
    for (const Pair& p : r1.pairs(c)) {
      for (std::size_t k = off[p.y]; k < off[p.y + 1]; ++k) out.push_back({p.x, p2[k].y});
    }
  }
  return std::move(b).build();
}

Relation power(const Relation& r, unsigned n) {
  if (n == 0) throw Error("power requires n >= 1; use Relation::diagonal for n = 0");
  Relation result = r;
  for (unsigned i = 1; i < n; ++i) result = compose(result, r);
  return result;
}

Relation relation_union(const Relation& a, const Relation& b) {
  require_same_space(a, b);
  RelationBuilder out(a.space());
  for (std::size_t c = 0; c < a.num_components(); ++c) {
    auto& v = out.component(c);
    std::set_union(a.pairs(c).begin(), a.pairs(c).end(), b.pairs(c).begin(), b.pairs(c).end(),
                   std::back_inserter(v));
  }
  return std::move(out).build();
}

Relation relation_intersection(const Relation& a, const Relation& b) {
  require_same_space(a, b);
  RelationBuilder out(a.space());
  for (std::size_t c = 0; c < a.num_components(); ++c) {
    auto& v = out.component(c);
    std::set_intersection(a.pairs(c).begin(), a.pairs(c).end(), b.pairs(c).begin(), b.pairs(c).end(),
                          std::back_inserter(v));
  }
  return std::move(out).build();
}

Relation relation_difference(const Relation& a, const Relation& b) {
  require_same_space(a, b);
  RelationBuilder out(a.space());
  for (std::size_t c = 0; c < a.num_components(); ++c) {
    auto& v = out.component(c);
    std::set_difference(a.pairs(c).begin(), a.pairs(c).end(), b.pairs(c).begin(), b.pairs(c).end(),
                        std::back_inserter(v));
  }
  return std::move(out).build();
}

PointSet ball(const Relation& r, std::size_t component, std::span<const Index> y) {
  PointSet ys(y.begin(), y.end());
  canonicalize(ys);
  PointSet out;
  if (ys.empty()) return out;
  for (const Pair& p : r.pairs(component)) {
    if (std::binary_search(ys.begin(), ys.end(), p.y)) out.push_back(p.x);
  }
  canonicalize(out);
  return out;
}

std::vector<PointSet> balls(const Relation& r, std::size_t component) {
  std::vector<PointSet> out(r.space()->size(component));
  // Pairs are sorted by x, so each column list comes out sorted.
  for (const Pair& p : r.pairs(component)) out[p.y].push_back(p.x);
  return out;
}

bool is_bounded(const Relation& r, std::size_t component, std::span<const Index> y) {
  PointSet ys(y.begin(), y.end());
  canonicalize(ys);
  for (const PointSet& b : balls(r, component)) {
    if (std::includes(b.begin(), b.end(), ys.begin(), ys.end())) return true;
  }
  return false;
}

Relation widen(const Relation& r, unsigned n) {
  if (n == 0) throw Error("widen requires n >= 1");
  // Pairs at graph distance <= n in the symmetric closure of r.
  RelationBuilder b(r.space());
  for (std::size_t c = 0; c < r.num_components(); ++c) {
    const Index size = r.space()->size(c);
    std::vector<std::vector<Index>> adj(size);
    for (const Pair& p : r.pairs(c)) {
      if (p.x == p.y) continue;
      adj[p.x].push_back(p.y);
      adj[p.y].push_back(p.x);
    }
    std::vector<unsigned> dist(size, 0);
    std::vector<Index> touched;
    std::vector<char> seen(size, 0);
    auto& out = b.component(c);
    for (Index src = 0; src < size; ++src) {
      std::deque<Index> queue{src};
      seen[src] = 1;
      dist[src] = 0;
      touched.assign(1, src);
      while (!queue.empty()) {
        const Index u = queue.front();
        queue.pop_front();
        out.push_back({u, src});
        if (dist[u] == n) continue;
        for (Index v : adj[u]) {
          if (!seen[v]) {
            seen[v] = 1;
            dist[v] = dist[u] + 1;
            touched.push_back(v);
            queue.push_back(v);
          }
        }
      }
      for (Index t : touched) seen[t] = 0;
    }
  }
  return std::move(b).build();
}

std::size_t max_degree(const Relation& r) {
  std::size_t best = 0;
  for (std::size_t c = 0; c < r.num_components(); ++c) {
    std::vector<std::size_t> row(r.space()->size(c), 0), col(r.space()->size(c), 0);
    for (const Pair& p : r.pairs(c)) {
      best = std::max(best, ++row[p.x]);
      best = std::max(best, ++col[p.y]);
    }
  }
  return best;
}

BoxSubspace box_subspace(const Relation& r, const std::vector<PointSet>& supports) {
  if (supports.size() != r.num_components()) throw Error("one support set per component is required");
  BoxSubspace sub;
  std::vector<Index> sizes;
  for (std::size_t c = 0; c < supports.size(); ++c) {
    PointSet s = supports[c];
    canonicalize(s);
    if (s.empty()) continue;
    if (s.back() >= r.space()->size(c)) throw Error("support point outside component");
    sizes.push_back(static_cast<Index>(s.size()));
    sub.origin_component.push_back(static_cast<Index>(c));
    sub.origin_points.push_back(std::move(s));
  }
  sub.space = make_space(sizes);
  RelationBuilder b(sub.space);
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    const auto& pts = sub.origin_points[k];
    std::vector<std::int64_t> local(r.space()->size(sub.origin_component[k]), -1);
    for (std::size_t i = 0; i < pts.size(); ++i) local[pts[i]] = static_cast<std::int64_t>(i);
    for (const Pair& p : r.pairs(sub.origin_component[k])) {
      if (local[p.x] >= 0 && local[p.y] >= 0) {
        b.add(k, static_cast<Index>(local[p.x]), static_cast<Index>(local[p.y]));
      }
    }
  }
  sub.relation = std::move(b).build();
  return sub;
}

}  // namespace coarsebox
