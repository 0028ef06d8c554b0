#include "coarsebox/propa.hpp"

#include <cmath>

namespace coarsebox {

namespace {

SparseVector normalized(SparseVector v) {
  double sq = 0.0;
  for (const auto& [i, a] : v) sq += a * a;
  const double norm = std::sqrt(sq);
  for (auto& [i, a] : v) a /= norm;
  return v;
}

}  // namespace

VectorFamily::VectorFamily(SpacePtr space, std::size_t component, std::vector<SparseVector> vectors)
    : space_(std::move(space)), component_(component), vectors_(std::move(vectors)) {
  if (!space_) throw Error("vector family requires a space");
  const Index n = space_->size(component_);
  if (vectors_.size() != n) throw Error("vector family needs one vector per point");
  std::vector<std::vector<Pair>> pairs(space_->num_components());
  for (Index x = 0; x < n; ++x) {
    double sq = 0.0;
    for (std::size_t k = 0; k < vectors_[x].size(); ++k) {
      const auto [y, a] = vectors_[x][k];
      if (y >= n) throw Error("vector entry outside the component");
      if (k > 0 && vectors_[x][k - 1].first >= y) throw Error("vector entries must be sorted and unique");
      if (a == 0.0 || !std::isfinite(a)) throw Error("vector entries must be finite and nonzero");
      sq += a * a;
      pairs[component_].push_back({x, y});
    }
    if (std::abs(std::sqrt(sq) - 1.0) > 1e-12) {
      throw Error("vector at point " + std::to_string(x) + " is not a unit vector");
    }
  }
  support_ = Relation(space_, std::move(pairs));
}

double distance(const SparseVector& u, const SparseVector& v) {
  double sq = 0.0;
  std::size_t i = 0, j = 0;
  while (i < u.size() || j < v.size()) {
    double d;
    if (j == v.size() || (i < u.size() && u[i].first < v[j].first)) {
      d = u[i++].second;
    } else if (i == u.size() || v[j].first < u[i].first) {
      d = v[j++].second;
    } else {
      d = u[i++].second - v[j++].second;
    }
    sq += d * d;
  }
  return std::sqrt(sq);
}

VectorFamily ball_average_family(std::size_t component, const Relation& base, unsigned radius) {
  if (!base.contains_diagonal()) throw MissingDiagonalError();
  if (radius == 0) throw Error("radius must be positive");
  std::vector<SparseVector> vectors;
  for (const PointSet& b : balls(widen(base, radius), component)) {
    const double a = 1.0 / std::sqrt(static_cast<double>(b.size()));
    SparseVector v;
    v.reserve(b.size());
    for (Index y : b) v.emplace_back(y, a);
    vectors.push_back(std::move(v));
  }
  return VectorFamily(base.space(), component, std::move(vectors));
}

VectorFamily heat_family(std::size_t component, const Label& label, unsigned steps) {
  const Index n = label.base.space()->size(component);
  std::vector<SparseVector> vectors;
  vectors.reserve(n);
  for (Index x = 0; x < n; ++x) vectors.push_back(normalized(label_walk(label, component, x, steps)));
  return VectorFamily(label.base.space(), component, std::move(vectors));
}

CertificateQuality certificate_quality(const VectorFamily& family, const Relation& t) {
  if (!t.same_space(family.support_relation())) throw MismatchedSpaceError();
  CertificateQuality q;
  q.support = family.support_relation();
  for (const Pair& p : t.pairs(family.component())) {
    const double d = distance(family.at(p.x), family.at(p.y));
    if (d > q.epsilon) {
      q.epsilon = d;
      q.worst_pair = p;
    }
  }
  return q;
}

}  // namespace coarsebox
