#include "coarsebox/folner.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <unordered_map>

namespace coarsebox {

namespace {

bool by_pair(const PairValue& a, const PairValue& b) { return a.x != b.x ? a.x < b.x : a.y < b.y; }

void check_weight(const SpacePtr& space, const WeightedComponent& w) {
  if (w.component() >= space->num_components() || w.size() != space->size(w.component())) {
    throw MismatchedSpaceError();
  }
}

void require_same_space(const SpacePtr& a, const SpacePtr& b) {
  if (a != b && !(a && b && *a == *b)) throw MismatchedSpaceError();
}

// phi_j image table per component: img[z] = phi(z), or n outside the domain.
std::vector<Index> image_table(const Relation& phi, std::size_t component) {
  const Index n = phi.space()->size(component);
  std::vector<Index> img(n, n);
  for (const Pair& p : phi.pairs(component)) img[p.y] = p.x;
  return img;
}

PairFunction translate_scaled(const PairFunction& eta, const Relation& phi,
                              const std::vector<WeightedComponent>* weights) {
  require_same_space(eta.space(), phi.space());
  if (!is_partial_bijection(phi)) throw Error("translation requires a partial bijection");
  std::vector<std::vector<PairValue>> out(eta.num_components());
  for (std::size_t c = 0; c < eta.num_components(); ++c) {
    const std::vector<Index> img = image_table(phi, c);
    const Index n = static_cast<Index>(img.size());
    for (const PairValue& e : eta.entries(c)) {
      const Index a = img[e.x];
      if (a == n) continue;
      double v = e.value;
      if (weights) v *= (*weights)[c][a] / (*weights)[c][e.x];
      out[c].push_back({a, e.y, v});
    }
  }
  return PairFunction(eta.space(), std::move(out));
}

// Counts, for each pair (a, y), the witnesses b with (a, b) in T and (b, y) in F.
class PairCounter {
 public:
  explicit PairCounter(Index n) : n_(n) {
    if (std::size_t{n} * n <= kDenseLimit) dense_.assign(std::size_t{n} * n, 0);
  }
  // Returns true when the count leaves zero.
  bool increment(Index a, Index y) {
    const std::size_t key = std::size_t{a} * n_ + y;
    if (!dense_.empty()) return dense_[key]++ == 0;
    return sparse_[key]++ == 0;
  }

 private:
  static constexpr std::size_t kDenseLimit = std::size_t{1} << 24;
  Index n_;
  std::vector<std::uint32_t> dense_;
  std::unordered_map<std::size_t, std::uint32_t> sparse_;
};

Relation component_level_set(const PairFunction& eta, std::size_t component, double r) {
  std::vector<std::vector<Pair>> pairs(eta.num_components());
  for (const PairValue& e : eta.entries(component)) {
    if (e.value >= r) pairs[component].push_back({e.x, e.y});
  }
  return Relation(eta.space(), std::move(pairs));
}

struct Candidate {
  double threshold;
  double mass_f;
  double mass_tf;
};

ComponentFolner scan_component(const PairFunction& eta, const Relation& t, double eps, const WeightedComponent& w,
                               Relation& chosen) {
  const std::size_t c = w.component();
  ComponentFolner out;
  out.component = c;
  std::vector<PairValue> order;
  for (const PairValue& e : eta.entries(c)) {
    if (e.value > 0.0) order.push_back(e);
  }
  if (order.empty()) return out;
  out.scanned = true;
  std::stable_sort(order.begin(), order.end(),
                   [](const PairValue& a, const PairValue& b) { return a.value > b.value; });

  const Index n = eta.space()->size(c);
  const std::vector<PointSet> t_cols = balls(t, c);
  PairCounter counter(n);
  double mass_f = 0.0, mass_tf = 0.0;
  std::vector<Candidate> all;
  for (std::size_t i = 0; i < order.size();) {
    const double r = order[i].value;
    for (; i < order.size() && order[i].value == r; ++i) {
      const PairValue& e = order[i];
      mass_f += w[e.x];
      for (Index a : t_cols[e.x]) {
        if (counter.increment(a, e.y)) mass_tf += w[a];
      }
    }
    all.push_back({r, mass_f, mass_tf});
  }
  out.thresholds_scanned = all.size();

  // Largest mass first; the scan order already grows the level sets.
  for (auto it = all.rbegin(); it != all.rend(); ++it) {
    if (!(it->mass_tf < (1.0 + eps) * it->mass_f)) continue;
    Relation f = component_level_set(eta, c, it->threshold);
    const double f_mass = measure_ct(f, w);
    const double tf_mass = measure_ct(compose(t, f), w);
    if (!(tf_mass < (1.0 + eps) * f_mass)) continue;
    out.success = true;
    out.threshold = it->threshold;
    out.mass_f = f_mass;
    out.mass_tf = tf_mass;
    chosen = std::move(f);
    return out;
  }
  const auto best = std::min_element(all.begin(), all.end(), [](const Candidate& a, const Candidate& b) {
    return a.mass_tf / a.mass_f < b.mass_tf / b.mass_f;
  });
  out.threshold = best->threshold;
  out.mass_f = best->mass_f;
  out.mass_tf = best->mass_tf;
  return out;
}

}  // namespace

PairFunction::PairFunction(SpacePtr space) : space_(std::move(space)) {
  if (!space_) throw Error("pair function requires a space");
  entries_.resize(space_->num_components());
}

PairFunction::PairFunction(SpacePtr space, std::vector<std::vector<PairValue>> entries)
    : space_(std::move(space)), entries_(std::move(entries)) {
  if (!space_) throw Error("pair function requires a space");
  if (entries_.size() != space_->num_components()) {
    throw Error("entry lists do not match the number of components");
  }
  for (std::size_t c = 0; c < entries_.size(); ++c) {
    auto& v = entries_[c];
    const Index n = space_->size(c);
    for (const PairValue& e : v) {
      if (e.x >= n || e.y >= n) throw Error("pair outside component " + std::to_string(c));
      if (!std::isfinite(e.value)) throw Error("pair function values must be finite");
    }
    std::stable_sort(v.begin(), v.end(), by_pair);
    std::vector<PairValue> merged;
    merged.reserve(v.size());
    for (const PairValue& e : v) {
      if (!merged.empty() && merged.back().x == e.x && merged.back().y == e.y) {
        merged.back().value += e.value;
      } else {
        merged.push_back(e);
      }
    }
    std::erase_if(merged, [](const PairValue& e) { return e.value == 0.0; });
    v = std::move(merged);
  }
}

PairFunction PairFunction::indicator(const Relation& r, double value) {
  std::vector<std::vector<PairValue>> out(r.num_components());
  for (std::size_t c = 0; c < r.num_components(); ++c) {
    for (const Pair& p : r.pairs(c)) out[c].push_back({p.x, p.y, value});
  }
  return PairFunction(r.space(), std::move(out));
}

double PairFunction::at(std::size_t component, Index x, Index y) const {
  const auto& v = entries_.at(component);
  const auto it = std::lower_bound(v.begin(), v.end(), PairValue{x, y, 0.0}, by_pair);
  return it != v.end() && it->x == x && it->y == y ? it->value : 0.0;
}

Relation PairFunction::support() const {
  std::vector<std::vector<Pair>> pairs(entries_.size());
  for (std::size_t c = 0; c < entries_.size(); ++c) {
    for (const PairValue& e : entries_[c]) pairs[c].push_back({e.x, e.y});
  }
  return Relation(space_, std::move(pairs));
}

bool operator==(const PairFunction& a, const PairFunction& b) {
  if (a.entries_.size() != b.entries_.size()) return false;
  if (a.space_ != b.space_ && !(*a.space_ == *b.space_)) return false;
  for (std::size_t c = 0; c < a.entries_.size(); ++c) {
    const auto& u = a.entries_[c];
    const auto& v = b.entries_[c];
    if (u.size() != v.size()) return false;
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (u[i].x != v[i].x || u[i].y != v[i].y || u[i].value != v[i].value) return false;
    }
  }
  return true;
}

PairFunction positive_part_of_difference(const PairFunction& a, const PairFunction& b) {
  require_same_space(a.space(), b.space());
  std::vector<std::vector<PairValue>> out(a.num_components());
  for (std::size_t c = 0; c < a.num_components(); ++c) {
    const auto u = a.entries(c);
    const auto v = b.entries(c);
    std::size_t i = 0, j = 0;
    while (i < u.size() || j < v.size()) {
      if (j == v.size() || (i < u.size() && by_pair(u[i], v[j]))) {
        if (u[i].value > 0.0) out[c].push_back(u[i]);
        ++i;
      } else if (i == u.size() || by_pair(v[j], u[i])) {
        if (v[j].value < 0.0) out[c].push_back({v[j].x, v[j].y, -v[j].value});
        ++j;
      } else {
        const double d = u[i].value - v[j].value;
        if (d > 0.0) out[c].push_back({u[i].x, u[i].y, d});
        ++i;
        ++j;
      }
    }
  }
  return PairFunction(a.space(), std::move(out));
}

PairFunction scale(const PairFunction& f, double factor) {
  std::vector<std::vector<PairValue>> out(f.num_components());
  for (std::size_t c = 0; c < f.num_components(); ++c) {
    for (PairValue e : f.entries(c)) {
      e.value *= factor;
      out[c].push_back(e);
    }
  }
  return PairFunction(f.space(), std::move(out));
}

double measure_cs(const Relation& z, const WeightedComponent& w) {
  check_weight(z.space(), w);
  double s = 0.0;
  for (const Pair& p : z.pairs(w.component())) s += w[p.y];
  return s;
}

double measure_cs(const PairFunction& eta, const WeightedComponent& w) {
  check_weight(eta.space(), w);
  double s = 0.0;
  for (const PairValue& e : eta.entries(w.component())) s += e.value * w[e.y];
  return s;
}

double measure_ct(const Relation& z, const WeightedComponent& w) {
  check_weight(z.space(), w);
  double s = 0.0;
  for (const Pair& p : z.pairs(w.component())) s += w[p.x];
  return s;
}

double measure_ct(const PairFunction& eta, const WeightedComponent& w) {
  check_weight(eta.space(), w);
  double s = 0.0;
  for (const PairValue& e : eta.entries(w.component())) s += e.value * w[e.x];
  return s;
}

PairFunction translate(const PairFunction& eta, const Relation& phi) { return translate_scaled(eta, phi, nullptr); }

PairFunction modified_translate(const PairFunction& eta, const Relation& phi,
                                const std::vector<WeightedComponent>& weights) {
  if (weights.size() != eta.num_components()) throw Error("one weight per component is required");
  for (std::size_t c = 0; c < weights.size(); ++c) {
    check_weight(eta.space(), weights[c]);
    if (weights[c].component() != c) throw Error("weights must be listed in component order");
  }
  return translate_scaled(eta, phi, &weights);
}

double invariance_defect(const PairFunction& eta, const Label& label, const WeightedComponent& w) {
  double s = 0.0;
  for (std::size_t j = 1; j < label.classes.size(); ++j) {
    s += measure_ct(positive_part_of_difference(translate(eta, label.classes[j]), eta), w);
  }
  return s;
}

Relation level_set(const PairFunction& eta, double r) {
  std::vector<std::vector<Pair>> pairs(eta.num_components());
  for (std::size_t c = 0; c < eta.num_components(); ++c) {
    for (const PairValue& e : eta.entries(c)) {
      if (e.value >= r) pairs[c].push_back({e.x, e.y});
    }
  }
  return Relation(eta.space(), std::move(pairs));
}

double level_set_boundary_integral(const PairFunction& eta, const Relation& t, const WeightedComponent& w) {
  check_weight(eta.space(), w);
  const std::size_t c = w.component();
  std::vector<double> levels;
  for (const PairValue& e : eta.entries(c)) {
    if (e.value > 0.0) levels.push_back(e.value);
  }
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  double s = 0.0, prev = 0.0;
  for (double r : levels) {
    const Relation f = component_level_set(eta, c, r);
    s += (r - prev) * measure_ct(relation_difference(compose(t, f), f), w);
    prev = r;
  }
  return s;
}

bool FolnerResult::certified() const {
  bool any = false;
  for (const ComponentFolner& p : per_component) {
    if (!p.scanned) continue;
    if (!p.success) return false;
    any = true;
  }
  return any;
}

FolnerResult extract_folner(const PairFunction& eta, const Relation& t, double eps,
                            const std::vector<WeightedComponent>& weights) {
  require_same_space(eta.space(), t.space());
  if (!(eps > 0.0)) throw Error("epsilon must be positive");
  FolnerResult res;
  res.epsilon = eps;
  RelationBuilder chosen_all(eta.space());
  std::vector<char> seen(eta.num_components(), 0);
  for (const WeightedComponent& w : weights) {
    check_weight(eta.space(), w);
    if (seen[w.component()]++) throw Error("component " + std::to_string(w.component()) + " weighted twice");
    Relation chosen(eta.space());
    res.per_component.push_back(scan_component(eta, t, eps, w, chosen));
    if (res.per_component.back().success) chosen_all.add_all(chosen);
  }
  res.f = std::move(chosen_all).build();
  return res;
}

std::string to_string(Kernel kernel) { return kernel == Kernel::tent ? "tent" : "heat"; }

Kernel parse_kernel(const std::string& text) {
  if (text == "tent") return Kernel::tent;
  if (text == "heat") return Kernel::heat;
  throw Error("unknown kernel '" + text + "' (expected tent or heat)");
}

PairFunction tent_kernel(const Relation& t, std::size_t component, unsigned radius) {
  const Index n = t.space()->size(component);
  const std::vector<PointSet> nbrs = balls(widen(t, 1), component);
  std::vector<std::vector<PairValue>> out(t.num_components());
  std::vector<unsigned> dist(n);
  std::deque<Index> queue;
  constexpr unsigned kUnseen = std::numeric_limits<unsigned>::max();
  for (Index y = 0; y < n; ++y) {
    std::fill(dist.begin(), dist.end(), kUnseen);
    dist[y] = 0;
    queue.assign(1, y);
    while (!queue.empty()) {
      const Index z = queue.front();
      queue.pop_front();
      out[component].push_back({z, y, static_cast<double>(radius + 1 - dist[z])});
      if (dist[z] == radius) continue;
      for (Index a : nbrs[z]) {
        if (dist[a] == kUnseen) {
          dist[a] = dist[z] + 1;
          queue.push_back(a);
        }
      }
    }
  }
  return PairFunction(t.space(), std::move(out));
}

PairFunction heat_kernel(const Label& label, std::size_t component, unsigned steps) {
  const Index n = label.base.space()->size(component);
  std::vector<std::vector<PairValue>> out(label.base.num_components());
  for (Index y = 0; y < n; ++y) {
    for (const auto& [x, v] : label_walk(label, component, y, steps)) out[component].push_back({x, y, v});
  }
  return PairFunction(label.base.space(), std::move(out));
}

FolnerSearch folner_search(std::size_t component, const Relation& t, const Label& label, double eps,
                           const WeightedComponent& w, Kernel kernel, unsigned min_radius, unsigned max_radius) {
  if (w.component() != component) throw Error("weight does not belong to the searched component");
  FolnerSearch search;
  search.best_ratio = std::numeric_limits<double>::infinity();
  for (unsigned r = min_radius; r <= max_radius; ++r) {
    const PairFunction eta = kernel == Kernel::tent ? tent_kernel(t, component, r) : heat_kernel(label, component, r);
    FolnerResult res = extract_folner(eta, t, eps, {w});
    const ComponentFolner& outcome = res.per_component.front();
    search.attempts.push_back({r, outcome});
    search.best_ratio = std::min(search.best_ratio, outcome.ratio());
    if (res.certified()) {
      search.certificate = std::move(res);
      search.certified_radius = r;
      break;
    }
  }
  return search;
}

}  // namespace coarsebox
