#include "coarsebox/label.hpp"

#include <algorithm>

namespace coarsebox {

bool is_partial_bijection(const Relation& r) {
  for (std::size_t c = 0; c < r.num_components(); ++c) {
    const Index n = r.space()->size(c);
    std::vector<char> row(n, 0), col(n, 0);
    for (const Pair& p : r.pairs(c)) {
      if (row[p.x]++ || col[p.y]++) return false;
    }
  }
  return true;
}

Label build_label(const Relation& r) {
  if (!r.contains_diagonal()) throw MissingDiagonalError();
  const SpacePtr& space = r.space();

  struct Slot {
    std::vector<std::vector<char>> row_used, col_used;
    std::vector<std::vector<Pair>> pairs;
  };
  std::vector<Slot> slots;
  auto open_slot = [&] {
    Slot s;
    for (std::size_t c = 0; c < space->num_components(); ++c) {
      s.row_used.emplace_back(space->size(c), 0);
      s.col_used.emplace_back(space->size(c), 0);
    }
    s.pairs.resize(space->num_components());
    slots.push_back(std::move(s));
  };

  for (std::size_t c = 0; c < r.num_components(); ++c) {
    for (const Pair& p : r.pairs(c)) {
      if (p.x == p.y) continue;
      std::size_t j = 0;
      for (; j < slots.size(); ++j) {
        if (!slots[j].row_used[c][p.x] && !slots[j].col_used[c][p.y]) break;
      }
      if (j == slots.size()) open_slot();
      slots[j].row_used[c][p.x] = 1;
      slots[j].col_used[c][p.y] = 1;
      slots[j].pairs[c].push_back(p);
    }
  }

  Label label{r, {Relation::diagonal(space)}};
  for (Slot& s : slots) label.classes.emplace_back(space, std::move(s.pairs));
  return label;
}

bool verify_label(const Label& label) {
  if (label.classes.empty()) return false;
  const Relation& base = label.base;
  RelationBuilder all(base.space());
  for (const Relation& cls : label.classes) {
    if (!cls.same_space(base)) return false;
    if (!is_partial_bijection(cls)) return false;
    all.add_all(cls);
  }
  if (!(std::move(all).build() == base)) return false;
  if (base.contains_diagonal() && !(label.classes.front() == Relation::diagonal(base.space()))) return false;
  return true;
}

std::vector<Relation> signed_classes(const Label& label) {
  std::vector<Relation> out;
  out.reserve(2 * label.classes.size());
  for (std::size_t j = label.classes.size(); j-- > 1;) out.push_back(inverse(label.classes[j]));
  for (const Relation& cls : label.classes) out.push_back(cls);
  return out;
}

SparseVector label_walk(const Label& label, std::size_t component, Index start, unsigned steps) {
  const Index n = label.base.space()->size(component);
  if (start >= n) throw Error("walk start outside component " + std::to_string(component));
  // image[j][z] = phi_j(z), or n when z is outside the domain.
  std::vector<std::vector<Index>> image;
  for (const Relation& cls : signed_classes(label)) {
    std::vector<Index> img(n, n);
    for (const Pair& p : cls.pairs(component)) img[p.y] = p.x;
    image.push_back(std::move(img));
  }
  const double share = 1.0 / static_cast<double>(image.size());

  std::vector<double> cur(n, 0.0), next(n, 0.0);
  std::vector<Index> live{start}, touched;
  std::vector<char> seen(n, 0);
  cur[start] = 1.0;
  for (unsigned s = 0; s < steps; ++s) {
    touched.clear();
    for (Index z : live) {
      for (const auto& img : image) {
        const Index a = img[z];
        if (a == n) continue;
        if (!seen[a]) {
          seen[a] = 1;
          touched.push_back(a);
        }
        next[a] += share * cur[z];
      }
    }
    for (Index z : live) cur[z] = 0.0;
    for (Index a : touched) {
      cur[a] = next[a];
      next[a] = 0.0;
      seen[a] = 0;
    }
    live.swap(touched);
  }
  std::sort(live.begin(), live.end());
  SparseVector out;
  for (Index z : live) {
    if (cur[z] != 0.0) out.emplace_back(z, cur[z]);
  }
  return out;
}

}  // namespace coarsebox
