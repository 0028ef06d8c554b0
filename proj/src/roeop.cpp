#include "coarsebox/roeop.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace coarsebox {

namespace {

constexpr Index kDenseLimit = 256;

SparseBlock block_from_entries(Index n, std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return std::tie(a.x, a.y) < std::tie(b.x, b.y); });
  SparseBlock blk;
  blk.n = n;
  blk.row_ptr.assign(n + 1, 0);
  for (std::size_t i = 0; i < entries.size();) {
    const Entry& e = entries[i];
    double v = 0.0;
    std::size_t j = i;
    for (; j < entries.size() && entries[j].x == e.x && entries[j].y == e.y; ++j) v += entries[j].value;
    if (v != 0.0) {
      blk.cols.push_back(e.y);
      blk.vals.push_back(v);
      ++blk.row_ptr[e.x + 1];
    }
    i = j;
  }
  for (Index r = 0; r < n; ++r) blk.row_ptr[r + 1] += blk.row_ptr[r];
  return blk;
}

std::vector<Entry> entries_of(const SparseBlock& b) {
  std::vector<Entry> out;
  out.reserve(b.nnz());
  for (Index r = 0; r < b.n; ++r) {
    for (std::size_t k = b.row_ptr[r]; k < b.row_ptr[r + 1]; ++k) out.push_back({r, b.cols[k], b.vals[k]});
  }
  return out;
}

void require_same_space(const PropagationOperator& a, const PropagationOperator& b) {
  if (!a.propagation().same_space(b.propagation())) throw MismatchedSpaceError();
}

}  // namespace

void SparseBlock::apply(std::span<const double> x, std::span<double> y) const {
  for (Index r = 0; r < n; ++r) {
    double s = 0.0;
    for (std::size_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k) s += vals[k] * x[cols[k]];
    y[r] = s;
  }
}

void SparseBlock::apply_transpose(std::span<const double> x, std::span<double> y) const {
  std::fill(y.begin(), y.end(), 0.0);
  for (Index r = 0; r < n; ++r) {
    for (std::size_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k) y[cols[k]] += vals[k] * x[r];
  }
}

PropagationOperator::PropagationOperator(Relation propagation, const std::vector<std::vector<Entry>>& entries)
    : propagation_(std::move(propagation)) {
  const SpacePtr& sp = propagation_.space();
  if (entries.size() != sp->num_components()) throw Error("entry lists do not match the number of components");
  for (std::size_t c = 0; c < entries.size(); ++c) {
    for (const Entry& e : entries[c]) {
      if (e.x >= sp->size(c) || e.y >= sp->size(c)) throw Error("entry outside its component");
      if (e.value != 0.0 && !propagation_.contains(c, e.x, e.y)) {
        throw Error("entry (" + std::to_string(e.x) + ", " + std::to_string(e.y) +
                    ") lies outside the propagation relation");
      }
    }
    blocks_.push_back(block_from_entries(sp->size(c), entries[c]));
  }
}

PropagationOperator PropagationOperator::identity(SpacePtr space) {
  return indicator(Relation::diagonal(std::move(space)));
}

PropagationOperator PropagationOperator::indicator(const Relation& r, double value) {
  std::vector<std::vector<Entry>> entries(r.num_components());
  for (std::size_t c = 0; c < r.num_components(); ++c) {
    for (const Pair& p : r.pairs(c)) entries[c].push_back({p.x, p.y, value});
  }
  return PropagationOperator(r, entries);
}

PropagationOperator PropagationOperator::adjacency(const Relation& r) {
  std::vector<std::vector<Entry>> entries(r.num_components());
  for (std::size_t c = 0; c < r.num_components(); ++c) {
    for (const Pair& p : r.pairs(c)) {
      if (p.x != p.y) entries[c].push_back({p.x, p.y, 1.0});
    }
  }
  return PropagationOperator(r, entries);
}

double PropagationOperator::at(std::size_t component, Index x, Index y) const {
  const SparseBlock& b = blocks_.at(component);
  const auto first = b.cols.begin() + static_cast<std::ptrdiff_t>(b.row_ptr[x]);
  const auto last = b.cols.begin() + static_cast<std::ptrdiff_t>(b.row_ptr[x + 1]);
  const auto it = std::lower_bound(first, last, y);
  return (it != last && *it == y) ? b.vals[static_cast<std::size_t>(it - b.cols.begin())] : 0.0;
}

Relation PropagationOperator::support() const {
  RelationBuilder rb(space());
  for (std::size_t c = 0; c < blocks_.size(); ++c) {
    for (const Entry& e : entries_of(blocks_[c])) rb.add(c, e.x, e.y);
  }
  return std::move(rb).build();
}

std::vector<double> PropagationOperator::dense(std::size_t component) const {
  const SparseBlock& b = blocks_.at(component);
  std::vector<double> d(std::size_t{b.n} * b.n, 0.0);
  for (const Entry& e : entries_of(b)) d[std::size_t{e.x} * b.n + e.y] = e.value;
  return d;
}

PropagationOperator PropagationOperator::without_columns(std::size_t component,
                                                         std::span<const Index> columns) const {
  std::vector<char> drop(blocks_.at(component).n, 0);
  for (Index c : columns) drop.at(c) = 1;
  std::vector<SparseBlock> blocks = blocks_;
  std::vector<Entry> kept;
  for (const Entry& e : entries_of(blocks_[component])) {
    if (!drop[e.y]) kept.push_back(e);
  }
  blocks[component] = block_from_entries(blocks_[component].n, std::move(kept));
  return PropagationOperator(propagation_, std::move(blocks));
}

PropagationOperator multiply(const PropagationOperator& a, const PropagationOperator& b) {
  require_same_space(a, b);
  std::vector<SparseBlock> blocks;
  for (std::size_t c = 0; c < a.num_components(); ++c) {
    const SparseBlock& A = a.blocks_[c];
    const SparseBlock& B = b.blocks_[c];
    std::vector<Entry> out;
    std::vector<double> acc(A.n, 0.0);
    std::vector<char> mark(A.n, 0);
    std::vector<Index> touched;
    for (Index r = 0; r < A.n; ++r) {
      touched.clear();
      for (std::size_t k = A.row_ptr[r]; k < A.row_ptr[r + 1]; ++k) {
        const Index z = A.cols[k];
        for (std::size_t l = B.row_ptr[z]; l < B.row_ptr[z + 1]; ++l) {
          const Index y = B.cols[l];
          if (!mark[y]) {
            mark[y] = 1;
            touched.push_back(y);
          }
          acc[y] += A.vals[k] * B.vals[l];
        }
      }
      for (Index y : touched) {
        out.push_back({r, y, acc[y]});
        acc[y] = 0.0;
        mark[y] = 0;
      }
    }
    blocks.push_back(block_from_entries(A.n, std::move(out)));
  }
  return PropagationOperator(compose(a.propagation(), b.propagation()), std::move(blocks));
}

PropagationOperator adjoint(const PropagationOperator& a) {
  std::vector<SparseBlock> blocks;
  for (const SparseBlock& b : a.blocks_) {
    std::vector<Entry> t;
    for (const Entry& e : entries_of(b)) t.push_back({e.y, e.x, e.value});
    blocks.push_back(block_from_entries(b.n, std::move(t)));
  }
  return PropagationOperator(inverse(a.propagation()), std::move(blocks));
}

PropagationOperator add(const PropagationOperator& a, const PropagationOperator& b) {
  require_same_space(a, b);
  std::vector<SparseBlock> blocks;
  for (std::size_t c = 0; c < a.num_components(); ++c) {
    std::vector<Entry> all = entries_of(a.blocks_[c]);
    for (const Entry& e : entries_of(b.blocks_[c])) all.push_back(e);
    blocks.push_back(block_from_entries(a.blocks_[c].n, std::move(all)));
  }
  return PropagationOperator(relation_union(a.propagation(), b.propagation()), std::move(blocks));
}

PropagationOperator scale(const PropagationOperator& a, double factor) {
  std::vector<SparseBlock> blocks = a.blocks_;
  if (factor == 0.0) {
    for (SparseBlock& b : blocks) b = block_from_entries(b.n, {});
  } else {
    for (SparseBlock& b : blocks) {
      for (double& v : b.vals) v *= factor;
    }
  }
  return PropagationOperator(a.propagation(), std::move(blocks));
}

double operator_norm(const PropagationOperator& a, std::size_t component, double tol) {
  if (!(tol > 0.0)) throw Error("tolerance must be positive");
  const SparseBlock& b = a.block(component);
  if (b.nnz() == 0) return 0.0;
  if (b.n <= kDenseLimit) {
    PointSet all(b.n);
    for (Index i = 0; i < b.n; ++i) all[i] = i;
    return ColumnView(a, component).compressed_norm(all, tol);
  }
  std::vector<double> tmp(b.n);
  MatVec ata = [&](std::span<const double> x, std::span<double> y) {
    b.apply(x, tmp);
    b.apply_transpose(tmp, y);
  };
  return std::sqrt(std::max(top_eigenvalue(b.n, ata, tol), 0.0));
}

std::vector<double> operator_norms(const PropagationOperator& a, double tol) {
  std::vector<double> out;
  for (std::size_t c = 0; c < a.num_components(); ++c) out.push_back(operator_norm(a, c, tol));
  return out;
}

ColumnView::ColumnView(const PropagationOperator& a, std::size_t component) {
  const SparseBlock& b = a.block(component);
  n_ = b.n;
  cols_.resize(b.n);
  for (Index r = 0; r < b.n; ++r) {
    for (std::size_t k = b.row_ptr[r]; k < b.row_ptr[r + 1]; ++k) cols_[b.cols[k]].emplace_back(r, b.vals[k]);
  }
}

double ColumnView::compressed_norm(std::span<const Index> y, double tol) const {
  PointSet ys(y.begin(), y.end());
  canonicalize(ys);
  if (ys.empty()) return 0.0;
  if (ys.back() >= n_) throw Error("point outside component");
  const std::size_t m = ys.size();

  // Gram matrix of the selected columns.
  std::vector<double> gram(m * m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& ci = cols_[ys[i]];
    for (std::size_t j = i; j < m; ++j) {
      const auto& cj = cols_[ys[j]];
      double s = 0.0;
      for (std::size_t p = 0, q = 0; p < ci.size() && q < cj.size();) {
        if (ci[p].first < cj[q].first) {
          ++p;
        } else if (cj[q].first < ci[p].first) {
          ++q;
        } else {
          s += ci[p++].second * cj[q++].second;
        }
      }
      gram[i * m + j] = gram[j * m + i] = s;
    }
  }
  double top = 0.0;
  if (m <= kDenseLimit) {
    top = symmetric_eigenvalues(std::move(gram), m).front();
  } else {
    MatVec g = [&](std::span<const double> x, std::span<double> out) {
      for (std::size_t i = 0; i < m; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < m; ++j) s += gram[i * m + j] * x[j];
        out[i] = s;
      }
    };
    top = top_eigenvalue(m, g, tol);
  }
  return std::sqrt(std::max(top, 0.0));
}

double compressed_norm(const PropagationOperator& a, std::size_t component, std::span<const Index> y,
                       double tol) {
  return ColumnView(a, component).compressed_norm(y, tol);
}

}  // namespace coarsebox
