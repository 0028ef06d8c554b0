#include "coarsebox/onlp.hpp"

#include <algorithm>
#include <cmath>

#include "coarsebox/parallel.hpp"

namespace coarsebox {

LocalizationReport localization_ratio(const PropagationOperator& a, const Relation& f, std::size_t component,
                                      double tol, unsigned jobs) {
  if (!a.propagation().same_space(f)) throw MismatchedSpaceError();
  LocalizationReport rep;
  rep.component = component;
  rep.operator_norm = operator_norm(a, component, tol);
  if (rep.operator_norm == 0.0) {
    throw Error("operator vanishes on component " + std::to_string(component));
  }

  const std::vector<PointSet> fb = balls(f, component);
  const ColumnView cols(a, component);
  rep.per_center_ratios.assign(fb.size(), 0.0);
  parallel_for(fb.size(), jobs, [&](std::size_t x) {
    rep.per_center_ratios[x] = cols.compressed_norm(fb[x], tol) / rep.operator_norm;
  });
  const auto it = std::max_element(rep.per_center_ratios.begin(), rep.per_center_ratios.end());
  rep.best_ratio = *it;
  rep.best_ball_center = {static_cast<Index>(component),
                          static_cast<Index>(it - rep.per_center_ratios.begin())};
  return rep;
}

std::vector<double> WitnessWeights::support_weights() const {
  std::vector<double> out;
  out.reserve(support.size());
  for (Index p : support) out.push_back(weights[p]);
  return out;
}

WitnessWeights extract_weights(const PropagationOperator& a, std::size_t component, std::span<const Index> forbidden,
                               double tol) {
  const Index n = a.space()->size(component);
  PointSet banned(forbidden.begin(), forbidden.end());
  canonicalize(banned);
  PointSet rest;
  for (Index p = 0; p < n; ++p) {
    if (!std::binary_search(banned.begin(), banned.end(), p)) rest.push_back(p);
  }
  if (rest.empty()) throw Error("every point of component " + std::to_string(component) + " is forbidden");

  const PropagationOperator cut = a.without_columns(component, banned);
  const SparseBlock& blk = cut.block(component);
  if (blk.nnz() == 0) throw Error("restricted operator vanishes on component " + std::to_string(component));

  // b = P a'^T a' P acting on l^2(rest).
  const std::size_t m = rest.size();
  std::vector<double> full(n, 0.0), mid(n, 0.0), back(n, 0.0);
  MatVec b = [&](std::span<const double> x, std::span<double> y) {
    std::fill(full.begin(), full.end(), 0.0);
    for (std::size_t i = 0; i < m; ++i) full[rest[i]] = x[i];
    blk.apply(full, mid);
    blk.apply_transpose(mid, back);
    for (std::size_t i = 0; i < m; ++i) y[i] = back[rest[i]];
  };
  PowerIterationOptions opts;
  opts.tol = tol;
  opts.residual_tol = 1e-10;
  opts.max_iterations = 100 * m + 10000;
  EigenEstimate est = top_eigenpair(m, b, opts);

  WitnessWeights wit;
  wit.component = component;
  wit.source_eigenvalue = est.value;
  wit.residual = est.residual;
  wit.weights.assign(n, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double v = est.vector[i] * est.vector[i];
    if (v >= 1e-14) {
      wit.weights[rest[i]] = v;
      wit.support.push_back(rest[i]);
      total += v;
    }
  }
  for (double& v : wit.weights) v /= total;
  return wit;
}

WitnessCheck verify_witness_inequality(const WitnessWeights& wit, const PropagationOperator& a, const Relation& f,
                                       ScanMode mode, std::size_t cap, double threshold) {
  const Relation& t = a.propagation();
  if (!t.same_space(f)) throw MismatchedSpaceError();
  const Relation s = compose(inverse(t), t);
  const SubsetScan scan = scan_bounded_subsets(s, f, wit.component, wit.weights, wit.support, mode, cap);
  WitnessCheck out;
  out.min_ratio = scan.min_ratio;
  out.argmin = scan.argmin;
  out.threshold = threshold;
  out.holds = scan.min_ratio >= threshold;
  out.exact = scan.exact;
  return out;
}

}  // namespace coarsebox
