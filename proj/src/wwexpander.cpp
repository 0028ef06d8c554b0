#include "coarsebox/wwexpander.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>

#include "coarsebox/parallel.hpp"

namespace coarsebox {

std::string to_string(ScanMode mode) {
  switch (mode) {
    case ScanMode::exact: return "exact";
    case ScanMode::heuristic: return "heuristic";
    case ScanMode::automatic: return "auto";
  }
  return "exact";
}

ScanMode parse_scan_mode(const std::string& text) {
  if (text == "exact") return ScanMode::exact;
  if (text == "heuristic") return ScanMode::heuristic;
  if (text == "auto") return ScanMode::automatic;
  throw Error("unknown mode '" + text + "' (expected exact, heuristic or auto)");
}

namespace {

__extension__ using Wide = __int128;

constexpr long double kTieTolerance = 1e-12L;

struct Ball {
  Index center = 0;
  PointSet points;
};

struct Best {
  long double ratio = 0.0L;
  PointSet set;
  bool found = false;

  // Smaller ratio wins; near-equal ratios fall back to size, then lexicographic order.
  void offer(long double ratio_in, const PointSet& candidate) {
    if (!found) {
      ratio = ratio_in;
      set = candidate;
      found = true;
      return;
    }
    const long double scale = std::max(std::abs(ratio), 1.0L);
    if (ratio_in < ratio - kTieTolerance * scale) {
      ratio = ratio_in;
      set = candidate;
    } else if (ratio_in <= ratio + kTieTolerance * scale) {
      if (candidate.size() < set.size() || (candidate.size() == set.size() && candidate < set)) {
        ratio = std::min(ratio, ratio_in);
        set = candidate;
      }
    }
  }

  // Cheap pre-check so masks are only materialized for competitive candidates.
  bool competitive(long double ratio_in) const {
    return !found || ratio_in <= ratio + kTieTolerance * std::max(std::abs(ratio), 1.0L);
  }
};

// Maximal balls F[x] n support; a ball contained in another is dropped because
// all its subsets are enumerated with the larger one.
std::vector<Ball> maximal_balls(const Relation& f, std::size_t component, std::span<const Index> support) {
  const Index n = f.space()->size(component);
  std::vector<char> allowed(n, support.empty() ? 1 : 0);
  for (Index s : support) allowed.at(s) = 1;

  std::vector<PointSet> raw = balls(f, component);
  std::vector<Ball> uniq;
  for (Index x = 0; x < n; ++x) {
    PointSet b;
    for (Index p : raw[x]) {
      if (allowed[p]) b.push_back(p);
    }
    if (!b.empty()) uniq.push_back({x, std::move(b)});
  }
  std::stable_sort(uniq.begin(), uniq.end(), [](const Ball& a, const Ball& b) { return a.points < b.points; });
  uniq.erase(std::unique(uniq.begin(), uniq.end(), [](const Ball& a, const Ball& b) { return a.points == b.points; }),
             uniq.end());

  std::vector<std::vector<std::size_t>> containing(n);
  for (std::size_t i = 0; i < uniq.size(); ++i) {
    for (Index p : uniq[i].points) containing[p].push_back(i);
  }
  std::vector<Ball> out;
  for (std::size_t i = 0; i < uniq.size(); ++i) {
    const PointSet& b = uniq[i].points;
    bool dominated = false;
    for (std::size_t j : containing[b.front()]) {
      if (j == i || uniq[j].points.size() <= b.size()) continue;
      if (std::includes(uniq[j].points.begin(), uniq[j].points.end(), b.begin(), b.end())) {
        dominated = true;
        break;
      }
    }
    if (!dominated) out.push_back(std::move(uniq[i]));
  }
  return out;
}

PointSet mask_to_set(const PointSet& ball, std::uint64_t mask) {
  PointSet s;
  for (std::size_t k = 0; k < ball.size(); ++k) {
    if (mask >> k & 1U) s.push_back(ball[k]);
  }
  return s;
}

// Every nonempty subset of the ball in Gray-code order. Weight sums are kept in
// 128-bit fixed point so the running totals are exact.
void enumerate_ball(const PointSet& ball, const std::vector<PointSet>& t_cols, std::span<const double> w,
                    std::vector<int>& slot, Best& best) {
  const std::size_t b = ball.size();
  std::vector<Index> universe;
  std::vector<std::vector<int>> nbrs(b);
  for (std::size_t k = 0; k < b; ++k) {
    for (Index z : t_cols[ball[k]]) {
      if (slot[z] < 0) {
        slot[z] = static_cast<int>(universe.size());
        universe.push_back(z);
      }
      nbrs[k].push_back(slot[z]);
    }
  }
  double wmax = 0.0;
  for (Index z : universe) wmax = std::max(wmax, w[z]);
  for (Index p : ball) wmax = std::max(wmax, w[p]);
  const int shift = 100 - std::ilogb(wmax > 0 ? wmax : 1.0);
  auto fixed = [&](double v) { return static_cast<Wide>(std::ldexp(v, shift)); };

  std::vector<Wide> wu(universe.size()), wb(b);
  for (std::size_t i = 0; i < universe.size(); ++i) wu[i] = fixed(w[universe[i]]);
  for (std::size_t k = 0; k < b; ++k) wb[k] = fixed(w[ball[k]]);

  std::vector<int> count(universe.size(), 0);
  std::vector<char> in(b, 0);
  Wide wy = 0, wty = 0;
  const std::uint64_t total = std::uint64_t{1} << b;
  for (std::uint64_t i = 1; i < total; ++i) {
    const int k = std::countr_zero(i);
    if (!in[k]) {
      in[k] = 1;
      wy += wb[k];
      for (int u : nbrs[k]) {
        if (count[u]++ == 0) wty += wu[u];
      }
    } else {
      in[k] = 0;
      wy -= wb[k];
      for (int u : nbrs[k]) {
        if (--count[u] == 0) wty -= wu[u];
      }
    }
    if (wy <= 0) continue;
    const long double ratio = static_cast<long double>(wty) / static_cast<long double>(wy);
    if (best.competitive(ratio)) best.offer(ratio, mask_to_set(ball, i ^ (i >> 1)));
  }
  for (Index z : universe) slot[z] = -1;
}

double ratio_of(const PointSet& y, const std::vector<PointSet>& t_cols, std::span<const double> w,
                std::vector<char>& mark) {
  double wy = 0.0, wty = 0.0;
  std::vector<Index> hit;
  for (Index p : y) {
    wy += w[p];
    for (Index z : t_cols[p]) {
      if (!mark[z]) {
        mark[z] = 1;
        hit.push_back(z);
      }
    }
  }
  std::sort(hit.begin(), hit.end());
  for (Index z : hit) {
    wty += w[z];
    mark[z] = 0;
  }
  return wty / wy;
}

// Balls up to this size start a greedy descent from every point; larger balls
// start only from their center so the heuristic stays near-linear per ball.
constexpr std::size_t kAllStartsLimit = 64;

// Greedy descent inside one ball: repeatedly add the point giving the smallest
// ratio while that improves it. Candidates are ball points whose T-image meets
// T[Y]. The whole ball is also tried.
void descend_ball(const Ball& ball, const std::vector<PointSet>& t_cols, const std::vector<PointSet>& t_rows,
                  std::span<const double> w, std::vector<char>& mark, std::vector<int>& count,
                  std::vector<int>& slot, Best& best) {
  const PointSet& pts = ball.points;
  best.offer(ratio_of(pts, t_cols, w, mark), pts);
  for (std::size_t k = 0; k < pts.size(); ++k) slot[pts[k]] = static_cast<int>(k);

  std::vector<std::size_t> starts;
  if (pts.size() <= kAllStartsLimit) {
    for (std::size_t k = 0; k < pts.size(); ++k) starts.push_back(k);
  } else {
    starts.push_back(slot[ball.center] >= 0 ? static_cast<std::size_t>(slot[ball.center]) : 0);
  }

  std::vector<char> in(pts.size(), 0);
  std::vector<char> queued(pts.size(), 0);
  std::vector<std::size_t> frontier;
  std::vector<Index> touched;
  for (std::size_t s : starts) {
    double wy = 0.0, wty = 0.0;
    auto take = [&](std::size_t k) {
      in[k] = 1;
      wy += w[pts[k]];
      for (Index z : t_cols[pts[k]]) {
        if (count[z]++ == 0) {
          wty += w[z];
          touched.push_back(z);
          for (Index p : t_rows[z]) {
            const int q = slot[p];
            if (q >= 0 && !in[q] && !queued[q]) {
              queued[q] = 1;
              frontier.push_back(static_cast<std::size_t>(q));
            }
          }
        }
      }
    };
    take(s);
    PointSet y{pts[s]};
    best.offer(wty / wy, y);
    for (;;) {
      double step_best = wty / wy;
      std::size_t pick = pts.size();
      std::size_t keep = 0;
      for (std::size_t k : frontier) {
        if (in[k]) continue;
        frontier[keep++] = k;
        double grow = 0.0;
        for (Index z : t_cols[pts[k]]) {
          if (count[z] == 0) grow += w[z];
        }
        const double r = (wty + grow) / (wy + w[pts[k]]);
        if (r < step_best || (r == step_best && pick < pts.size() && k < pick)) {
          step_best = r;
          pick = k;
        }
      }
      frontier.resize(keep);
      if (pick == pts.size()) break;
      take(pick);
      y.insert(std::upper_bound(y.begin(), y.end(), pts[pick]), pts[pick]);
      best.offer(ratio_of(y, t_cols, w, mark), y);
    }
    for (Index z : touched) count[z] = 0;
    touched.clear();
    frontier.clear();
    std::fill(in.begin(), in.end(), 0);
    std::fill(queued.begin(), queued.end(), 0);
  }
  for (Index p : pts) slot[p] = -1;
}

}  // namespace

SubsetScan scan_bounded_subsets(const Relation& t, const Relation& f, std::size_t component,
                                std::span<const double> weights, std::span<const Index> support, ScanMode mode,
                                std::size_t cap) {
  if (!t.same_space(f)) throw MismatchedSpaceError();
  const Index n = t.space()->size(component);
  if (weights.size() != n) throw Error("weight vector does not match the component size");
  if (cap > 62) throw Error("exhaustive cap above 62 points is not supported");

  const std::vector<Ball> bs = maximal_balls(f, component, support);
  if (bs.empty()) throw Error("no nonempty bounded set in component " + std::to_string(component));
  for (Index p : support.empty() ? std::span<const Index>() : support) {
    if (!(weights[p] > 0.0)) throw Error("support points must carry positive weight");
  }

  SubsetScan out;
  out.balls_scanned = bs.size();
  for (const Ball& b : bs) out.largest_ball = std::max(out.largest_ball, b.points.size());

  bool exact = mode == ScanMode::exact;
  if (mode == ScanMode::automatic) exact = out.largest_ball <= cap;
  if (exact) {
    for (const Ball& b : bs) {
      if (b.points.size() > cap) throw CapExceededError(component, b.center, b.points.size(), cap);
    }
  }

  const std::vector<PointSet> t_cols = balls(t, component);
  Best best;
  if (exact) {
    std::vector<int> slot(n, -1);
    for (const Ball& b : bs) enumerate_ball(b.points, t_cols, weights, slot, best);
  } else {
    const std::vector<PointSet> t_rows = balls(inverse(t), component);
    std::vector<char> mark(n, 0);
    std::vector<int> count(n, 0);
    std::vector<int> slot(n, -1);
    for (const Ball& b : bs) descend_ball(b, t_cols, t_rows, weights, mark, count, slot, best);
  }

  std::vector<char> mark(n, 0);
  out.argmin = best.set;
  out.min_ratio = ratio_of(best.set, t_cols, weights, mark);
  out.exact = exact;
  return out;
}

BoundaryRatio min_boundary_ratio(const WeightedComponent& w, const Relation& t, const Relation& f, ScanMode mode,
                                 std::size_t cap) {
  const std::size_t c = w.component();
  if (c >= t.num_components()) throw Error("weighted component index out of range");
  if (w.size() != t.space()->size(c)) throw Error("weights do not match the component size");

  BoundaryRatio out;
  Relation tt = t;
  for (Index i = 0; i < t.space()->size(c); ++i) {
    if (!t.contains(c, i, i)) {
      out.diagonal_added = true;
      tt = relation_union(t, Relation::diagonal(t.space()));
      break;
    }
  }
  const SubsetScan s = scan_bounded_subsets(tt, f, c, w.weights(), {}, mode, cap);
  out.min_ratio = s.min_ratio;
  out.argmin = s.argmin;
  out.exact = s.exact;
  out.balls_scanned = s.balls_scanned;
  return out;
}

WWScan ww_scan(const std::vector<WeightedComponent>& weights, const Relation& t,
               const std::vector<Relation>& f_sequence, double c, ScanMode mode, std::size_t cap, unsigned jobs) {
  const std::size_t m = t.num_components();
  if (weights.size() != m) throw Error("one weight vector per component is required");
  for (std::size_t i = 0; i < m; ++i) {
    if (weights[i].component() != i) throw Error("weights must be listed in component order");
  }
  if (f_sequence.empty()) throw Error("F sequence must not be empty");
  for (std::size_t i = 0; i + 1 < f_sequence.size(); ++i) {
    if (!f_sequence[i].is_subset_of(f_sequence[i + 1])) throw Error("F sequence must be increasing");
  }

  WWScan scan;
  scan.consistent = true;
  const std::size_t window = (m + 1) / 2;
  for (const Relation& f : f_sequence) {
    ExpansionReport rep{t, f, c, {}, m - window, 0.0, false, false};
    rep.per_component.resize(m);
    std::vector<char> added(m, 0);
    parallel_for(m, jobs, [&](std::size_t k) {
      const BoundaryRatio r = min_boundary_ratio(weights[k], t, f, mode, cap);
      rep.per_component[k] = {k, r.min_ratio, r.argmin, r.exact};
      added[k] = r.diagonal_added;
    });
    rep.diagonal_added = std::any_of(added.begin(), added.end(), [](char v) { return v != 0; });
    rep.tail_min = rep.per_component[rep.window_start].min_ratio;
    for (std::size_t k = rep.window_start; k < m; ++k) {
      rep.tail_min = std::min(rep.tail_min, rep.per_component[k].min_ratio);
    }
    rep.passes = rep.tail_min > 1.0 + c;
    scan.consistent = scan.consistent && rep.passes;
    scan.reports.push_back(std::move(rep));
  }
  return scan;
}

}  // namespace coarsebox
