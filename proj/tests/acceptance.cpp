// Acceptance run: one PASS/FAIL line per criterion with its pinned tolerance and
// time limit. Exit status is nonzero when any criterion fails.

#include <Eigen/Eigenvalues>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>
#include <unistd.h>
#include <vector>

#include "coarsebox/cli.hpp"
#include "coarsebox/folner.hpp"
#include "coarsebox/generators.hpp"
#include "coarsebox/label.hpp"
#include "coarsebox/onlp.hpp"
#include "coarsebox/propa.hpp"
#include "coarsebox/roeop.hpp"
#include "coarsebox/spacefile.hpp"
#include "coarsebox/wwexpander.hpp"
#include "support/fuzz.hpp"
#include "support/oracles.hpp"

using namespace coarsebox;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  /// Records a failed check; the first few messages are kept.
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    if (pass || detail.size() < 400) detail += (detail.empty() ? "" : "; ") + what;
    pass = false;
  }
  void note(const std::string& text) { detail += (detail.empty() ? "" : "; ") + text; }
};

struct Criterion {
  int id;
  std::string name;
  double time_limit_s;
  std::function<Outcome()> run;
};

std::string fmt(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

unsigned worker_count() { return std::max(1U, std::min(8U, std::thread::hardware_concurrency())); }

std::vector<WeightedComponent> uniform_weights(const SpacePtr& sp) {
  std::vector<WeightedComponent> out;
  for (std::size_t c = 0; c < sp->num_components(); ++c) out.push_back(WeightedComponent::uniform(c, sp->size(c)));
  return out;
}

class TempDir {
 public:
  TempDir()
      : path_(std::filesystem::temp_directory_path() / ("coarsebox-acceptance-" + std::to_string(::getpid()))) {
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

struct CliRun {
  int code = 0;
  std::string out;
};

CliRun cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str()};
}

std::string without_timestamp(const std::string& report) {
  std::istringstream in(report);
  std::string line;
  std::string kept;
  while (std::getline(in, line)) {
    if (line.find("\"generated_at\"") == std::string::npos) kept += line + '\n';
  }
  return kept;
}

// 1. Relation algebra identities against each other and the boolean-matrix oracle.
Outcome relation_algebra() {
  Outcome o;
  fuzz::Rng rng(1);
  for (int i = 0; i < 500; ++i) {
    auto sp = fuzz::random_space(rng, 3, 12);
    const Relation a = fuzz::random_relation(rng, sp, 0.2);
    const Relation b = fuzz::random_relation(rng, sp, 0.2);
    const Relation c = fuzz::random_relation(rng, sp, 0.2);
    const std::string tag = "case " + std::to_string(i);
    o.expect(compose(compose(a, b), c) == compose(a, compose(b, c)), tag + ": associativity");
    o.expect(compose(a, b) == oracle::compose(a, b), tag + ": compose vs oracle");
    o.expect(inverse(compose(a, b)) == compose(inverse(b), inverse(a)), tag + ": inverse anti-homomorphism");
    for (std::size_t k = 0; k < sp->num_components(); ++k) {
      const PointSet y = fuzz::random_subset(rng, sp->size(k), 0.3);
      o.expect(ball(compose(a, b), k, y) == ball(a, k, ball(b, k, y)), tag + ": ball composition");
    }
    const Relation ab = relation_union(a, b);
    for (unsigned n = 1; n <= 3; ++n) {
      o.expect(widen(a, n).is_subset_of(widen(a, n + 1)), tag + ": widen monotone in n");
      o.expect(widen(a, n).is_subset_of(widen(ab, n)), tag + ": widen monotone in the relation");
    }
    o.expect(widen(a, 2) == oracle::reachability(a, 2), tag + ": widen vs oracle");
  }
  if (o.pass) o.note("500 cases exact");
  return o;
}

// 2. Labels of bounded-degree relations.
Outcome label_suite() {
  Outcome o;
  fuzz::Rng rng(2);
  std::size_t worst_slack = 100;
  for (int i = 0; i < 200; ++i) {
    auto sp = fuzz::random_space(rng, 3, 14);
    const Relation r = fuzz::random_bounded_degree(rng, sp, rng.between(1, 6));
    const std::size_t d = max_degree(r);
    o.expect(d <= 6, "degree above 6");
    const Label l = build_label(r);
    o.expect(verify_label(l), "case " + std::to_string(i) + ": verify_label");
    o.expect(l.non_diagonal_classes() <= 2 * d - 1, "case " + std::to_string(i) + ": too many classes");
    worst_slack = std::min(worst_slack, 2 * d - 1 - std::min(l.non_diagonal_classes(), 2 * d - 1));
  }
  if (o.pass) o.note("200 labels valid, min slack to 2d-1 = " + std::to_string(worst_slack));
  return o;
}

// 3. Operator norms against a dense SVD; path adjacency norms in closed form.
Outcome spectral_suite() {
  Outcome o;
  constexpr double kTol = 1e-8;
  fuzz::Rng rng(3);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    auto sp = make_space({static_cast<Index>(rng.between(2, 64))});
    const Relation prop = widen(fuzz::random_bounded_degree(rng, sp, rng.between(1, 4)), rng.between(1, 2));
    const auto a = fuzz::random_operator(rng, prop);
    const double ref = oracle::operator_norm(a, 0);
    const double got = operator_norm(a, 0);
    worst = std::max(worst, std::abs(got - ref));
    o.expect(std::abs(got - ref) <= kTol, "random operator " + std::to_string(i) + ": |diff| " + fmt(got - ref));
  }
  double worst_path = 0.0;
  for (Index len = 2; len <= 12; ++len) {
    const auto adj = PropagationOperator::adjacency(oracle::path_relation(len));
    const double closed = 2.0 * std::cos(std::numbers::pi / static_cast<double>(len + 1));
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(oracle::dense(adj, 0));
    const double dense = es.eigenvalues().cwiseAbs().maxCoeff();
    const double got = operator_norm(adj, 0);
    worst_path = std::max({worst_path, std::abs(got - closed), std::abs(dense - closed)});
    o.expect(std::abs(got - closed) <= kTol && std::abs(dense - closed) <= kTol, "path " + std::to_string(len));
  }
  o.note("max |diff| random " + fmt(worst, 3) + ", paths " + fmt(worst_path, 3) + " (tol 1e-8)");
  return o;
}

// 4. Localization over maximal balls equals the supremum over all bounded sets.
Outcome onlp_reduction() {
  Outcome o;
  constexpr double kTol = 1e-10;
  fuzz::Rng rng(4);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    auto sp = make_space({static_cast<Index>(rng.between(4, 14))});
    const auto a = fuzz::random_operator(rng, fuzz::random_relation(rng, sp, 0.35), 0.9);
    if (a.block(0).nnz() == 0) {
      --i;
      continue;
    }
    const Relation f = widen(fuzz::random_bounded_degree(rng, sp, 2), rng.between(1, 2));
    const double got = localization_ratio(a, f, 0).best_ratio;
    const double ref = oracle::brute_localization(a, f, 0);
    worst = std::max(worst, std::abs(got - ref));
    o.expect(std::abs(got - ref) <= kTol, "instance " + std::to_string(i) + ": |diff| " + fmt(got - ref));
  }
  o.note("50 instances, max |diff| " + fmt(worst, 3) + " (tol 1e-10)");
  return o;
}

// 5. Bad localization forces the witness inequality; the pipeline runs on Margulis(12).
Outcome witness_pipeline() {
  Outcome o;
  constexpr double kTol = 1e-6;
  fuzz::Rng rng(5);
  int exercised = 0;
  double worst = std::numeric_limits<double>::infinity();

  std::vector<std::pair<Relation, Relation>> instances;  // (propagation of a, F)
  for (int i = 0; i < 120; ++i) {
    auto sp = make_space({static_cast<Index>(rng.between(10, 24))});
    const Relation base = fuzz::random_bounded_degree(rng, sp, rng.between(3, 5));
    instances.push_back({widen(base, rng.between(2, 3)), Relation::diagonal(sp)});
  }
  for (const SpaceFile& file : {gen_cycles(std::vector<Index>{30, 40}), gen_margulis(std::vector<Index>{5, 6}),
                                gen_random_regular(3, std::vector<Index>{20, 24}, 11)}) {
    const WeightedSpace ws = realize(file);
    for (unsigned k = 1; k <= 3; ++k) {
      instances.push_back({widen(ws.relation, k), Relation::diagonal(ws.space)});
      instances.push_back({widen(ws.relation, k + 2), ws.relation});
    }
  }
  for (const auto& [prop, f] : instances) {
    const auto a = PropagationOperator::indicator(prop);
    for (std::size_t c = 0; c < prop.num_components(); ++c) {
      if (localization_ratio(a, f, c).best_ratio >= kDefaultLocalizationConstant) continue;
      ++exercised;
      const WitnessWeights wit = extract_weights(a, c);
      const WitnessCheck check = verify_witness_inequality(wit, a, f, ScanMode::automatic);
      worst = std::min(worst, check.min_ratio);
      o.expect(check.min_ratio >= 3.0 - kTol, "witness ratio " + fmt(check.min_ratio) + " below 3");
    }
  }
  o.expect(exercised >= 20, "only " + std::to_string(exercised) + " instances localize badly");

  TempDir dir;
  const std::string marg = dir.file("margulis12.txt");
  cli({"gen", "margulis", "12", "--out", marg});
  const auto start = std::chrono::steady_clock::now();
  const CliRun run = cli({"pipeline", marg});
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.expect(run.code != kExitError, "pipeline on Margulis(12) exited with an error");
  o.expect(secs < 60.0, "pipeline took " + fmt(secs) + " s");
  o.note(std::to_string(exercised) + " badly localized instances, min witness ratio " + fmt(worst) +
         " (>= 3 - 1e-6); pipeline Margulis(12) exit " + std::to_string(run.code) + " in " + fmt(secs, 3) + " s");
  return o;
}

// Exhaustive enumeration inside every F-ball with integer counts (uniform weights).
std::pair<long, long> exhaustive_min_fraction(const Relation& t, const Relation& f) {
  const auto t_cols = oracle::column_masks(t, 0);
  const auto f_cols = oracle::column_masks(f, 0);
  std::pair<long, long> best{1, 0};  // numerator / denominator; denominator 0 = infinity
  for (std::uint64_t ball : f_cols) {
    const PointSet pts = oracle::mask_points(ball);
    for (std::uint64_t sub = 1; sub < (std::uint64_t{1} << pts.size()); ++sub) {
      std::uint64_t y = 0;
      std::uint64_t image = 0;
      for (std::size_t k = 0; k < pts.size(); ++k) {
        if (sub >> k & 1U) {
          y |= std::uint64_t{1} << pts[k];
          image |= t_cols[pts[k]];
        }
      }
      const long num = std::popcount(image);
      const long den = std::popcount(y);
      if (best.second == 0 || num * best.second < best.first * den) best = {num, den};
    }
  }
  return best;
}

// 6. The cycle boundary-ratio family.
Outcome cycle_family() {
  Outcome o;
  constexpr double kRelTol = 1e-14;
  for (Index n : {12U, 20U, 30U}) {
    auto sp = make_space({n});
    const Relation t = oracle::cycle_band(sp, 1);
    const auto w = WeightedComponent::uniform(0, n);
    for (Index s = 1; s <= 3; ++s) {
      const Relation f = oracle::cycle_band(sp, s);
      const long num = 2 * s + 3;
      const long den = 2 * s + 1;
      const auto [bn, bd] = exhaustive_min_fraction(t, f);
      const std::string tag = "n=" + std::to_string(n) + " s=" + std::to_string(s);
      o.expect(bn * den == num * bd, tag + ": enumeration gives " + std::to_string(bn) + "/" + std::to_string(bd));
      const double got = min_boundary_ratio(w, t, f, ScanMode::exact).min_ratio;
      const double closed = static_cast<double>(num) / static_cast<double>(den);
      o.expect(std::abs(got - closed) <= kRelTol * closed, tag + ": library " + fmt(got, 17));
    }
  }
  if (o.pass) o.note("9 cases: enumeration exact as integers, library within 1e-14 relative");
  return o;
}

// 7. Folner search, co-area identity and certificate re-verification.
Outcome folner_suite() {
  Outcome o;
  constexpr double kCoareaTol = 1e-9;
  auto c100 = make_space({100});
  const Relation t100 = oracle::cycle_band(c100, 1);
  const auto u100 = WeightedComponent::uniform(0, 100);
  const FolnerSearch s = folner_search(0, t100, build_label(t100), 0.1, u100, Kernel::tent, 1, 12);
  o.expect(s.certificate.has_value(), "C_100 search found no certificate");
  if (s.certificate) {
    o.expect(s.certificate->f == oracle::cycle_band(c100, 10), "C_100 certificate is not the band s=10");
    const double ratio = s.certificate->per_component[0].ratio();
    o.expect(std::abs(ratio - 23.0 / 21.0) <= 1e-12, "C_100 ratio " + fmt(ratio, 17));
    o.expect(std::abs(oracle::folner_ratio(t100, s.certificate->f, u100) - ratio) <= 1e-12, "C_100 re-verification");
  }

  fuzz::Rng rng(7);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    auto sp = make_space({static_cast<Index>(rng.between(2, 12))});
    const Label l = build_label(fuzz::random_bounded_degree(rng, sp, rng.between(2, 5)));
    const PairFunction eta = fuzz::random_pair_function(rng, sp, 0.35);
    const auto w = WeightedComponent::normalized(0, fuzz::random_weights(rng, sp->size(0)));
    for (std::size_t j = 1; j < l.classes.size(); ++j) {
      const double diff = std::abs(level_set_boundary_integral(eta, l.classes[j], w) -
                                   oracle::brute_positive_defect(eta, l.classes[j], w));
      worst = std::max(worst, diff);
      o.expect(diff <= kCoareaTol, "co-area case " + std::to_string(i) + " class " + std::to_string(j));
    }
  }

  int certificates = 0;
  for (int i = 0; i < 60; ++i) {
    auto sp = make_space({static_cast<Index>(rng.between(3, 30))});
    const Relation t = widen(fuzz::random_bounded_degree(rng, sp, 2), 1);
    const auto w = WeightedComponent::normalized(0, fuzz::random_weights(rng, sp->size(0)));
    const double eps = rng.uniform(0.05, 0.5);
    const Kernel kernel = i % 2 == 0 ? Kernel::tent : Kernel::heat;
    const FolnerSearch fs = folner_search(0, t, build_label(t), eps, w, kernel, 1, 6);
    if (!fs.certificate) continue;
    ++certificates;
    const double ratio = oracle::folner_ratio(t, fs.certificate->f, w);
    o.expect(ratio < 1.0 + eps, "certificate " + std::to_string(i) + " fails re-verification");
  }
  o.note("C_100 radius " + std::to_string(s.certified_radius) + " ratio 23/21; co-area max |diff| " +
         fmt(worst, 3) + " (tol 1e-9); " + std::to_string(certificates) + " fuzzed certificates re-verified");
  return o;
}

// 8. Property-A families in closed form.
Outcome propa_suite() {
  Outcome o;
  auto c40 = make_space({40});
  const Relation t = oracle::cycle_band(c40, 1);
  double worst = 0.0;
  for (unsigned r = 1; r <= 6; ++r) {
    const double got = certificate_quality(ball_average_family(0, t, r), t).epsilon;
    const double closed = std::sqrt(2.0 / (2.0 * r + 1.0));
    worst = std::max(worst, std::abs(got - closed));
    o.expect(std::abs(got - closed) <= 1e-12, "R=" + std::to_string(r) + ": " + fmt(got, 17));
  }
  const double delta = certificate_quality(heat_family(0, build_label(t), 0), t).epsilon;
  o.expect(delta == std::sqrt(2.0), "delta family " + fmt(delta, 17));
  o.note("ball family max |diff| " + fmt(worst, 3) + " (tol 1e-12); delta family exactly sqrt(2)");
  return o;
}

// Tanner's bound: for a d-regular multigraph with nontrivial spectral radius
// lambda, |N(Y)| / |Y| >= d^2 / (lambda^2 + (d^2 - lambda^2) |Y| / n). N(Y) lies in
// T[Y], so this bounds the boundary ratio of every set of at most `size` points.
double margulis_ratio_lower_bound(Index side, std::size_t size) {
  const Index n = side * side;
  const auto wrap = [side](long long v) { return static_cast<Eigen::Index>(((v % side) + side) % side); };
  Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(n, n);
  for (Index x = 0; x < side; ++x) {
    for (Index y = 0; y < side; ++y) {
      const long long xi = x;
      const long long yi = y;
      const std::pair<long long, long long> images[] = {
          {xi + 2 * yi, yi}, {xi - 2 * yi, yi}, {xi + 2 * yi + 1, yi}, {xi - 2 * yi - 1, yi},
          {xi, yi + 2 * xi}, {xi, yi - 2 * xi}, {xi, yi + 2 * xi + 1}, {xi, yi - 2 * xi - 1},
      };
      for (const auto& [a, b] : images) adj(wrap(a) * side + wrap(b), x * side + y) += 1.0;
    }
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(adj, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  const double lambda = std::max(std::abs(ev(0)), std::abs(ev(n - 2)));
  const double d2 = 64.0;
  const double l2 = lambda * lambda;
  return d2 / (l2 + (d2 - l2) * static_cast<double>(size) / static_cast<double>(n));
}

// 9. Contrast between amenable-looking and expander sequences.
Outcome contrast() {
  Outcome o;
  const unsigned jobs = worker_count();

  // Cycles and tori: Folner sets exist at eps = 0.1.
  struct Amenable {
    std::string name;
    SpaceFile file;
    unsigned max_radius;
    std::vector<Index> fs;
  };
  const std::vector<Amenable> amenable{
      {"cycles", gen_cycles(std::vector<Index>{40, 60, 80}), 12, {1, 5, 10}},
      {"tori", gen_torus(std::vector<Index>{43, 46}), 24, {1, 10, 20}},
  };
  for (const Amenable& fam : amenable) {
    const WeightedSpace ws = realize(fam.file);
    const auto weights = uniform_weights(ws.space);
    std::string radii;
    for (std::size_t c = 0; c < ws.space->num_components(); ++c) {
      const Label l = build_label(ws.relation);
      const FolnerSearch s = folner_search(c, ws.relation, l, 0.1, weights[c], Kernel::tent, 1, fam.max_radius);
      o.expect(s.certificate.has_value(), fam.name + " component " + std::to_string(c) + " has no Folner set");
      radii += (radii.empty() ? "" : ",") + std::to_string(s.certified_radius);
    }
    std::vector<Relation> fseq;
    for (Index d : fam.fs) fseq.push_back(widen(ws.relation, d));
    const WWScan scan = ww_scan(weights, ws.relation, fseq, 0.1, ScanMode::automatic, kDefaultSubsetCap, jobs);
    o.expect(!scan.consistent, fam.name + ": ww_scan did not refute at c = 0.1");
    o.note(fam.name + " folner radii " + radii + ", tail_min at F-depth " + std::to_string(fam.fs.back()) + " " +
           fmt(scan.reports.back().tail_min));
  }

  // Margulis: expansion survives to F-depth 2, certified by a spectral lower bound.
  const std::vector<Index> sides{8, 12, 16, 20, 24};
  const WeightedSpace marg = realize(gen_margulis(sides));
  const auto mw = uniform_weights(marg.space);
  const std::vector<Relation> fseq{widen(marg.relation, 1), widen(marg.relation, 2)};
  const WWScan scan = ww_scan(mw, marg.relation, fseq, 0.1, ScanMode::automatic, kDefaultSubsetCap, jobs);
  for (const ExpansionReport& r : scan.reports) {
    o.expect(r.tail_min > 1.1, "Margulis tail_min " + fmt(r.tail_min) + " at F-depth <= 2");
  }
  std::string bounds;
  for (std::size_t c = scan.reports.back().window_start; c < sides.size(); ++c) {
    std::size_t largest = 0;
    for (const PointSet& b : balls(fseq.back(), c)) largest = std::max(largest, b.size());
    const double lb = margulis_ratio_lower_bound(sides[c], largest);
    o.expect(lb > 1.1, "spectral lower bound " + fmt(lb) + " on side " + std::to_string(sides[c]));
    bounds += (bounds.empty() ? "" : ",") + fmt(lb, 4);
  }
  o.note("Margulis tail_min depth1 " + fmt(scan.reports[0].tail_min, 4) + " (exact), depth2 " +
         fmt(scan.reports[1].tail_min, 4) + " (heuristic upper), spectral lower bounds on the window " + bounds);

  // Margulis: folner_search is required to fail at every radius up to 4.
  std::string found;
  for (std::size_t c = 0; c < sides.size(); ++c) {
    const FolnerSearch s =
        folner_search(c, marg.relation, build_label(marg.relation), 0.1, mw[c], Kernel::tent, 1, 4);
    if (!s.certificate) continue;
    const double ratio = s.certificate->per_component.front().ratio();
    const double check = oracle::folner_ratio(marg.relation, s.certificate->f, mw[c]);
    o.expect(std::abs(check - ratio) <= 1e-12, "Margulis certificate on side " + std::to_string(sides[c]) +
                                                   " does not re-verify");
    found += (found.empty() ? "" : ", ") + std::to_string(sides[c]) + " at radius " +
             std::to_string(s.certified_radius) + " ratio " + fmt(ratio, 5);
  }
  o.expect(found.empty(), "Margulis folner_search certifies within radius 4 (side " + found + ")");
  return o;
}

// 10. Byte-identical reports for identical invocations, independent of --jobs.
Outcome determinism() {
  Outcome o;
  TempDir dir;
  const std::string rr = dir.file("rr.txt");
  const std::string marg = dir.file("marg.txt");
  const std::string cyc = dir.file("cyc.txt");
  cli({"gen", "random-regular", "12", "16", "--degree", "3", "--seed", "42", "--out", rr});
  cli({"gen", "margulis", "6", "8", "--out", marg});
  cli({"gen", "cycles", "10", "14", "--out", cyc});
  int compared = 0;
  for (const std::string& input : {rr, marg, cyc}) {
    const std::vector<std::vector<std::string>> commands{
        {"label", input},
        {"norms", input, "--power", "2"},
        {"onlp", input, "--f-depth", "1"},
        {"wwexpander", input, "--f-depth", "2", "--mode", "auto"},
        {"folner", input, "--radius", "4"},
        {"propa", input, "--kernel", "heat", "--steps", "2"},
        {"pipeline", input},
    };
    for (const auto& args : commands) {
      const CliRun a = cli(args);
      const CliRun b = cli(args);
      std::vector<std::string> parallel = args;
      parallel.insert(parallel.end(), {"--jobs", "4"});
      const CliRun p = cli(parallel);
      const std::string what = args[0] + " on " + std::filesystem::path(input).filename().string();
      o.expect(a.code != kExitError, what + " failed");
      o.expect(a.code == b.code && without_timestamp(a.out) == without_timestamp(b.out), what + " differs");
      // The parameters block records --jobs; everything else must match.
      std::string pa = without_timestamp(p.out);
      std::string aa = without_timestamp(a.out);
      const auto strip_jobs = [](std::string s) {
        std::istringstream in(s);
        std::string line, kept;
        while (std::getline(in, line)) {
          if (line.find("\"jobs\"") == std::string::npos) kept += line + '\n';
        }
        return kept;
      };
      o.expect(strip_jobs(pa) == strip_jobs(aa), what + " depends on --jobs");
      ++compared;
    }
  }
  if (o.pass) o.note(std::to_string(compared) + " invocations byte-identical apart from generated_at");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "relation algebra", 10.0, relation_algebra},
      {2, "labels", 10.0, label_suite},
      {3, "spectral", 30.0, spectral_suite},
      {4, "ONLP reduction", 60.0, onlp_reduction},
      {5, "witness pipeline", 60.0, witness_pipeline},
      {6, "cycle boundary ratios", 60.0, cycle_family},
      {7, "Folner", 60.0, folner_suite},
      {8, "property A families", 10.0, propa_suite},
      {9, "contrast experiment", 300.0, contrast},
      {10, "determinism", 60.0, determinism},
  };
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));

  int failed = 0;
  for (const Criterion& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.expect(secs < c.time_limit_s, "over the time limit");
    if (!o.pass) ++failed;
    std::cout << "criterion " << c.id << " [" << c.name << "]: " << (o.pass ? "PASS" : "FAIL") << " ("
              << fmt(secs, 3) << " s, limit " << fmt(c.time_limit_s, 3) << " s) " << o.detail << std::endl;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criterion(s) failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
