#include "coarsebox/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "coarsebox/folner.hpp"
#include "coarsebox/generators.hpp"
#include "coarsebox/label.hpp"
#include "coarsebox/onlp.hpp"
#include "coarsebox/parallel.hpp"
#include "coarsebox/propa.hpp"
#include "coarsebox/roeop.hpp"
#include "coarsebox/spacefile.hpp"
#include "coarsebox/wwexpander.hpp"
#include "report.hpp"

namespace coarsebox {

namespace {

using report::Json;
using report::Verdict;

struct Options {
  std::string input;
  std::string out;
  std::optional<double> eps;
  std::optional<double> c;
  std::optional<unsigned> radius;
  std::optional<unsigned> steps;
  std::optional<unsigned> f_depth;
  std::optional<unsigned> power;
  std::size_t cap = kDefaultSubsetCap;
  std::string mode = "exact";
  std::string op = "adjacency";
  std::string kernel = "tent";
  unsigned jobs = 1;
  // gen
  std::string family;
  std::vector<Index> sizes;
  unsigned degree = 3;
  std::uint64_t seed = 0;
};

struct Outcome {
  Json report;
  int code = kExitSuccess;
};

void emit(const std::string& text, const Options& opt, std::ostream& out) {
  if (opt.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(opt.out, std::ios::binary);
  if (!file) throw Error("cannot write '" + opt.out + "'");
  file << text;
  if (!file) throw Error("failed writing '" + opt.out + "'");
}

Json input_json(const Options& opt, const WeightedSpace& ws, const SpaceFile& file) {
  Json j;
  j["path"] = opt.input;
  Json sizes = Json::array();
  for (Index s : ws.space->sizes()) sizes.push_back(s);
  j["components"] = std::move(sizes);
  j["relation_pairs"] = ws.relation.size();
  Json meta = Json::object();
  for (const auto& [k, v] : file.meta) meta[k] = v;
  j["meta"] = std::move(meta);
  return j;
}

Relation f_relation(const Relation& t, unsigned depth) {
  return depth == 0 ? Relation::diagonal(t.space()) : widen(t, depth);
}

PropagationOperator build_operator(const Relation& t, const std::string& kind, unsigned power) {
  if (power == 0) throw Error("--power must be positive");
  PropagationOperator base = kind == "adjacency" ? PropagationOperator::adjacency(t)
                             : kind == "relation" ? PropagationOperator::indicator(t)
                                                  : throw Error("unknown operator '" + kind + "'");
  PropagationOperator a = base;
  for (unsigned k = 1; k < power; ++k) a = multiply(a, base);
  return a;
}

Json operator_params(const std::string& kind, unsigned power) {
  Json j;
  j["operator"] = kind;
  j["power"] = power;
  return j;
}

Outcome cmd_label(const Options&, const WeightedSpace& ws) {
  const Label label = build_label(ws.relation);
  Outcome o;
  o.report["parameters"] = Json::object();
  o.report["result"] = report::to_json(label);
  o.report["verdict"] = report::to_string(verify_label(label) ? Verdict::certified : Verdict::refuted);
  return o;
}

Outcome cmd_norms(const Options& opt, const WeightedSpace& ws) {
  const unsigned power = opt.power.value_or(1);
  const PropagationOperator a = build_operator(ws.relation, opt.op, power);
  std::vector<double> norms(a.num_components());
  parallel_for(norms.size(), opt.jobs, [&](std::size_t c) { norms[c] = operator_norm(a, c); });
  Outcome o;
  o.report["parameters"] = operator_params(opt.op, power);
  Json comps = Json::array();
  for (std::size_t c = 0; c < norms.size(); ++c) {
    Json cj;
    cj["component"] = c;
    cj["mode"] = "numeric";
    cj["operator_norm"] = norms[c];
    comps.push_back(std::move(cj));
  }
  o.report["per_component"] = std::move(comps);
  o.report["verdict"] = report::to_string(Verdict::evidence_only);
  return o;
}

Outcome cmd_onlp(const Options& opt, const WeightedSpace& ws) {
  const unsigned power = opt.power.value_or(1);
  const unsigned depth = opt.f_depth.value_or(1);
  const double c = opt.c.value_or(kDefaultLocalizationConstant);
  const PropagationOperator a = build_operator(ws.relation, opt.op, power);
  const Relation f = f_relation(ws.relation, depth);
  Outcome o;
  Json params = operator_params(opt.op, power);
  params["f_depth"] = depth;
  params["c"] = c;
  o.report["parameters"] = std::move(params);
  Json comps = Json::array();
  bool all = true;
  for (std::size_t k = 0; k < a.num_components(); ++k) {
    const LocalizationReport rep = localization_ratio(a, f, k, 1e-13, opt.jobs);
    Json cj = report::to_json(rep);
    cj["localizes"] = rep.localizes(c);
    all = all && rep.localizes(c);
    comps.push_back(std::move(cj));
  }
  o.report["per_component"] = std::move(comps);
  o.report["verdict"] = report::to_string(all ? Verdict::certified : Verdict::refuted);
  return o;
}

Outcome cmd_wwexpander(const Options& opt, const WeightedSpace& ws) {
  const unsigned depth = opt.f_depth.value_or(3);
  const double c = opt.c.value_or(0.1);
  const ScanMode mode = parse_scan_mode(opt.mode);
  std::vector<Relation> fs;
  for (unsigned k = depth == 0 ? 0 : 1; k <= depth; ++k) fs.push_back(f_relation(ws.relation, k));
  const WWScan scan = ww_scan(ws.weights, ws.relation, fs, c, mode, opt.cap, opt.jobs);
  Outcome o;
  Json params;
  params["c"] = c;
  params["f_depth"] = depth;
  params["mode"] = to_string(mode);
  params["cap"] = opt.cap;
  o.report["parameters"] = std::move(params);
  Json reps = Json::array();
  for (std::size_t i = 0; i < scan.reports.size(); ++i) {
    Json rj;
    rj["f_depth"] = depth == 0 ? 0 : i + 1;
    rj.update(report::to_json(scan.reports[i]));
    reps.push_back(std::move(rj));
  }
  o.report["reports"] = std::move(reps);
  o.report["consistent"] = scan.consistent;
  o.report["verdict"] = report::to_string(scan.consistent ? Verdict::evidence_only : Verdict::refuted);
  return o;
}

Outcome cmd_folner(const Options& opt, const WeightedSpace& ws) {
  const double eps = opt.eps.value_or(0.1);
  const unsigned max_radius = opt.radius.value_or(12);
  const Kernel kernel = parse_kernel(opt.kernel);
  const std::size_t m = ws.space->num_components();
  const Label label = kernel == Kernel::heat ? build_label(ws.relation) : Label{};
  std::vector<FolnerSearch> searches(m);
  parallel_for(m, opt.jobs, [&](std::size_t k) {
    searches[k] = folner_search(k, ws.relation, label, eps, ws.weights[k], kernel, 1, max_radius);
  });

  Outcome o;
  Json params;
  params["eps"] = eps;
  params["kernel"] = to_string(kernel);
  params["min_radius"] = 1;
  params["max_radius"] = max_radius;
  o.report["parameters"] = std::move(params);
  Json comps = Json::array();
  bool all = true;
  for (std::size_t k = 0; k < m; ++k) {
    const FolnerSearch& s = searches[k];
    Json cj;
    cj["component"] = k;
    cj["mode"] = "exact";
    cj["certified"] = s.certificate.has_value();
    cj["best_ratio"] = s.best_ratio;
    if (s.certificate) {
      const ComponentFolner& chosen = s.certificate->per_component.front();
      cj["radius"] = s.certified_radius;
      if (kernel == Kernel::tent) {
        cj["band"] = static_cast<long long>(std::llround(s.certified_radius + 1 - chosen.threshold));
      }
      cj["certificate"] = report::to_json(chosen);
      cj["certificate"]["pairs"] = s.certificate->f.size();
    }
    Json attempts = Json::array();
    for (const RadiusAttempt& at : s.attempts) {
      Json aj;
      aj["radius"] = at.radius;
      aj.update(report::to_json(at.outcome));
      attempts.push_back(std::move(aj));
    }
    cj["attempts"] = std::move(attempts);
    all = all && s.certificate.has_value();
    comps.push_back(std::move(cj));
  }
  o.report["per_component"] = std::move(comps);
  o.report["verdict"] = report::to_string(all ? Verdict::certified : Verdict::evidence_only);
  o.code = all ? kExitSuccess : kExitNoCertificate;
  return o;
}

Outcome cmd_propa(const Options& opt, const WeightedSpace& ws) {
  const double eps = opt.eps.value_or(0.1);
  const Kernel kernel = parse_kernel(opt.kernel);
  const unsigned scale = kernel == Kernel::tent ? opt.radius.value_or(4) : opt.steps.value_or(opt.radius.value_or(4));
  const std::size_t m = ws.space->num_components();
  const Label label = kernel == Kernel::heat ? build_label(ws.relation) : Label{};
  std::vector<CertificateQuality> qs(m);
  parallel_for(m, opt.jobs, [&](std::size_t k) {
    const VectorFamily fam =
        kernel == Kernel::tent ? ball_average_family(k, ws.relation, scale) : heat_family(k, label, scale);
    qs[k] = certificate_quality(fam, ws.relation);
  });

  Outcome o;
  Json params;
  params["eps"] = eps;
  params["family"] = kernel == Kernel::tent ? "ball-average" : "heat";
  params[kernel == Kernel::tent ? "radius" : "steps"] = scale;
  o.report["parameters"] = std::move(params);
  Json comps = Json::array();
  bool all = true;
  for (std::size_t k = 0; k < m; ++k) {
    Json cj = report::to_json(qs[k], k);
    cj["below_eps"] = qs[k].epsilon < eps;
    all = all && qs[k].epsilon < eps;
    comps.push_back(std::move(cj));
  }
  o.report["per_component"] = std::move(comps);
  o.report["verdict"] = report::to_string(all ? Verdict::certified : Verdict::evidence_only);
  o.code = all ? kExitSuccess : kExitNoCertificate;
  return o;
}

Outcome cmd_pipeline(const Options& opt, const WeightedSpace& ws) {
  const unsigned power = opt.power.value_or(2);
  const unsigned depth = opt.f_depth.value_or(0);
  const double c = opt.c.value_or(kDefaultLocalizationConstant);
  const ScanMode mode = parse_scan_mode(opt.mode);
  const PropagationOperator a = build_operator(ws.relation, opt.op, power);
  const Relation f = f_relation(ws.relation, depth);
  const Relation& t = a.propagation();
  const Relation s = compose(inverse(t), t);
  const std::size_t m = a.num_components();

  std::vector<LocalizationReport> loc(m);
  std::vector<std::optional<WitnessWeights>> wit(m);
  std::vector<std::optional<WitnessCheck>> check(m);
  parallel_for(m, opt.jobs, [&](std::size_t k) {
    loc[k] = localization_ratio(a, f, k);
    if (loc[k].best_ratio < c) {
      wit[k] = extract_weights(a, k);
      check[k] = verify_witness_inequality(*wit[k], a, f, mode, opt.cap, 1.0 / c);
    }
  });

  Outcome o;
  Json params = operator_params(opt.op, power);
  params["f_depth"] = depth;
  params["c"] = c;
  params["mode"] = to_string(mode);
  params["cap"] = opt.cap;
  o.report["parameters"] = std::move(params);

  Json comps = Json::array();
  std::vector<PointSet> supports(m);
  bool any = false, all_hold = true;
  for (std::size_t k = 0; k < m; ++k) {
    Json cj;
    cj["component"] = k;
    cj["localization"] = report::to_json(loc[k]);
    if (wit[k]) {
      cj["witness"] = report::to_json(*wit[k]);
      cj["inequality"] = report::to_json(*check[k]);
      supports[k] = wit[k]->support;
      any = true;
      all_hold = all_hold && check[k]->holds;
    }
    comps.push_back(std::move(cj));
  }
  o.report["per_component"] = std::move(comps);

  if (!any) {
    o.report["verdict"] = report::to_string(Verdict::evidence_only);
    o.code = kExitNoCertificate;
    return o;
  }

  // Weighted weak expansion of S on the box subspace spanned by the witness supports.
  const BoxSubspace sub_s = box_subspace(s, supports);
  const BoxSubspace sub_f = box_subspace(f, supports);
  std::vector<WeightedComponent> sub_w;
  for (std::size_t i = 0; i < sub_s.origin_component.size(); ++i) {
    const WitnessWeights& w = *wit[sub_s.origin_component[i]];
    sub_w.push_back(WeightedComponent::normalized(static_cast<Index>(i), w.support_weights()));
  }
  const double level = 1.0 / c - 1.0;
  const WWScan scan = ww_scan(sub_w, sub_s.relation, {sub_f.relation}, level, mode, opt.cap, opt.jobs);
  Json wj = report::to_json(scan.reports.front());
  Json origin = Json::array();
  for (Index oc : sub_s.origin_component) origin.push_back(oc);
  wj["origin_components"] = std::move(origin);
  o.report["expansion"] = std::move(wj);
  o.report["verdict"] =
      report::to_string(all_hold && scan.consistent ? Verdict::evidence_only : Verdict::refuted);
  return o;
}

int cmd_gen(const Options& opt, std::ostream& out) {
  SpaceFile file;
  if (opt.family == "cycles") {
    file = gen_cycles(opt.sizes);
  } else if (opt.family == "torus") {
    file = gen_torus(opt.sizes);
  } else if (opt.family == "margulis") {
    file = gen_margulis(opt.sizes);
  } else if (opt.family == "random-regular") {
    file = gen_random_regular(opt.degree, opt.sizes, opt.seed);
  } else {
    throw Error("unknown family '" + opt.family + "' (expected cycles, torus, margulis or random-regular)");
  }
  emit(serialize(file), opt, out);
  return kExitSuccess;
}

void add_common(CLI::App* sub, Options& opt) {
  sub->add_option("input", opt.input, "Space file")->required();
  sub->add_option("--out", opt.out, "Write the JSON report to this file");
  sub->add_option("--jobs", opt.jobs, "Worker threads")->check(CLI::PositiveNumber);
}

void add_operator(CLI::App* sub, Options& opt) {
  sub->add_option("--operator", opt.op, "adjacency | relation")->check(CLI::IsMember({"adjacency", "relation"}));
  sub->add_option("--power", opt.power, "Operator power")->check(CLI::PositiveNumber);
}

void add_scan(CLI::App* sub, Options& opt) {
  sub->add_option("--mode", opt.mode, "exact | heuristic | auto")
      ->check(CLI::IsMember({"exact", "heuristic", "auto"}));
  sub->add_option("--cap", opt.cap, "Largest ball enumerated exhaustively")->check(CLI::Range(1, 62));
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Coarse geometry workbench for weighted box spaces", "coarsebox"};
  app.require_subcommand(1);

  CLI::App* gen = app.add_subcommand("gen", "Write a generated space file");
  gen->add_option("family", opt.family, "cycles | torus | margulis | random-regular")->required();
  gen->add_option("sizes", opt.sizes, "Component sizes (sides for torus and margulis)")->required();
  gen->add_option("--degree", opt.degree, "Degree for random-regular");
  gen->add_option("--seed", opt.seed, "Seed for random-regular");
  gen->add_option("--out", opt.out, "Write the space file here");

  CLI::App* label = app.add_subcommand("label", "Decompose the relation into partial bijections");
  add_common(label, opt);

  CLI::App* norms = app.add_subcommand("norms", "Operator norms per component");
  add_common(norms, opt);
  add_operator(norms, opt);

  CLI::App* onlp = app.add_subcommand("onlp", "Localization ratios over F-balls");
  add_common(onlp, opt);
  add_operator(onlp, opt);
  onlp->add_option("--f-depth", opt.f_depth, "F = widen(T, depth); 0 means the diagonal");
  onlp->add_option("--c", opt.c, "Localization constant");

  CLI::App* ww = app.add_subcommand("wwexpander", "Boundary ratios over F-bounded sets");
  add_common(ww, opt);
  add_scan(ww, opt);
  ww->add_option("--f-depth", opt.f_depth, "Scan F = widen(T, 1..depth); 0 means the diagonal");
  ww->add_option("--c", opt.c, "Expansion level");

  CLI::App* folner = app.add_subcommand("folner", "Search for Folner sets among kernel level sets");
  add_common(folner, opt);
  folner->add_option("--eps", opt.eps, "Folner tolerance")->check(CLI::PositiveNumber);
  folner->add_option("--radius", opt.radius, "Largest radius tried");
  folner->add_option("--kernel", opt.kernel, "tent | heat")->check(CLI::IsMember({"tent", "heat"}));

  CLI::App* propa = app.add_subcommand("propa", "Variation of unit-vector families along T");
  add_common(propa, opt);
  propa->add_option("--eps", opt.eps, "Target variation")->check(CLI::PositiveNumber);
  propa->add_option("--radius", opt.radius, "Ball radius for the tent family");
  propa->add_option("--steps", opt.steps, "Averaging steps for the heat family");
  propa->add_option("--kernel", opt.kernel, "tent | heat")->check(CLI::IsMember({"tent", "heat"}));

  CLI::App* pipeline = app.add_subcommand("pipeline", "Localization, weight extraction and expansion check");
  add_common(pipeline, opt);
  add_operator(pipeline, opt);
  add_scan(pipeline, opt);
  pipeline->add_option("--f-depth", opt.f_depth, "F = widen(T, depth); 0 means the diagonal");
  pipeline->add_option("--c", opt.c, "Localization constant");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitSuccess : kExitError;
  }

  try {
    if (gen->parsed()) return cmd_gen(opt, out);

    const SpaceFile file = [&] {
      try {
        return load_space_file(opt.input);
      } catch (const ParseError& e) {
        throw Error(opt.input + ": " + e.what());
      }
    }();
    const WeightedSpace ws = realize(file);

    std::string command;
    Outcome o;
    if (label->parsed()) {
      command = "label";
      o = cmd_label(opt, ws);
    } else if (norms->parsed()) {
      command = "norms";
      o = cmd_norms(opt, ws);
    } else if (onlp->parsed()) {
      command = "onlp";
      o = cmd_onlp(opt, ws);
    } else if (ww->parsed()) {
      command = "wwexpander";
      o = cmd_wwexpander(opt, ws);
    } else if (folner->parsed()) {
      command = "folner";
      o = cmd_folner(opt, ws);
    } else if (propa->parsed()) {
      command = "propa";
      o = cmd_propa(opt, ws);
    } else {
      command = "pipeline";
      o = cmd_pipeline(opt, ws);
    }

    Json doc = report::header(command);
    doc["input"] = input_json(opt, ws, file);
    doc.update(o.report);
    emit(doc.dump(2) + "\n", opt, out);
    return o.code;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace coarsebox
