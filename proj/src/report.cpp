#include "report.hpp"

#include <chrono>
#include <ctime>

namespace coarsebox::report {

namespace {

const char* scan_mode(bool exact) { return exact ? "exact" : "heuristic"; }

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::certified: return "certified";
    case Verdict::refuted: return "refuted";
    case Verdict::evidence_only: return "evidence-only";
  }
  return "evidence-only";
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Json header(const std::string& command) {
  Json j;
  j["schema"] = kSchema;
  j["version"] = kVersion;
  j["command"] = command;
  j[kTimestampKey] = utc_timestamp();
  return j;
}

Json to_json(const PointSet& set) {
  Json arr = Json::array();
  for (Index p : set) arr.push_back(p);
  return arr;
}

Json to_json(const Label& label) {
  Json j;
  const std::size_t d = max_degree(label.base);
  j["mode"] = "exact";
  j["max_degree"] = d;
  j["non_diagonal_classes"] = label.non_diagonal_classes();
  j["class_bound"] = d == 0 ? 0 : 2 * d - 1;
  j["verified"] = verify_label(label);
  Json sizes = Json::array();
  for (const Relation& cls : label.classes) sizes.push_back(cls.size());
  j["class_sizes"] = std::move(sizes);
  return j;
}

Json to_json(const LocalizationReport& rep) {
  Json j;
  j["component"] = rep.component;
  j["mode"] = "numeric";
  j["operator_norm"] = rep.operator_norm;
  j["best_ratio"] = rep.best_ratio;
  j["best_ball_center"] = rep.best_ball_center.index;
  return j;
}

Json to_json(const WitnessWeights& wit) {
  Json j;
  j["mode"] = "numeric";
  j["source_eigenvalue"] = wit.source_eigenvalue;
  j["residual"] = wit.residual;
  j["support_size"] = wit.support.size();
  Json w = Json::array();
  for (double v : wit.support_weights()) w.push_back(v);
  j["support"] = to_json(wit.support);
  j["weights"] = std::move(w);
  return j;
}

Json to_json(const WitnessCheck& check) {
  Json j;
  j["mode"] = scan_mode(check.exact);
  j["min_ratio"] = check.min_ratio;
  j["threshold"] = check.threshold;
  j["holds"] = check.holds;
  j["argmin"] = to_json(check.argmin);
  return j;
}

Json to_json(const ExpansionReport& rep) {
  Json j;
  bool all_exact = true;
  Json comps = Json::array();
  for (const ComponentRatio& r : rep.per_component) {
    Json cj;
    cj["component"] = r.component;
    cj["mode"] = scan_mode(r.exact);
    cj["min_ratio"] = r.min_ratio;
    cj["argmin"] = to_json(r.argmin);
    comps.push_back(std::move(cj));
    all_exact = all_exact && r.exact;
  }
  j["mode"] = scan_mode(all_exact);
  j["level"] = rep.c;
  j["window_start"] = rep.window_start;
  j["tail_min"] = rep.tail_min;
  j["passes"] = rep.passes;
  j["diagonal_added"] = rep.diagonal_added;
  j["per_component"] = std::move(comps);
  return j;
}

Json to_json(const ComponentFolner& outcome) {
  Json j;
  j["mode"] = "exact";
  j["scanned"] = outcome.scanned;
  j["success"] = outcome.success;
  j["threshold"] = outcome.threshold;
  j["mass_f"] = outcome.mass_f;
  j["mass_tf"] = outcome.mass_tf;
  j["ratio"] = outcome.ratio();
  j["thresholds_scanned"] = outcome.thresholds_scanned;
  return j;
}

Json to_json(const CertificateQuality& q, std::size_t component) {
  Json j;
  j["component"] = component;
  j["mode"] = "exact";
  j["epsilon"] = q.epsilon;
  j["worst_pair"] = Json::array({q.worst_pair.x, q.worst_pair.y});
  j["support_pairs"] = q.support.size();
  j["support_max_degree"] = max_degree(q.support);
  return j;
}

}  // namespace coarsebox::report
