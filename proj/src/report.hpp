#pragma once

// JSON report fragments. Every numeric result carries the mode that produced it.

#include <string>

#include <json.hpp>

#include "coarsebox/folner.hpp"
#include "coarsebox/label.hpp"
#include "coarsebox/onlp.hpp"
#include "coarsebox/propa.hpp"
#include "coarsebox/wwexpander.hpp"

namespace coarsebox::report {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "coarsebox.report";
inline constexpr int kVersion = 1;
/// Excluded from determinism comparisons.
inline constexpr const char* kTimestampKey = "generated_at";

enum class Verdict { certified, refuted, evidence_only };
std::string to_string(Verdict v);

/// ISO 8601 UTC, second resolution.
std::string utc_timestamp();

Json header(const std::string& command);

Json to_json(const PointSet& set);
Json to_json(const Label& label);
Json to_json(const LocalizationReport& rep);
Json to_json(const WitnessWeights& wit);
Json to_json(const WitnessCheck& check);
Json to_json(const ExpansionReport& rep);
Json to_json(const ComponentFolner& outcome);
Json to_json(const CertificateQuality& q, std::size_t component);

}  // namespace coarsebox::report
