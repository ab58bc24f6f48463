#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gmekit/monogamy.hpp"

namespace gmekit {

inline constexpr const char* kSchemaVersion = "1";
inline constexpr const char* kToolVersion = "0.1.0";

/// What produced a report, enough to replay it.
struct RunManifest {
  std::string command;
  std::vector<std::string> arguments;
  std::vector<std::string> inputs;
  std::optional<MeasureSpec> spec;
  std::optional<RoofConfig> roof;
  std::optional<std::uint64_t> seed;
  std::string tool_version = kToolVersion;
  double wall_time = 0.0;
};

using Json = nlohmann::ordered_json;

Json to_json(const MeasureSpec& spec);
Json to_json(const RoofConfig& cfg);
Json to_json(const RunManifest& m, bool with_wall_time = true);
Json to_json(const Ensemble& e, const std::vector<std::string>& labels);
Json to_json(const RoofResult& r, const std::vector<std::string>& labels);
Json to_json(const BiseparabilityCertificate& c, const std::vector<std::string>& labels);
Json to_json(const Evaluation& e, const std::vector<std::string>& labels);
Json to_json(const ChildValue& c, const std::vector<std::string>& labels);
Json to_json(const MonogamyReport& r);
/// Aggregate only; worst-case and violating states are referenced by index
/// and seed (their fixtures are written separately).
Json to_json(const CampaignResult& r);

/// {"schema_version", "manifest", ...body}.
Json wrap_report(const Json& body, const RunManifest& manifest, bool with_wall_time = true);

/// Non-finite numbers become null.
Json number(double v);

}  // namespace gmekit
