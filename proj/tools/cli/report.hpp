#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace cli {

enum class Outcome { pass, fail, value };

enum class Format { json, csv, text };

struct RunReport {
  std::string command;
  Outcome outcome = Outcome::pass;
  std::optional<nlohmann::json> value;
  std::uint64_t seed = 1;
  std::optional<std::string> certificate_path;
  std::optional<double> wall_seconds;
  /// Command-specific fields, echoed in JSON and text output.
  nlohmann::json details = nlohmann::json::object();
  /// One CSV row per sub-result, no header.
  std::vector<std::vector<std::string>> csv;
  /// Human-readable summary lines.
  std::vector<std::string> text;
};

const char* outcome_name(Outcome o);

/// Deterministic serialisation. JSON keys come out sorted because
/// nlohmann::json objects are ordered maps.
std::string emit_report(const RunReport& report, Format format);

}  // namespace cli
