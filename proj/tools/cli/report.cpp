#include "report.hpp"

#include <sstream>

namespace cli {

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::pass: return "pass";
    case Outcome::fail: return "fail";
    case Outcome::value: return "value";
  }
  return "?";
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string emit_report(const RunReport& r, Format format) {
  std::ostringstream os;
  switch (format) {
    case Format::json: {
      nlohmann::json j{{"command", r.command}, {"outcome", outcome_name(r.outcome)}, {"seed", r.seed}};
      if (r.value) j["value"] = *r.value;
      if (r.certificate_path) j["certificate"] = *r.certificate_path;
      if (r.wall_seconds) j["wall_seconds"] = *r.wall_seconds;
      if (!r.details.empty()) j["details"] = r.details;
      os << j.dump(2) << '\n';
      break;
    }
    case Format::csv:
      for (const auto& row : r.csv) {
        for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << csv_field(row[c]);
        os << '\n';
      }
      break;
    case Format::text:
      os << r.command << ": " << outcome_name(r.outcome);
      if (r.value) os << " " << r.value->dump();
      os << " (seed " << r.seed << ")\n";
      for (const auto& line : r.text) os << "  " << line << '\n';
      if (r.certificate_path) os << "  certificate: " << *r.certificate_path << '\n';
      if (r.wall_seconds) os << "  wall time: " << *r.wall_seconds << " s\n";
      break;
  }
  return os.str();
}

}  // namespace cli
