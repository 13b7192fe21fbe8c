#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "shatter/engine.hpp"

namespace vc2::shatter {

// File formats:
//   {"kind": "shatter", "p", "n", "set", "S": [coords...],
//    "witnesses": [{"pattern": bits, "y": coords}, ...]}
//   {"kind": "vc2", "p", "n", "k", "set", "X": [...], "Y": [...],
//    "witnesses": [{"phi": bits, "z": coords}, ...]}
// "set" is the oracle description (see gs::oracle_from_json).

nlohmann::json certificate_to_json(const ShatterCertificate& cert);
nlohmann::json certificate_to_json(const QuadShatterCertificate& cert);

struct VerifyReport {
  bool ok = false;
  std::string kind;
  std::string message;
  /// Membership-checked witnesses.
  std::uint64_t checked = 0;
};

/// Independent re-check by membership evaluation only. Never throws on bad
/// input; malformed or wrong certificates give ok == false with a reason.
VerifyReport verify_certificate(const nlohmann::json& j);

}  // namespace vc2::shatter
