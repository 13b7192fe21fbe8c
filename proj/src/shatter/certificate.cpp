#include "shatter/certificate.hpp"

#include <set>

#include "ff/json_codec.hpp"
#include "highrank/basis.hpp"
#include "util/error.hpp"

namespace vc2::shatter {

namespace {

using nlohmann::json;

json vector_list(const std::vector<Vector>& vs) {
  json out = json::array();
  for (const auto& v : vs) out.push_back(ff::coords_json(v));
  return out;
}

std::vector<Vector> parse_list(const Field& field, const json& j, std::size_t n) {
  if (!j.is_array()) fail(ErrorCode::parse_error, "expected an array of vectors");
  std::vector<Vector> out;
  for (const auto& c : j) out.push_back(ff::vector_from_coords(field, c, n));
  return out;
}

struct Invalid {
  std::string why;
};

/// Rebuilds the oracle and makes sure it matches the header. A QGS basis
/// without a recorded polynomial must pass the exhaustive rank check.
std::shared_ptr<const gs::MembershipOracle> load_set(const json& j, const Field& field, std::size_t n) {
  auto oracle = gs::oracle_from_json(j.at("set"));
  if (!(oracle->field() == field) || oracle->dimension() != n) throw Invalid{"set does not match the header p, n"};
  if (const auto* q = dynamic_cast<const gs::QgsSet*>(oracle.get()); q && !q->basis().poly()) {
    const auto check = highrank::check_high_rank(q->basis(), highrank::Exhaustive{});
    if (!check.passed) throw Invalid{"basis has a combination of deficient rank"};
  }
  return oracle;
}

VerifyReport verify_shatter(const json& j) {
  VerifyReport r{false, "shatter", "", 0};
  const Field field(j.at("p").get<std::uint32_t>());
  const auto n = j.at("n").get<std::size_t>();
  const auto oracle = load_set(j, field, n);
  const auto s = parse_list(field, j.at("S"), n);
  if (s.size() > kMaxShatterSize) throw Invalid{"S has more than 20 points"};
  if (std::set<Vector>(s.begin(), s.end()).size() != s.size()) throw Invalid{"S has repeated points"};
  const auto& ws = j.at("witnesses");
  const std::size_t patterns = std::size_t{1} << s.size();
  if (!ws.is_array() || ws.size() != patterns) throw Invalid{"expected one witness per subset of S"};
  std::vector<bool> seen(patterns, false);
  for (const auto& w : ws) {
    const auto pattern = w.at("pattern").get<std::uint64_t>();
    if (pattern >= patterns || seen[pattern]) throw Invalid{"pattern out of range or repeated"};
    seen[pattern] = true;
    const Vector y = ff::vector_from_coords(field, w.at("y"), n);
    if (pattern_signature(*oracle, s, y) != pattern)
      throw Invalid{"witness for pattern " + std::to_string(pattern) + " realises a different subset"};
    ++r.checked;
  }
  r.ok = true;
  r.message = "all " + std::to_string(patterns) + " subsets of a " + std::to_string(s.size()) + "-set realised";
  return r;
}

VerifyReport verify_vc2(const json& j) {
  VerifyReport r{false, "vc2", "", 0};
  const Field field(j.at("p").get<std::uint32_t>());
  const auto n = j.at("n").get<std::size_t>();
  const auto k = j.at("k").get<std::size_t>();
  if (k < 1 || k > 4) throw Invalid{"grid side must be in [1, 4]"};
  const auto oracle = load_set(j, field, n);
  const auto x = parse_list(field, j.at("X"), n);
  const auto y = parse_list(field, j.at("Y"), n);
  if (x.size() != k || y.size() != k) throw Invalid{"X and Y must have k points"};
  if (!x[0].is_zero() || !y[0].is_zero()) throw Invalid{"x_0 and y_0 must be 0"};
  const auto& ws = j.at("witnesses");
  const std::uint64_t maps = ContainmentMap::count(k);
  if (!ws.is_array() || ws.size() != maps) throw Invalid{"expected one witness per containment map"};
  std::vector<bool> seen(maps, false);
  for (const auto& w : ws) {
    const auto bits = w.at("phi").get<std::uint64_t>();
    if (bits >= maps || seen[bits]) throw Invalid{"map out of range or repeated"};
    seen[bits] = true;
    const Vector z = ff::vector_from_coords(field, w.at("z"), n);
    if (!vc2_realizes(*oracle, x, y, ContainmentMap(k, bits), z))
      throw Invalid{"shift for map " + std::to_string(bits) + " does not realise it"};
    ++r.checked;
  }
  r.ok = true;
  r.message = "all " + std::to_string(maps) + " containment maps on a " + std::to_string(k) + "x" + std::to_string(k) +
              " grid realised";
  return r;
}

}  // namespace

json certificate_to_json(const ShatterCertificate& cert) {
  json ws = json::array();
  for (std::size_t t = 0; t < cert.witnesses.size(); ++t)
    ws.push_back({{"pattern", t}, {"y", ff::coords_json(cert.witnesses[t])}});
  return {{"kind", "shatter"}, {"p", cert.field.p()}, {"n", cert.n},
          {"set", cert.set},   {"S", vector_list(cert.s)}, {"witnesses", ws}};
}

json certificate_to_json(const QuadShatterCertificate& cert) {
  json ws = json::array();
  for (const auto& [phi, z] : cert.witnesses) ws.push_back({{"phi", phi.bits()}, {"z", ff::coords_json(z)}});
  return {{"kind", "vc2"},
          {"p", cert.field.p()},
          {"n", cert.n},
          {"k", cert.x.size()},
          {"set", cert.set},
          {"X", vector_list(cert.x)},
          {"Y", vector_list(cert.y)},
          {"witnesses", ws}};
}

VerifyReport verify_certificate(const json& j) {
  try {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "shatter") return verify_shatter(j);
    if (kind == "vc2") return verify_vc2(j);
    return {false, kind, "unknown certificate kind", 0};
  } catch (const Invalid& e) {
    return {false, j.at("kind").get<std::string>(), e.why, 0};
  } catch (const json::exception& e) {
    return {false, "", std::string("malformed certificate: ") + e.what(), 0};
  } catch (const std::exception& e) {
    return {false, "", std::string("rejected: ") + e.what(), 0};
  }
}

}  // namespace vc2::shatter
