#include "ff/json_codec.hpp"

#include <string>

#include "util/error.hpp"

namespace vc2::ff {

namespace {

Residue checked_residue(const Field& field, const nlohmann::json& j) {
  if (!j.is_number_integer()) fail(ErrorCode::parse_error, "expected an integer residue");
  const auto v = j.get<std::int64_t>();
  if (v < 0 || v >= static_cast<std::int64_t>(field.p())) {
    fail(ErrorCode::parse_error, "residue " + std::to_string(v) + " outside [0, " + std::to_string(field.p()) + ")");
  }
  return static_cast<Residue>(v);
}

Field field_from(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("p") || !j["p"].is_number_unsigned()) {
    fail(ErrorCode::parse_error, "missing or invalid \"p\"");
  }
  const auto p = j["p"].get<std::uint64_t>();
  if (p >= (1ULL << 31) || !is_prime(p) || p < 3) fail(ErrorCode::parse_error, "\"p\" is not an odd prime");
  return Field(static_cast<std::uint32_t>(p));
}

}  // namespace

nlohmann::json coords_json(const Vector& v) {
  nlohmann::json arr = nlohmann::json::array();
  for (Residue c : v.coords()) arr.push_back(c);
  return arr;
}

nlohmann::json to_json(const Vector& v) { return {{"p", v.field().p()}, {"coords", coords_json(v)}}; }

nlohmann::json to_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m.at(r, c));
    rows.push_back(std::move(row));
  }
  return {{"p", m.field().p()}, {"rows", std::move(rows)}};
}

Vector vector_from_coords(const Field& field, const nlohmann::json& coords, std::size_t n) {
  if (!coords.is_array()) fail(ErrorCode::parse_error, "coordinates must be an array");
  if (coords.size() != n) {
    fail(ErrorCode::parse_error, "expected " + std::to_string(n) + " coordinates, got " + std::to_string(coords.size()));
  }
  std::vector<Residue> out;
  out.reserve(n);
  for (const auto& c : coords) out.push_back(checked_residue(field, c));
  return Vector(field, std::move(out));
}

Matrix matrix_from_rows(const Field& field, const nlohmann::json& rows, std::size_t n_rows, std::size_t n_cols) {
  if (!rows.is_array() || rows.size() != n_rows) fail(ErrorCode::parse_error, "matrix has the wrong number of rows");
  Matrix m(field, n_rows, n_cols);
  for (std::size_t r = 0; r < n_rows; ++r) {
    if (!rows[r].is_array() || rows[r].size() != n_cols) fail(ErrorCode::parse_error, "matrix row has the wrong length");
    for (std::size_t c = 0; c < n_cols; ++c) m.set(r, c, checked_residue(field, rows[r][c]));
  }
  return m;
}

Vector vector_from_json(const nlohmann::json& j) {
  const Field f = field_from(j);
  if (!j.contains("coords")) fail(ErrorCode::parse_error, "missing \"coords\"");
  return vector_from_coords(f, j["coords"], j["coords"].size());
}

Matrix matrix_from_json(const nlohmann::json& j) {
  const Field f = field_from(j);
  if (!j.contains("rows") || !j["rows"].is_array()) fail(ErrorCode::parse_error, "missing \"rows\"");
  const auto& rows = j["rows"];
  const std::size_t cols = rows.empty() ? 0 : (rows[0].is_array() ? rows[0].size() : 0);
  return matrix_from_rows(f, rows, rows.size(), cols);
}

}  // namespace vc2::ff
