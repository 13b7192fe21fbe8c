#pragma once

#include <json.hpp>

#include "ff/matrix.hpp"
#include "ff/vector.hpp"

namespace vc2::ff {

// Shared encodings used by every certificate file:
//   vector: {"p": int, "coords": [int, ...]}
//   matrix: {"p": int, "rows": [[int, ...], ...]}

nlohmann::json to_json(const Vector& v);
nlohmann::json to_json(const Matrix& m);

/// Bare coordinate array, for certificates that state p once at top level.
nlohmann::json coords_json(const Vector& v);

/// Parsing rejects entries outside [0, p) rather than reducing them, so that a
/// file always has exactly one canonical encoding.
Vector vector_from_json(const nlohmann::json& j);
Matrix matrix_from_json(const nlohmann::json& j);
Vector vector_from_coords(const Field& field, const nlohmann::json& coords, std::size_t n);
Matrix matrix_from_rows(const Field& field, const nlohmann::json& rows, std::size_t n_rows, std::size_t n_cols);

}  // namespace vc2::ff
