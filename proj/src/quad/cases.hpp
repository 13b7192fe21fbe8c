#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ff/field.hpp"
#include "shatter/containment_map.hpp"

namespace vc2::quad {

using ff::Field;
using ff::Residue;
using shatter::ContainmentMap;

/// Prescribed values of (Q_1, ..., Q_k) at the shifted points. rows[0] and
/// cols[0] are both q = Q(z); rows[i] = a_i = Q(x_i + z) and
/// cols[j] = b_j = Q(y_j + z). With zero cross-terms the grid cell (i, j)
/// has value a_i + b_j - q.
struct TargetValues {
  std::size_t k = 0;
  std::vector<std::vector<Residue>> rows;
  std::vector<std::vector<Residue>> cols;
  /// Which table produced the values, e.g. "3.2" or "row 5".
  std::string source;
};

/// Verdicts implied by the values under the first-nonzero-equals-1 rule.
/// nullopt if some cell has an all-zero value prefix (undetermined).
std::optional<ContainmentMap> predicted_map(const Field& field, const TargetValues& t);

/// Values realising phi (side k). Throws Error(internal) if no table
/// applies, which would mean a transcription error.
TargetValues target_values_for_map(const Field& field, std::size_t k, const ContainmentMap& phi);

/// Grid symmetry for side 3: optional transpose, then swapping indices 1
/// and 2 among rows and/or columns. Index 0 is always fixed.
struct GridSymmetry {
  bool transpose = false;
  bool swap_rows = false;
  bool swap_cols = false;
};

inline constexpr std::array<GridSymmetry, 8> kGridSymmetries{{
    {false, false, false}, {false, false, true}, {false, true, false}, {false, true, true},
    {true, false, false},  {true, false, true},  {true, true, false},  {true, true, true},
}};

/// phi'(i, j) = phi1(pi_r(i), pi_c(j)) where phi1 is phi, transposed if
/// requested.
ContainmentMap apply_symmetry(const ContainmentMap& phi, const GridSymmetry& g);

/// If t realises apply_symmetry(phi, g), the result realises phi.
TargetValues unapply_symmetry(const TargetValues& t, const GridSymmetry& g);

}  // namespace vc2::quad
