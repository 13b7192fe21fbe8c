#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include <json.hpp>

#include "gs/sets.hpp"
#include "quad/cases.hpp"
#include "quad/factor.hpp"
#include "shatter/engine.hpp"

namespace vc2::quad {

/// Grid X = {0, x_1, .., x_{k-1}}, Y = {0, y_1, .., y_{k-1}} with vanishing
/// cross-terms x^T M_i y for i <= k, and the factor whose atoms control
/// Q_1..Q_k at every grid shift.
struct ShatterPairConstruction {
  std::shared_ptr<const HighRankBasis> basis;
  std::size_t k = 0;
  std::vector<Vector> x;
  std::vector<Vector> y;
  /// Linear forms 2 M_i x_j (j outer, i inner), then 2 M_i y_j; quadratic
  /// indices 1..k.
  QuadraticFactor factor;
  std::uint64_t seed = 0;
  /// dim H_x, where H_x is the orthogonal complement of {M_i x_j}.
  std::size_t h_x_dim = 0;
  /// dim of H_x intersected with every M_i^{-1} H_x, the space the y's come from.
  std::size_t h_star_dim = 0;
};

/// Minimum n for which 2 * complexity < n: 13 for k = 2, 31 for k = 3.
std::size_t min_dimension(std::size_t k);

/// x's uniformly random and independent; y's random independent vectors
/// of H* = H_x ∩ ⋂_i M_i^{-1} H_x. Resamples (same seed stream) until the
/// linear forms are independent; every invariant is re-checked before
/// returning.
ShatterPairConstruction construct_shatter_pair(std::shared_ptr<const HighRankBasis> basis, std::size_t k,
                                               std::uint64_t seed);

/// Throws Error(verification_failed) naming the first broken invariant.
void verify_construction(const ShatterPairConstruction& c);

/// Label of the atom whose points z realise the target values:
/// a_j - q - Q(x_j) and b_j - q - Q(y_j) per linear form, then q.
AtomLabel label_for_targets(const ShatterPairConstruction& c, const TargetValues& t);

/// A z realising phi, re-checked by direct membership before returning.
Vector realize_map(const ShatterPairConstruction& c, const gs::QgsSet& a, const ContainmentMap& phi,
                   std::uint64_t seed);

/// Every map on the k-grid, one PRNG stream per map.
shatter::Vc2Outcome realize_all(const ShatterPairConstruction& c, std::uint64_t seed, unsigned threads = 1);

nlohmann::json construction_to_json(const ShatterPairConstruction& c);
/// Also runs verify_construction.
ShatterPairConstruction construction_from_json(const nlohmann::json& j);

}  // namespace vc2::quad
