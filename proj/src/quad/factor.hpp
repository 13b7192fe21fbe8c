#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include <json.hpp>

#include "ff/vector.hpp"
#include "highrank/basis.hpp"

namespace vc2::quad {

using ff::Field;
using ff::Residue;
using ff::Vector;
using highrank::HighRankBasis;

/// Partition of F_p^n into joint level sets of linear forms z -> v^T z and
/// quadratic forms Q_t (1-based indices into the basis).
struct QuadraticFactor {
  std::vector<Vector> linear;
  std::vector<std::size_t> quad;

  std::size_t complexity() const noexcept { return linear.size() + quad.size(); }
};

using AtomLabel = std::vector<Residue>;

/// Linear forms independent, quadratic indices distinct and in range.
void validate_factor(const QuadraticFactor& f, const HighRankBasis& basis);

/// l independent uniformly random linear forms and quadratic indices 1..q.
QuadraticFactor random_factor(const HighRankBasis& basis, std::size_t l, std::size_t q, std::uint64_t seed);

/// Linear values, then quadratic values.
AtomLabel atom_label(const QuadraticFactor& f, const HighRankBasis& basis, const Vector& x);

inline constexpr std::size_t kExhaustiveAtomDim = 12;
inline constexpr std::uint64_t kAtomSampleBudget = 10'000'000;

/// Some x with atom_label(x) == c. Requires 2 * complexity < n, which makes
/// every atom nonempty. Solves the linear part exactly, then searches the
/// affine solution space: exhaustively in lexicographic order of the
/// parameters when its dimension is at most 12, otherwise by seeded sampling
/// (Error(budget_exhausted) after 10^7 draws).
Vector find_in_atom(const QuadraticFactor& f, const HighRankBasis& basis, const AtomLabel& c, std::uint64_t seed);

inline constexpr std::uint64_t kCensusLimit = 10'000'000;

/// Exact size of every atom (including empty ones) by enumerating the group.
std::map<AtomLabel, std::uint64_t> atom_census(const QuadraticFactor& f, const HighRankBasis& basis,
                                               unsigned threads = 1);

struct AtomBoundCheck {
  bool passed = true;
  std::size_t atoms = 0;
  std::uint64_t min_size = 0;
  std::uint64_t max_size = 0;
  std::optional<AtomLabel> violator;
};

/// | |B| - p^-D |G| | <= p^(-r/2) |G| for every atom, decided in exact
/// integer arithmetic as (|B| p^D - p^n)^2 <= p^(2n + 2D - r).
AtomBoundCheck check_atom_bound(const std::map<AtomLabel, std::uint64_t>& census, const Field& field, std::size_t n,
                                std::size_t complexity, std::size_t r);

nlohmann::json factor_to_json(const QuadraticFactor& f);
QuadraticFactor factor_from_json(const Field& field, std::size_t n, const nlohmann::json& j);

}  // namespace vc2::quad
