#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include <json.hpp>

#include "ff/field.hpp"
#include "ff/matrix.hpp"
#include "highrank/polynomial.hpp"

namespace vc2::highrank {

using ff::Matrix;

/// Monic irreducible of degree n; coeffs has n+1 entries with coeffs[n] == 1.
struct IrreduciblePoly {
  Field field;
  Poly coeffs;

  std::size_t degree() const noexcept { return coeffs.size() - 1; }
};

/// Smallest monic irreducible of degree n, where candidates are ordered by
/// the integer sum_i c_i p^i of their lower coefficients (so x^2 + 1 comes
/// before x^2 + 2, which comes before x^2 + x).
IrreduciblePoly build_irreducible(const Field& field, std::size_t n);

/// n symmetric n x n matrices. `poly` is set for trace-form bases and is
/// what the file format records; bases loaded without a polynomial are
/// accepted but must be checked explicitly.
class HighRankBasis {
 public:
  HighRankBasis(Field field, std::size_t n, std::vector<Matrix> mats, std::optional<IrreduciblePoly> poly = {});

  const Field& field() const noexcept { return field_; }
  std::size_t n() const noexcept { return n_; }
  std::size_t size() const noexcept { return mats_.size(); }
  /// 1-based, matching M_1 ... M_n.
  const Matrix& mat(std::size_t t) const;
  const std::vector<Matrix>& mats() const noexcept { return mats_; }
  const std::optional<IrreduciblePoly>& poly() const noexcept { return poly_; }

 private:
  Field field_;
  std::size_t n_;
  std::vector<Matrix> mats_;
  std::optional<IrreduciblePoly> poly_;
};

/// M_t[u][v] = Tr(theta^(t-1) * theta^u * theta^v) in F_p[theta]/(f),
/// 0-based u, v. Any nonzero combination is the Gram matrix of
/// (u, v) -> Tr(a u v) with a != 0, which is nondegenerate for odd p.
HighRankBasis trace_basis_from_poly(const IrreduciblePoly& poly);
HighRankBasis build_trace_basis(const Field& field, std::size_t n);

/// sum_t lambda_t M_t.
Matrix combination(const HighRankBasis& basis, std::span<const Residue> lambda);

/// Rank of the size x n^2 matrix of flattened basis elements.
std::size_t flattened_rank(const HighRankBasis& basis);

struct Exhaustive {};
struct Sampled {
  std::uint64_t count = 10000;
  std::uint64_t seed = 1;
  unsigned threads = 1;
};
using CheckMode = std::variant<Exhaustive, Sampled>;

struct HighRankCheck {
  bool passed = true;
  /// Lexicographically smallest failing coefficient vector found.
  std::optional<std::vector<Residue>> witness;
  std::uint64_t checked = 0;
};

inline constexpr std::uint64_t kExhaustiveRankLimit = 1'000'000;

/// Exhaustive mode requires p^size <= 10^6 (Error(limit_exceeded) otherwise).
HighRankCheck check_high_rank(const HighRankBasis& basis, const CheckMode& mode);

/// basis.json: {"p", "n", "poly", "mats"}; "poly" is [] for a basis with no
/// recorded polynomial.
nlohmann::json basis_to_json(const HighRankBasis& basis);
/// Validates shape, symmetry, and (when "poly" is present) that the matrices
/// are exactly the trace basis of that irreducible polynomial.
HighRankBasis basis_from_json(const nlohmann::json& j);

}  // namespace vc2::highrank
