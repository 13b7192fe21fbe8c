#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include <json.hpp>

#include "ff/vector.hpp"
#include "gs/sets.hpp"
#include "shatter/containment_map.hpp"

namespace vc2::shatter {

using ff::Field;
using ff::Vector;
using gs::MembershipOracle;

inline constexpr std::size_t kMaxShatterSize = 20;
inline constexpr std::uint64_t kGroupEnumerationLimit = 100'000'000;

/// Bit i set iff S[i] + y is in A.
std::uint32_t pattern_signature(const MembershipOracle& a, const std::vector<Vector>& s, const Vector& y);

/// Witness bundle for "translates of A shatter S": witnesses[T] is a y with
/// pattern_signature(A, S, y) == T, for every bitmask T < 2^|S|.
struct ShatterCertificate {
  Field field;
  std::size_t n;
  nlohmann::json set;
  std::vector<Vector> s;
  std::vector<Vector> witnesses;
};

struct NotShattered {
  /// Smallest bitmask achieved by no translate.
  std::uint32_t missing;
};

/// Scans every translate once; each witness is the smallest achieving y in
/// lexicographic order. Throws Error(limit_exceeded) if |S| > 20 or
/// p^n > 10^8.
std::variant<ShatterCertificate, NotShattered> shatters(const MembershipOracle& a, const std::vector<Vector>& s,
                                                        unsigned threads = 1);

struct VcDimResult {
  std::size_t dimension = 0;
  ShatterCertificate certificate;
  /// Candidate sets whose pattern count was evaluated.
  std::uint64_t candidates = 0;
};

/// Largest k <= k_max such that some k-set containing 0 is shattered, with
/// the lexicographically smallest such set (by element index) certified.
VcDimResult vc_dim(const MembershipOracle& a, std::size_t k_max, unsigned threads = 1);

/// Does z realise phi on the grid X x Y? Unassigned cells of a partial map
/// are not checked.
bool vc2_realizes(const MembershipOracle& a, const std::vector<Vector>& x, const std::vector<Vector>& y,
                  const ContainmentMap& phi, const Vector& z);

/// Verdict grid produced by z.
ContainmentMap realized_map(const MembershipOracle& a, const std::vector<Vector>& x, const std::vector<Vector>& y,
                            const Vector& z);

/// Position of phi in row-major order with A before A^C, i.e. the verdict
/// sequence (0,0), (0,1), ... read as a binary numeral with A = 0. The
/// all-A map comes first.
std::uint64_t row_major_order(const ContainmentMap& phi);

struct QuadShatterCertificate {
  Field field;
  std::size_t n;
  nlohmann::json set;
  std::vector<Vector> x;
  std::vector<Vector> y;
  /// One entry per map, sorted by map bits.
  std::vector<std::pair<ContainmentMap, Vector>> witnesses;
};

/// Scan the whole group (p^n <= limit) for realising shifts.
struct ExhaustiveZ {
  std::uint64_t limit = 10'000'000;
};
/// Per-map search; returns nullopt when it gives up.
using ZFinder = std::function<std::optional<Vector>(const ContainmentMap& phi, std::uint64_t map_bits)>;
using ZStrategy = std::variant<ExhaustiveZ, ZFinder>;

struct Vc2Outcome {
  std::optional<QuadShatterCertificate> certificate;
  /// First unrealised map in row_major_order.
  std::optional<ContainmentMap> failed_at;
  bool ok() const noexcept { return certificate.has_value(); }
};

/// Tries every fully assigned map on the |X| x |X| grid. Requires |X| = |Y|
/// <= 4, x_0 = y_0 = 0. Every z a finder returns is re-checked; a wrong one
/// is reported as Error(verification_failed).
Vc2Outcome vc2_shatters(const MembershipOracle& a, const std::vector<Vector>& x, const std::vector<Vector>& y,
                        const ZStrategy& strategy, unsigned threads = 1);

}  // namespace vc2::shatter
