#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

namespace vc2::shatter {

/// Verdict grid phi on [0, side-1]^2: true means "in A". Cell (i, j) is bit
/// i*side + j, so enumerating maps by their bit value walks them in
/// row-major order. A map may be partial; unassigned cells read as false
/// and are ignored by comparisons that honour the mask.
class ContainmentMap {
 public:
  static constexpr std::size_t kMaxSide = 8;

  /// Fully assigned map.
  ContainmentMap(std::size_t side, std::uint64_t bits);
  ContainmentMap(std::size_t side, std::uint64_t bits, std::uint64_t assigned);

  /// Number of fully assigned maps on a side x side grid (side <= 4).
  static std::uint64_t count(std::size_t side);

  std::size_t side() const noexcept { return side_; }
  std::uint64_t bits() const noexcept { return bits_; }
  std::uint64_t assigned_mask() const noexcept { return assigned_; }
  bool is_partial() const noexcept { return assigned_ != full_mask(side_); }

  bool at(std::size_t i, std::size_t j) const;
  bool assigned(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, bool in_a);
  ContainmentMap with(std::size_t i, std::size_t j, bool in_a) const;

  /// Grid rendering, one row per line, 'A' / 'c' / '?'.
  std::string to_string() const;

  static std::uint64_t full_mask(std::size_t side) noexcept {
    const std::size_t cells = side * side;
    return cells >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << cells) - 1;
  }

  friend bool operator==(const ContainmentMap&, const ContainmentMap&) = default;

 private:
  std::size_t bit(std::size_t i, std::size_t j) const;

  std::size_t side_;
  std::uint64_t bits_;
  std::uint64_t assigned_;
};

}  // namespace vc2::shatter
