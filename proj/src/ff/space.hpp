#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "ff/field.hpp"
#include "ff/vector.hpp"

namespace vc2::ff {

/// p^n, or nullopt if it exceeds `limit`.
std::optional<std::uint64_t> checked_power(std::uint32_t p, std::size_t n, std::uint64_t limit);

/// Enumerable copy of F_p^n. Element indices follow lexicographic coordinate
/// order: index(x) = sum_i x_i * p^(n-1-i), so index 0 is the zero vector.
class Space {
 public:
  /// Throws Error(limit_exceeded) if p^n > limit.
  Space(Field field, std::size_t n, std::uint64_t limit);

  const Field& field() const noexcept { return field_; }
  std::size_t dimension() const noexcept { return n_; }
  std::uint64_t size() const noexcept { return size_; }

  Vector at(std::uint64_t index) const;
  std::uint64_t index_of(const Vector& x) const;
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const noexcept;
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const noexcept;

 private:
  Field field_;
  std::size_t n_;
  std::uint64_t size_;
};

}  // namespace vc2::ff
