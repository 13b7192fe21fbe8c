#pragma once

#include <cstdint>

namespace vc2::ff {

using Residue = std::uint32_t;

bool is_prime(std::uint64_t n);

/// The prime field F_p for an odd prime p. Residues are kept in [0, p).
class Field {
 public:
  /// Throws Error(invalid_argument) unless p is an odd prime below 2^31.
  explicit Field(std::uint32_t p);

  std::uint32_t p() const noexcept { return p_; }

  Residue reduce(std::int64_t v) const noexcept {
    const std::int64_t r = v % static_cast<std::int64_t>(p_);
    return static_cast<Residue>(r < 0 ? r + p_ : r);
  }
  Residue add(Residue a, Residue b) const noexcept {
    const std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Residue sub(Residue a, Residue b) const noexcept { return a >= b ? a - b : a + p_ - b; }
  Residue neg(Residue a) const noexcept { return a == 0 ? 0 : p_ - a; }
  Residue mul(Residue a, Residue b) const noexcept {
    return static_cast<Residue>(static_cast<std::uint64_t>(a) * b % p_);
  }
  Residue pow(Residue a, std::uint64_t e) const noexcept;

  /// Multiplicative inverse; throws Error(not_invertible) for a ≡ 0.
  Residue inverse(Residue a) const;

  /// Signed representative in (-p/2, p/2], used for human-readable output.
  std::int64_t centered(Residue a) const noexcept {
    return a > p_ / 2 ? static_cast<std::int64_t>(a) - p_ : static_cast<std::int64_t>(a);
  }

  friend bool operator==(const Field&, const Field&) = default;

 private:
  std::uint32_t p_;
};

/// Inverse of a (any integer representative) modulo p.
Residue scalar_inverse(const Field& field, std::int64_t a);

}  // namespace vc2::ff
