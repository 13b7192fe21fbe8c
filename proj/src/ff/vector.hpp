#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ff/field.hpp"

namespace vc2::ff {

/// Dense vector over F_p. Coordinates are stored 0-based and always lie in [0, p).
class Vector {
 public:
  Vector(Field field, std::size_t n) : field_(field), coords_(n, 0) {}
  /// Coordinates are reduced mod p.
  Vector(Field field, std::vector<Residue> coords);

  static Vector from_signed(Field field, std::span<const std::int64_t> values);
  static Vector unit(Field field, std::size_t n, std::size_t index);

  const Field& field() const noexcept { return field_; }
  std::size_t size() const noexcept { return coords_.size(); }
  Residue operator[](std::size_t i) const { return coords_[i]; }
  void set(std::size_t i, std::int64_t value) { coords_[i] = field_.reduce(value); }
  std::span<const Residue> coords() const noexcept { return coords_; }

  bool is_zero() const noexcept;

  Vector& operator+=(const Vector& other);
  Vector& operator-=(const Vector& other);
  Vector operator-() const;
  Vector scaled(Residue c) const;
  /// this += c * other
  void add_scaled(Residue c, const Vector& other);

  friend Vector operator+(Vector a, const Vector& b) { return a += b; }
  friend Vector operator-(Vector a, const Vector& b) { return a -= b; }
  friend bool operator==(const Vector& a, const Vector& b) {
    return a.field_ == b.field_ && a.coords_ == b.coords_;
  }
  /// Lexicographic on coordinates.
  friend bool operator<(const Vector& a, const Vector& b) { return a.coords_ < b.coords_; }

 private:
  Field field_;
  std::vector<Residue> coords_;
};

/// Standard dot product <u, v> = u^T v.
Residue dot(const Vector& u, const Vector& v);

}  // namespace vc2::ff
