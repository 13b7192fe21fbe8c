#include "ff/vector.hpp"

#include "util/error.hpp"

namespace vc2::ff {

namespace {

void require_compatible(const Vector& a, const Vector& b) {
  require(a.field() == b.field(), "vector fields differ");
  require(a.size() == b.size(), "vector lengths differ");
}

}  // namespace

Vector::Vector(Field field, std::vector<Residue> coords) : field_(field), coords_(std::move(coords)) {
  for (auto& c : coords_) c %= field_.p();
}

Vector Vector::from_signed(Field field, std::span<const std::int64_t> values) {
  Vector v(field, values.size());
  for (std::size_t i = 0; i < values.size(); ++i) v.coords_[i] = field.reduce(values[i]);
  return v;
}

Vector Vector::unit(Field field, std::size_t n, std::size_t index) {
  require(index < n, "unit vector index out of range");
  Vector v(field, n);
  v.coords_[index] = 1;
  return v;
}

bool Vector::is_zero() const noexcept {
  for (Residue c : coords_) {
    if (c != 0) return false;
  }
  return true;
}

Vector& Vector::operator+=(const Vector& other) {
  require_compatible(*this, other);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] = field_.add(coords_[i], other.coords_[i]);
  return *this;
}

Vector& Vector::operator-=(const Vector& other) {
  require_compatible(*this, other);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] = field_.sub(coords_[i], other.coords_[i]);
  return *this;
}

Vector Vector::operator-() const {
  Vector v = *this;
  for (auto& c : v.coords_) c = field_.neg(c);
  return v;
}

Vector Vector::scaled(Residue c) const {
  Vector v = *this;
  for (auto& x : v.coords_) x = field_.mul(x, c);
  return v;
}

void Vector::add_scaled(Residue c, const Vector& other) {
  require_compatible(*this, other);
  if (c == 0) return;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    coords_[i] = field_.add(coords_[i], field_.mul(c, other.coords_[i]));
  }
}

Residue dot(const Vector& u, const Vector& v) {
  require_compatible(u, v);
  const std::uint64_t p = u.field().p();
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    acc = (acc + static_cast<std::uint64_t>(u[i]) * v[i]) % p;
  }
  return static_cast<Residue>(acc);
}

}  // namespace vc2::ff
