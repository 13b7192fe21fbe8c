#include "ff/space.hpp"

#include <string>

#include "util/error.hpp"

namespace vc2::ff {

std::optional<std::uint64_t> checked_power(std::uint32_t p, std::size_t n, std::uint64_t limit) {
  std::uint64_t v = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (v > limit / p) return std::nullopt;
    v *= p;
  }
  if (v > limit) return std::nullopt;
  return v;
}

Space::Space(Field field, std::size_t n, std::uint64_t limit) : field_(field), n_(n), size_(0) {
  auto s = checked_power(field.p(), n, limit);
  if (!s) {
    fail(ErrorCode::limit_exceeded, "group F_" + std::to_string(field.p()) + "^" + std::to_string(n) +
                                        " exceeds the enumeration limit of " + std::to_string(limit));
  }
  size_ = *s;
}

Vector Space::at(std::uint64_t index) const {
  Vector v(field_, n_);
  const std::uint32_t p = field_.p();
  for (std::size_t i = n_; i-- > 0;) {
    v.set(i, static_cast<std::int64_t>(index % p));
    index /= p;
  }
  return v;
}

std::uint64_t Space::index_of(const Vector& x) const {
  require(x.size() == n_ && x.field() == field_, "vector does not belong to this space");
  std::uint64_t idx = 0;
  for (std::size_t i = 0; i < n_; ++i) idx = idx * field_.p() + x[i];
  return idx;
}

std::uint64_t Space::add(std::uint64_t a, std::uint64_t b) const noexcept {
  const std::uint32_t p = field_.p();
  std::uint64_t out = 0, scale = 1;
  for (std::size_t i = 0; i < n_; ++i) {
    const std::uint64_t d = (a % p + b % p) % p;
    out += d * scale;
    scale *= p;
    a /= p;
    b /= p;
  }
  return out;
}

std::uint64_t Space::sub(std::uint64_t a, std::uint64_t b) const noexcept {
  const std::uint32_t p = field_.p();
  std::uint64_t out = 0, scale = 1;
  for (std::size_t i = 0; i < n_; ++i) {
    const std::uint64_t d = (a % p + p - b % p) % p;
    out += d * scale;
    scale *= p;
    a /= p;
    b /= p;
  }
  return out;
}

}  // namespace vc2::ff
