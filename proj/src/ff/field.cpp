#include "ff/field.hpp"

#include <string>

#include "util/error.hpp"

namespace vc2::ff {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

Field::Field(std::uint32_t p) : p_(p) {
  if (p < 3 || p >= (1U << 31) || !is_prime(p)) {
    fail(ErrorCode::invalid_argument, "p must be an odd prime below 2^31, got " + std::to_string(p));
  }
}

Residue Field::pow(Residue a, std::uint64_t e) const noexcept {
  Residue result = 1 % p_;
  Residue base = a;
  while (e != 0) {
    if (e & 1U) result = mul(result, base);
    base = mul(base, base);
    e >>= 1U;
  }
  return result;
}

Residue Field::inverse(Residue a) const {
  a %= p_;
  if (a == 0) fail(ErrorCode::not_invertible, "not invertible: 0 mod " + std::to_string(p_));
  std::int64_t r0 = p_, r1 = a, t0 = 0, t1 = 1;
  while (r1 != 0) {
    const std::int64_t q = r0 / r1;
    std::int64_t tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  return reduce(t0);
}

Residue scalar_inverse(const Field& field, std::int64_t a) { return field.inverse(field.reduce(a)); }

}  // namespace vc2::ff
