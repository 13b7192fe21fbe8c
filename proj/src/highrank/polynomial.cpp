#include "highrank/polynomial.hpp"

#include "util/error.hpp"

namespace vc2::highrank {

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_sub(const Field& f, const Poly& a, const Poly& b) {
  Poly out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const Residue x = i < a.size() ? a[i] : 0;
    const Residue y = i < b.size() ? b[i] : 0;
    out[i] = f.sub(x, y);
  }
  trim(out);
  return out;
}

Poly poly_mul(const Field& f, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = f.add(out[i + j], f.mul(a[i], b[j]));
  }
  trim(out);
  return out;
}

Poly poly_mod(const Field& f, Poly a, const Poly& m) {
  require(!m.empty(), "polynomial division by zero");
  trim(a);
  const std::size_t dm = m.size() - 1;
  const Residue lead_inv = f.inverse(m.back());
  while (a.size() >= m.size()) {
    const Residue factor = f.mul(a.back(), lead_inv);
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) a[shift + i] = f.sub(a[shift + i], f.mul(factor, m[i]));
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Field& f, const Poly& a, const Poly& b, const Poly& m) {
  return poly_mod(f, poly_mul(f, a, b), m);
}

Poly poly_powmod(const Field& f, Poly base, std::uint64_t e, const Poly& m) {
  Poly result = poly_mod(f, Poly{1}, m);
  base = poly_mod(f, std::move(base), m);
  while (e != 0) {
    if (e & 1U) result = poly_mulmod(f, result, base, m);
    base = poly_mulmod(f, base, base, m);
    e >>= 1U;
  }
  return result;
}

Poly poly_gcd(const Field& f, Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(f, std::move(a), b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const Residue inv = f.inverse(a.back());
    for (auto& c : a) c = f.mul(c, inv);
  }
  return a;
}

bool is_irreducible(const Field& f, std::span<const Residue> monic_coeffs) {
  Poly m(monic_coeffs.begin(), monic_coeffs.end());
  trim(m);
  require(!m.empty() && m.back() == 1, "irreducibility test needs a monic polynomial");
  const std::size_t n = m.size() - 1;
  if (n == 0) return false;
  if (n == 1) return true;
  const Poly x{0, 1};
  Poly h = poly_mod(f, x, m);
  for (std::size_t i = 1; i <= n / 2; ++i) {
    h = poly_powmod(f, h, f.p(), m);
    const Poly g = poly_gcd(f, poly_sub(f, h, x), m);
    if (g.size() != 1) return false;
  }
  return true;
}

}  // namespace vc2::highrank
