#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ff/field.hpp"

namespace vc2::highrank {

using ff::Field;
using ff::Residue;

/// Dense univariate polynomial over F_p, coefficients from the constant term
/// upward. The zero polynomial is the empty vector.
using Poly = std::vector<Residue>;

void trim(Poly& a);
Poly poly_sub(const Field& f, const Poly& a, const Poly& b);
Poly poly_mul(const Field& f, const Poly& a, const Poly& b);
/// Remainder of a modulo a nonzero m.
Poly poly_mod(const Field& f, Poly a, const Poly& m);
Poly poly_mulmod(const Field& f, const Poly& a, const Poly& b, const Poly& m);
Poly poly_powmod(const Field& f, Poly base, std::uint64_t e, const Poly& m);
/// Monic gcd.
Poly poly_gcd(const Field& f, Poly a, Poly b);

/// Ben-Or test: a monic f of degree n is irreducible iff
/// gcd(x^(p^i) - x, f) = 1 for every 1 <= i <= n/2.
bool is_irreducible(const Field& f, std::span<const Residue> monic_coeffs);

}  // namespace vc2::highrank
