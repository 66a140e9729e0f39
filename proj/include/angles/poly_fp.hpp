#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "angles/modarith.hpp"

namespace angles {

/// Dense polynomial over F_p, coefficients low-to-high with no trailing
/// zeros. The zero polynomial is the empty vector.
using PolyFp = std::vector<u64>;

namespace fp {

void trim(PolyFp& a);
int degree(const PolyFp& a);  // -1 for zero
PolyFp from_integers(std::span<const i64> coeffs, u64 p);
PolyFp add(const PolyFp& a, const PolyFp& b, u64 p);
PolyFp sub(const PolyFp& a, const PolyFp& b, u64 p);
PolyFp mul(const PolyFp& a, const PolyFp& b, u64 p);
PolyFp scale(const PolyFp& a, u64 c, u64 p);
/// Quotient and remainder; b must be nonzero.
void divmod(const PolyFp& a, const PolyFp& b, u64 p, PolyFp& q, PolyFp& r);
PolyFp mod(const PolyFp& a, const PolyFp& b, u64 p);
PolyFp div(const PolyFp& a, const PolyFp& b, u64 p);
PolyFp monic(const PolyFp& a, u64 p);
/// Monic gcd (zero only when both inputs are zero).
PolyFp gcd(PolyFp a, PolyFp b, u64 p);
PolyFp derivative(const PolyFp& a, u64 p);
PolyFp mulmod(const PolyFp& a, const PolyFp& b, const PolyFp& m, u64 p);
PolyFp powmod(const PolyFp& base, u64 exp, const PolyFp& m, u64 p);
inline bool is_one(const PolyFp& a) { return a.size() == 1 && a[0] == 1; }

}  // namespace fp

struct FactorFp {
  PolyFp factor;  // monic irreducible
  int multiplicity = 1;
};

/// Complete factorization of an integer polynomial modulo the prime p:
/// squarefree split, distinct-degree split, then Cantor-Zassenhaus with a
/// PRNG seeded by `seed`. Factors come back sorted by degree; linear factors
/// X - r by increasing r, higher-degree ones by coefficients from the top.
std::vector<FactorFp> factor_poly_mod_p(std::span<const i64> f, u64 p, u64 seed = 0x5eed);

/// Canonical factor order used everywhere downstream.
bool factor_less(const PolyFp& a, const PolyFp& b, u64 p);

/// Root of a monic linear factor X + c.
inline u64 linear_root(const PolyFp& linear, u64 p) { return linear[0] == 0 ? 0 : p - linear[0]; }

}  // namespace angles
