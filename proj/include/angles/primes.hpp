#pragma once

#include <compare>
#include <string>
#include <vector>

#include "angles/field.hpp"
#include "angles/poly_fp.hpp"

namespace angles {

/// A prime ideal (p, g(θ)) of Z[θ] where g is a monic irreducible factor of
/// f modulo p.
struct PrimeIdealRec {
  u64 p = 0;
  PolyFp factor;          // monic, coefficients in [0, p)
  int res_degree = 1;     // deg g
  int multiplicity = 1;   // exponent of g in f mod p
  u64 norm = 0;           // p^res_degree
  bool ramified = false;  // p | disc(f)

  bool is_linear() const { return res_degree == 1; }
  /// Root r of g = X - r; only meaningful for linear factors.
  u64 root() const { return linear_root(factor, p); }
  /// "r" for linear factors, otherwise the factor coefficients low-to-high
  /// joined by ';'.
  std::string root_label() const;

  bool operator==(const PrimeIdealRec& other) const { return p == other.p && factor == other.factor; }
};

/// Total order (norm, p, root) used for every output.
bool prime_less(const PrimeIdealRec& a, const PrimeIdealRec& b);

/// Prime ideals above the rational prime p.
std::vector<PrimeIdealRec> primes_above(const FieldSpec& F, u64 p);

/// Every prime ideal of norm <= max_norm exactly once, ascending in
/// (norm, p, root). Rational primes are factored in blocks of 2^16 by up to
/// `workers` threads and merged; the output does not depend on `workers`.
std::vector<PrimeIdealRec> enumerate_prime_ideals(const FieldSpec& F, u64 max_norm, unsigned workers = 1);

}  // namespace angles
