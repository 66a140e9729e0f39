#pragma once

#include <cstdint>
#include <vector>

#include "angles/modarith.hpp"

namespace angles {

/// The finite field F_q for q prime (modular arithmetic) or q ∈ {4, 8, 9}
/// (tables over F_2[x]/(x²+x+1), F_2[x]/(x³+x+1), F_3[x]/(x²+1)). Elements
/// are 0 .. q-1; for q = p^k the base-p digits are the coefficients.
class Fq {
 public:
  explicit Fq(std::uint32_t q);

  std::uint32_t q() const { return q_; }
  std::uint32_t characteristic() const { return p_; }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t neg(std::uint32_t a) const;
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
  /// Throws DomainError for 0.
  std::uint32_t inv(std::uint32_t a) const;

 private:
  std::uint32_t q_, p_;
  bool prime_;
  std::vector<std::uint32_t> add_, mul_, neg_, inv_;
};

/// Polynomial over F_q, coefficients low-to-high, no trailing zeros.
using PolyFq = std::vector<std::uint32_t>;

namespace fq {
void trim(PolyFq& a);
int degree(const PolyFq& a);
PolyFq add(const PolyFq& a, const PolyFq& b, const Fq& F);
PolyFq sub(const PolyFq& a, const PolyFq& b, const Fq& F);
PolyFq mul(const PolyFq& a, const PolyFq& b, const Fq& F);
/// Remainder of a by b (b != 0).
PolyFq mod(const PolyFq& a, const PolyFq& b, const Fq& F);
PolyFq monic(const PolyFq& a, const Fq& F);
PolyFq gcd(PolyFq a, PolyFq b, const Fq& F);
PolyFq powmod(const PolyFq& base, std::uint64_t e, const PolyFq& m, const Fq& F);
/// Monic polynomial of degree n whose lower coefficients are the base-q
/// digits of code (c0 least significant).
PolyFq decode_monic(std::uint64_t code, int n, const Fq& F);
std::uint64_t encode_lower(const PolyFq& a, int n, const Fq& F);
}  // namespace fq

/// Rabin's test: f of degree n is irreducible iff T^(q^n) ≡ T mod f and
/// gcd(T^(q^(n/r)) - T, f) = 1 for every prime r | n.
bool is_irreducible(const PolyFq& f, const Fq& F);

/// (1/n) Σ_{d|n} μ(d) q^(n/d).
u64 necklace_count(u64 q, int n);

/// Monic irreducibles of every degree 1 .. n_max, as codes (see
/// fq::decode_monic) in increasing order. Reducibles are struck out by
/// multiplying lower-degree irreducibles into a bitmap; degrees with
/// q^n > 2^27 fall back to Rabin's test on every monic polynomial.
class IrreducibleTable {
 public:
  IrreducibleTable(const Fq& F, int n_max, unsigned workers = 1);

  const Fq& field() const { return F_; }
  int max_degree() const { return static_cast<int>(codes_.size()) - 1; }
  const std::vector<std::uint64_t>& codes(int n) const { return codes_.at(n); }
  std::size_t count(int n) const { return codes_.at(n).size(); }
  PolyFq poly(int n, std::size_t i) const { return fq::decode_monic(codes_.at(n).at(i), n, F_); }

 private:
  Fq F_;
  std::vector<std::vector<std::uint64_t>> codes_;
};

std::vector<PolyFq> irreducibles(std::uint32_t q, int n);

struct ClassRow {
  int n = 0;
  u64 total = 0;      // all monic irreducibles of degree n
  u64 necklace = 0;   // the formula value
  u64 ramified = 0;   // p | m
  std::vector<u64> counts;  // per unit class
  double predicted = 0;     // q^n / (n Φ(m))
  std::vector<double> residual;    // count - predicted
  std::vector<double> normalized;  // residual / q^(n/2)
  bool sums_ok() const;
};

struct ClassCountReport {
  std::uint32_t q = 0;
  PolyFq modulus;               // made monic
  std::vector<PolyFq> classes;  // unit residues mod m, in code order
  u64 phi = 0;
  std::vector<ClassRow> rows;   // n = 1 .. n_max
  double max_normalized() const;
  bool sums_ok() const;
};

/// Monic irreducibles of degree <= n_max by residue class in (F_q[T]/m)^*.
ClassCountReport class_counts(const IrreducibleTable& table, const PolyFq& modulus);
ClassCountReport class_counts(std::uint32_t q, const PolyFq& modulus, int n_max);

struct FrobeniusCell {
  int n = 0;
  std::uint32_t g = 0;  // Frobenius exponent in Gal(F_{q^M}/F_q) = Z/M
  bool in_gamma = false;
  u64 count = 0;
  double predicted = 0;
  double normalized = 0;  // (count - predicted) / q^(n/2)
};

struct NongeometricReport {
  std::uint32_t q = 0;
  std::uint32_t M = 1;
  std::vector<FrobeniusCell> cells;  // n = 1 .. n_max, g = 0 .. M-1
  u64 outside_gamma() const;         // total count in cells outside Γ
  double max_normalized_inside() const;
};

/// Constant-field extension F_{q^M}: a prime of degree n has Frobenius
/// Frob^n, so (n, σ(𝔭)) lies in Γ = {(n, g) : g ≡ n mod M}.
NongeometricReport nongeometric_image(const IrreducibleTable& table, std::uint32_t M);

}  // namespace angles
