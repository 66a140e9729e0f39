#pragma once

#include <complex>
#include <compare>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "angles/modarith.hpp"

namespace angles {

using real = long double;
using complex = std::complex<long double>;

/// An algebraic integer in the power basis 1, θ, ..., θ^(n-1).
struct AlgElem {
  std::vector<i64> coords;

  bool is_zero() const;
  auto operator<=>(const AlgElem&) const = default;
};

/// Values of an element at the stored roots: one real number per real place,
/// one complex number per conjugate pair (the root with positive imaginary
/// part).
struct Embedding {
  std::vector<real> real_places;
  std::vector<complex> complex_places;
};

struct FieldConfig {
  std::string name;
  std::vector<i64> poly;                  // c0, ..., c_{n-1}, 1
  std::vector<std::vector<i64>> units;    // fundamental units
  int roots_of_unity = 2;                 // w
  std::vector<i64> torsion_generator;     // primitive w-th root of unity; empty means -1
  bool class_number_one = true;
};

/// A monogenic number field with Z[θ] its maximal order. Immutable after
/// construction; every invariant is checked in `create`.
class FieldSpec {
 public:
  static FieldSpec create(const FieldConfig& cfg);

  const std::string& name() const { return name_; }
  int degree() const { return static_cast<int>(poly_.size()) - 1; }
  int r1() const { return static_cast<int>(real_roots_.size()); }
  int r2() const { return static_cast<int>(complex_roots_.size()); }
  int unit_rank() const { return r1() + r2() - 1; }
  const std::vector<i64>& poly() const { return poly_; }
  const std::vector<real>& real_roots() const { return real_roots_; }
  const std::vector<complex>& complex_roots() const { return complex_roots_; }
  const std::vector<AlgElem>& units() const { return units_; }
  const std::vector<AlgElem>& unit_inverses() const { return unit_inverses_; }
  int roots_of_unity() const { return roots_of_unity_; }
  const AlgElem& torsion_generator() const { return torsion_generator_; }
  i128 discriminant() const { return discriminant_; }
  bool class_number_one() const { return class_number_one_; }
  const FieldConfig& config() const { return config_; }

  AlgElem one() const;
  AlgElem theta() const;
  AlgElem from_integer(i64 v) const;
  AlgElem element(std::vector<i64> coords) const;

 private:
  FieldConfig config_;
  std::string name_;
  std::vector<i64> poly_;
  std::vector<real> real_roots_;
  std::vector<complex> complex_roots_;
  std::vector<AlgElem> units_;
  std::vector<AlgElem> unit_inverses_;
  int roots_of_unity_ = 2;
  AlgElem torsion_generator_;
  i128 discriminant_ = 0;
  bool class_number_one_ = true;
};

AlgElem add(const AlgElem& a, const AlgElem& b);
AlgElem sub(const AlgElem& a, const AlgElem& b);
AlgElem neg(const AlgElem& a);
/// Exact product reduced modulo the defining polynomial.
AlgElem mul(const AlgElem& a, const AlgElem& b, const FieldSpec& F);
/// a^k for k >= 0.
AlgElem pow(const AlgElem& a, unsigned k, const FieldSpec& F);
/// Product of fundamental-unit powers u_i^{e_i}, negative exponents allowed.
AlgElem unit_product(const std::vector<i64>& exponents, const FieldSpec& F);

/// Matrix of multiplication by a in the power basis (column j = a·θ^j).
std::vector<std::vector<i128>> multiplication_matrix(const AlgElem& a, const FieldSpec& F);

/// Exact norm N(a) = Res(f, a(X)) = det of the multiplication matrix.
i128 norm(const AlgElem& a, const FieldSpec& F);

/// a evaluated at every stored root.
Embedding embed(const AlgElem& a, const FieldSpec& F);

/// Exact discriminant of a monic integer polynomial.
i128 poly_discriminant(const std::vector<i64>& poly);

/// Exact determinant by fraction-free elimination; throws on overflow.
i128 bareiss_determinant(std::vector<std::vector<i128>> m);

FieldConfig parse_field_config(const std::string& json_text);
FieldConfig load_field_config(const std::filesystem::path& path);
inline FieldSpec load_field(const std::filesystem::path& path) {
  return FieldSpec::create(load_field_config(path));
}

std::string to_string(i128 v);

}  // namespace angles
