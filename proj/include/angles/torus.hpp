#pragma once

#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include "angles/field.hpp"
#include "angles/generator.hpp"
#include "angles/hnf.hpp"
#include "angles/lattice.hpp"
#include "angles/units.hpp"

namespace angles {

/// A point of the compact torus V/Λ in coordinates over the lattice basis,
/// each in [0, 1).
struct TorusPoint {
  std::vector<double> coords;

  static TorusPoint zero(std::size_t dim) { return TorusPoint{std::vector<double>(dim, 0.0)}; }
  std::size_t dim() const { return coords.size(); }
  bool operator==(const TorusPoint&) const = default;
};

/// Reduce into [0, 1).
double wrap01(long double t);
TorusPoint operator+(const TorusPoint& a, const TorusPoint& b);
TorusPoint operator-(const TorusPoint& a, const TorusPoint& b);
TorusPoint operator-(const TorusPoint& a);
TorusPoint scaled(const TorusPoint& a, i64 k);
/// Max over coordinates of the distance to the nearest integer of a - b.
double torus_distance(const TorusPoint& a, const TorusPoint& b);

/// Ambient coordinates: log|σ_v| for the r1 real places, then (log|σ_v|,
/// arg σ_v) for each complex place with the argument in [0, 2π).
struct LogLattice {
  int r1 = 0;
  int r2 = 0;
  int dim_ambient = 0;
  RealMatrix basis;  // n-1 vectors spanning the norm-one subspace V
  RealMatrix dual;   // n-1 vectors in W = (section direction)^⊥, <dual_i, basis_j> = δ_ij
  std::vector<real> section;  // 1 on log coordinates, 0 on arguments

  // Coarser lattice of the θ-projection (absolute values at real places,
  // quotient by all units), with basis_i = Σ_j theta_matrix_ij theta_basis_j.
  RealMatrix theta_basis;
  RealMatrix theta_dual;
  IntMatrix theta_matrix;

  std::size_t dim() const { return basis.size(); }
};

std::vector<real> log_vector(const AlgElem& alpha, const FieldSpec& F);
/// Same, additionally checking Σ N_v log|σ_v| = log(ideal_norm) to 1e-9.
std::vector<real> log_vector(const AlgElem& alpha, u64 ideal_norm, const FieldSpec& F);

LogLattice build_lattice(const FieldSpec& F, const UnitGroup& units);
inline LogLattice build_lattice(const FieldSpec& F) { return build_lattice(F, UnitGroup::build(F)); }

/// Raw pairings <dual_i, x> before reduction mod 1.
std::vector<real> dual_pairings(const std::vector<real>& x, const RealMatrix& dual);
TorusPoint torus_coords(const std::vector<real>& x, const LogLattice& L);

/// Signs at real places together with the log vector.
struct ArchimedeanPoint {
  std::vector<int> real_signs;
  std::vector<real> logs;
};
ArchimedeanPoint archimedean_point(const AlgElem& alpha, const FieldSpec& F);
/// θ: replace every real coordinate by its absolute value.
ArchimedeanPoint theta_projection(const ArchimedeanPoint& x);
/// θ on the torus: Γ -> K+_{∞,1}/θ(U).
TorusPoint theta_projection(const TorusPoint& t, const LogLattice& L);
/// θ-torus coordinates straight from a log vector.
TorusPoint theta_coords(const std::vector<real>& x, const LogLattice& L);

/// Everything needed to turn generators into angles for one field.
class AngleMap {
 public:
  explicit AngleMap(FieldSpec F);

  const FieldSpec& field() const { return field_; }
  const UnitGroup& units() const { return units_; }
  const LogLattice& lattice() const { return lattice_; }
  std::size_t dim() const { return lattice_.dim(); }

  /// Make alpha totally positive (r1 > 0) without changing the ideal.
  AlgElem positive_representative(const AlgElem& alpha) const;
  /// ρ((α)) from any generator α of the ideal.
  TorusPoint rho_of_generator(const AlgElem& alpha, u64 ideal_norm) const;
  /// The log vector that ρ((α)) is read from.
  std::vector<real> angle_log_vector(const AlgElem& alpha, u64 ideal_norm) const;
  /// ρ of a product of prime ideals, each with an exponent (may be negative).
  TorusPoint rho(const std::vector<std::pair<PrimeIdealRec, i64>>& factors) const;
  TorusPoint rho(const std::vector<std::pair<GeneratorRec, i64>>& factors) const;

 private:
  FieldSpec field_;
  UnitGroup units_;
  LogLattice lattice_;
};

/// χ_k(𝔞) = exp(-2πi <k, ρ(𝔞)>).
std::complex<double> grossenchar(const std::vector<i64>& k, const TorusPoint& t);
/// Same character evaluated from the log vector without reducing mod 1.
std::complex<double> grossenchar_direct(const std::vector<i64>& k, const std::vector<real>& x, const LogLattice& L);

/// Residuals of the computed cubic-field constants against the closed
/// forms v1 = (log θ, -½ log θ, 2πφ), w1 = (2/(3 log θ), -2/(3 log θ), 0),
/// w2 = (-2φ/(3 log θ), 2φ/(3 log θ), 1/(2π)).
struct GoldenReport {
  real theta = 0;
  real phi = 0;
  std::vector<real> v1, w1, w2;
  real v1_residual = 0, w1_residual = 0, w2_residual = 0, modulus_residual = 0;
  bool ok(real tol = 1e-9L) const;
};
GoldenReport cubic_golden_report(const AngleMap& map);

}  // namespace angles
