#pragma once

#include <cstdint>
#include <vector>

#include "angles/field.hpp"

namespace angles {

/// Unit-group data derived from a FieldSpec.
///
/// For r1 > 0 the generalized-angle torus is built from the totally
/// positive units U+, which requires the sign map U -> {±1}^r1 to be onto
/// (otherwise the angle group has several components and is rejected with
/// UnsupportedField). For r1 = 0 every unit is "positive" and the torsion
/// part is carried along.
struct UnitGroup {
  /// Basis of the free part of U+ (exact elements and inverses).
  std::vector<AlgElem> positive_basis;
  std::vector<AlgElem> positive_inverses;
  /// Exponents of each positive basis element over (-1, ε_1, ..., ε_r).
  std::vector<std::vector<i64>> positive_exponents;
  /// sign_fixers[mask] is a unit whose real embeddings have sign pattern
  /// `mask` (bit v set means negative at real place v).
  std::vector<AlgElem> sign_fixers;
  /// log|σ_v(u)| for every place v (rows) and positive basis unit (cols).
  std::vector<std::vector<real>> log_matrix;
  /// ζ^rotation_power has argument exactly 2π/w at the first complex place.
  unsigned rotation_power = 1;

  static UnitGroup build(const FieldSpec& F);
};

/// Bitmask of negative real embeddings.
std::uint32_t sign_mask(const AlgElem& a, const FieldSpec& F);

}  // namespace angles
