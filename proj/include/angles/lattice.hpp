#pragma once

#include <vector>

#include "angles/field.hpp"
#include "angles/hnf.hpp"

namespace angles {

using RealMatrix = std::vector<std::vector<real>>;

/// In-place LLL reduction of the rows of `basis`. `transform` starts as any
/// integer matrix with one row per basis vector and receives the same row
/// operations, so reduced_row_i = Σ_j transform_ij · original_row_j when it
/// starts as the identity.
void lll_reduce(RealMatrix& basis, IntMatrix& transform, real delta = 0.99L);

/// Integer coefficient vectors x != 0 with |Σ x_i b_i|^2 <= radius2. Only one
/// of ±x is returned (the one whose last nonzero entry is positive).
std::vector<std::vector<i64>> short_vectors(const RealMatrix& basis, real radius2);

}  // namespace angles
