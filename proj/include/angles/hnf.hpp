#pragma once

#include <vector>

#include "angles/modarith.hpp"

namespace angles {

using IntMatrix = std::vector<std::vector<i64>>;

/// Row Hermite normal form of the lattice spanned by `generators` (rows of
/// equal length). Returns the nonzero rows: upper triangular, positive
/// pivots, entries above each pivot reduced into [0, pivot).
IntMatrix hermite_normal_form(IntMatrix generators);

}  // namespace angles
