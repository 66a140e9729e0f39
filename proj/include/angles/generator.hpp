#pragma once

#include <vector>

#include "angles/field.hpp"
#include "angles/hnf.hpp"
#include "angles/primes.hpp"
#include "angles/units.hpp"

namespace angles {

struct GeneratorRec {
  PrimeIdealRec ideal;
  AlgElem alpha;
  bool normalized = false;
};

/// Z-basis (rows, power-basis coordinates) of the ideal (p, g(θ)).
IntMatrix ideal_basis(const PrimeIdealRec& ideal, const FieldSpec& F);

/// a ∈ (p, g(θ)) iff a(X) ≡ 0 modulo (p, g(X)).
bool in_ideal(const AlgElem& a, const PrimeIdealRec& ideal, const FieldSpec& F);

/// Both GeneratorRec invariants: |N(α)| = N(𝔭) and α ∈ 𝔭.
bool is_generator(const AlgElem& alpha, const PrimeIdealRec& ideal, const FieldSpec& F);

/// Squared-length bound 4·n·N^(2/n)·|disc|^(1/n) on the Minkowski image
/// beyond which the search gives up.
real generator_search_bound(const PrimeIdealRec& ideal, const FieldSpec& F);

/// Shortest element of the ideal (in the Minkowski metric, ties broken by
/// coordinates) whose norm has absolute value N(𝔭). Throws
/// GeneratorNotFound once the bound is exhausted.
GeneratorRec find_generator(const PrimeIdealRec& ideal, const FieldSpec& F);

/// Canonical generator: totally positive (r1 > 0), unit-log coefficients in
/// [0, 1), and for r1 = 0 the first complex argument in [0, 2π/w).
AlgElem normalize_element(const AlgElem& alpha, const FieldSpec& F, const UnitGroup& units);
GeneratorRec normalize_generator(GeneratorRec g, const FieldSpec& F, const UnitGroup& units);
inline GeneratorRec normalize_generator(GeneratorRec g, const FieldSpec& F) {
  return normalize_generator(std::move(g), F, UnitGroup::build(F));
}

/// find + normalize for every ideal, split over `workers` threads.
std::vector<GeneratorRec> find_generators(const std::vector<PrimeIdealRec>& ideals, const FieldSpec& F,
                                          const UnitGroup& units, unsigned workers = 1);

}  // namespace angles
