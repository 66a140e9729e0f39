#pragma once

#include <span>
#include <vector>

#include "angles/equidist.hpp"
#include "angles/rational.hpp"

namespace angles {

struct RatioParams {
  Rational x0;
  TorusPoint y0;
  Rational eps;
  Rational delta;
  BoxSpec V;
  u64 max_norm = 0;
};

/// Throws ParamViolation unless x0 > 1, eps > 0, delta > 0, 1 + delta < x0,
/// delta·x0 < eps, λ(V) > 0 and y0, V have the torus dimension.
void validate(const RatioParams& params, std::size_t dim);

struct PairRec {
  std::size_t n = 0;  // 1-based pair index
  int k = 0;          // 𝔭 in B_2k, 𝔮 in B_2k+1
  AngleRecord p, q;
};

struct BlockSize {
  int n = 0;
  double lower = 0;     // x0^n
  u64 size = 0;         // |B_n|
  double expected = 0;  // λ(V)·δ·x0^n/(n log x0)
  double relative_error() const { return expected > 0 ? (static_cast<double>(size) - expected) / expected : 0.0; }
};

struct PairWitness {
  RatioParams params;
  int K = -1;   // blocks B_0 .. B_{2K+1} fit below max_norm
  int k0 = 0;   // first k of the tail where |B_2k+1| >= |B_2k| throughout
  bool empty = true;
  std::vector<BlockSize> blocks;     // n = 0 .. 2K+1
  std::vector<u64> c_sizes;          // |C_2k+1| for k = 0 .. K (0 below k0)
  std::vector<PairRec> pairs;
  std::vector<double> harmonic_sum;  // partial sums of 1/N(𝔭_n)
  double harmonic_bound = 0;         // Σ_{k>=k0} |B_2k| / ((1+δ) x0^{2k})
  bool harmonic_exact = false;       // termwise 1/N(𝔭_n) >= 1/((1+δ)x0^{2k}), checked in rationals
  Rational ratio_min, ratio_max;     // measured s, t
};

/// B_2k = {x0^2k < N <= (1+δ)x0^2k, ρ ∈ V}, B_2k+1 the same at x0^2k+1 with
/// ρ ∈ y0 + V; C_2k+1 is the first |B_2k| members of B_2k+1 in norm order and
/// pairs are matched by rank. `angles` sorted by norm.
PairWitness build_pairs(const RatioParams& params, std::span<const AngleRecord> angles);

/// y0 + (V - V): per coordinate the open interval of half-width side(V)
/// around y0 (everything when the side is >= 1/2).
bool in_difference_box(const TorusPoint& diff, const TorusPoint& y0, const BoxSpec& V);

struct WitnessCheck {
  std::size_t pairs = 0;
  std::size_t ratio_ok = 0;
  std::size_t angle_ok = 0;
  std::size_t aligned = 0;
  bool all_ok() const { return ratio_ok == pairs && angle_ok == pairs && aligned == pairs; }
};

/// Independent re-check of every pair: x0 - ε < N(𝔮)/N(𝔭) < x0 + ε exactly,
/// ρ(𝔮) - ρ(𝔭) ∈ y0 + V - V, and 𝔭 ∈ B_2k, 𝔮 ∈ B_2k+1.
WitnessCheck verify_witness(const PairWitness& w);

}  // namespace angles
