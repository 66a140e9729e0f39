#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "angles/rational.hpp"
#include "angles/ratio_pairs.hpp"
#include "angles/torus.hpp"

namespace angles {

/// One factor (Z+, μ_𝔭) of the product space, truncated at `level`.
struct CoordSpec {
  std::string label;
  u64 norm = 0;
  int level = 8;
  TorusPoint rho;
};

/// Π (Z+, μ_𝔭) with μ_𝔭(j) = N^-j (1 - 1/N) for j < L and the remaining mass
/// N^-L on j = L.
class ProductSpace {
 public:
  explicit ProductSpace(std::vector<CoordSpec> coords);

  std::size_t size() const { return coords_.size(); }
  const CoordSpec& coord(std::size_t i) const { return coords_.at(i); }
  std::size_t torus_dim() const { return coords_.empty() ? 0 : coords_.front().rho.dim(); }
  /// μ_i(j) exactly, for 0 <= j <= level.
  Rational mass(std::size_t i, int j) const;
  Rational total_mass(std::size_t i) const;

 private:
  std::vector<CoordSpec> coords_;
};

/// Finitely supported point: (index, value) with value != 0, sorted by index.
struct TailPoint {
  std::vector<std::pair<std::uint32_t, int>> entries;

  int at(std::size_t i) const;
  void set(std::size_t i, int v);
  bool operator==(const TailPoint&) const = default;
};

struct CocycleValue {
  Rational ratio = 1;
  TorusPoint angle;

  CocycleValue operator*(const CocycleValue& o) const;
  CocycleValue inverse() const;
  bool operator==(const CocycleValue&) const = default;
};

/// c_μ(x, y) = Π μ(y_𝔭)/μ(x_𝔭) = Π N(𝔭)^(x_𝔭 - y_𝔭), exactly.
Rational rn_cocycle(const TailPoint& x, const TailPoint& y, const ProductSpace& S);
/// (Π N^(y-x), Σ (y-x) ρ(𝔭) mod 1).
CocycleValue product_cocycle(const TailPoint& x, const TailPoint& y, const ProductSpace& S);
/// p(r, γ) = r^-1
Rational project_ratio(const CocycleValue& c);

/// T_n: K[i] -> L[i] on the coordinates I (tuples in the order of I).
struct Block {
  std::vector<std::size_t> I;
  std::vector<std::vector<int>> K, L;
};

/// The partial map T: a point lying in A_n = {x|I_n ∈ K_n} and in no earlier
/// A_m or B_m = {x|I_m ∈ L_m} gets its I_n coordinates rewritten by T_n.
class PartialMap {
 public:
  PartialMap(std::vector<Block> blocks, const ProductSpace& S);

  const std::vector<Block>& blocks() const { return blocks_; }
  /// (block index, image) or nothing when x is outside the domain.
  std::optional<std::pair<std::size_t, TailPoint>> apply(const TailPoint& x) const;
  /// μ(Z(tuple)) on the block coordinates.
  Rational cylinder_mass(std::size_t n, const std::vector<int>& tuple) const;
  /// μ(x is past blocks 0..n-1 without hitting any A_m or B_m). The factors
  /// are exact; their product is accumulated in long double because the
  /// exact denominators grow with every block.
  long double survival(std::size_t n) const;

 private:
  std::vector<Block> blocks_;
  ProductSpace space_;
  std::vector<long double> survival_;
  std::vector<long> owner_;              // coordinate -> block, -1 if none
  std::vector<std::size_t> zero_hits_;   // blocks whose K or L holds the zero tuple
};

PartialMap build_T(std::vector<Block> blocks, const ProductSpace& S);

/// `count` i.i.d. points of the product measure; coordinate i is drawn from a
/// stream seeded by (seed, i), so the output does not depend on `workers`.
std::vector<TailPoint> sample(const ProductSpace& S, std::uint64_t seed, std::size_t count, unsigned workers = 1);

struct TransportRow {
  std::size_t block = 0;
  std::size_t hits = 0;      // samples in the domain through this block
  double weighted = 0;       // Σ c_μ(x, Tx) over those samples / count
  double predicted = 0;      // μ(T(domain_n)) exactly, as a double
  double std_error = 0;
  double z = 0;
};

struct TransportReport {
  std::size_t samples = 0;
  std::size_t in_domain = 0;
  std::vector<TransportRow> rows;  // blocks with predicted·samples >= min_expected
  TransportRow total;              // all blocks together
  double max_abs_z() const;
};

/// Checks μ(T E) = ∫_E c_μ(x, Tx) dμ(x) by Monte Carlo on E = domain of T.
TransportReport transport_check(const PartialMap& T, const ProductSpace& S, const std::vector<TailPoint>& points,
                                double min_expected = 30);

struct WindowReport {
  std::size_t in_domain = 0;
  std::size_t in_window = 0;
  Rational s, t;
};

/// Counts in-domain points whose c(x, Tx) has ratio in [s, t] and angle in
/// y0 + V - V.
WindowReport window_check(const PartialMap& T, const ProductSpace& S, const std::vector<TailPoint>& points,
                          const Rational& s, const Rational& t, const TorusPoint& y0, const BoxSpec& V);

/// Coordinates 𝔭_1, 𝔮_1, 𝔭_2, 𝔮_2, ... of a ratio-set witness, and the blocks
/// I_n = {𝔭_n, 𝔮_n}, K_n = {(1,0)}, L_n = {(0,1)}.
ProductSpace witness_space(const PairWitness& w, int level = 8);
std::vector<Block> witness_blocks(const PairWitness& w);

/// Splitmix64 step, used to derive per-coordinate seeds.
std::uint64_t splitmix64(std::uint64_t& state);

}  // namespace angles
