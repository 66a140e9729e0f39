#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "angles/generator.hpp"
#include "angles/rational.hpp"
#include "angles/torus.hpp"

namespace angles {

/// One prime ideal with its normalized generator and generalized angle.
struct AngleRecord {
  PrimeIdealRec ideal;
  AlgElem alpha;
  TorusPoint rho;
};

/// primes -> generators -> angles for every prime ideal of norm <= max_norm,
/// in (norm, p, root) order. Output does not depend on `workers`.
std::vector<AngleRecord> compute_angles(const AngleMap& map, u64 max_norm, unsigned workers = 1);
std::vector<AngleRecord> compute_angles(const AngleMap& map, const std::vector<GeneratorRec>& gens);

struct WeylCheckpoint {
  u64 x = 0;
  u64 count = 0;
  std::complex<double> sum;
  double normalized = 0;  // |sum| / count
};

struct WeylReport {
  std::vector<i64> k;
  std::vector<WeylCheckpoint> checkpoints;
};

/// Σ χ_k(𝔭) over N(𝔭) <= X for each checkpoint X. `angles` must be sorted by
/// norm. Partial sums are taken over fixed 4096-record chunks and merged in
/// order, so the result is the same for every worker count.
WeylReport weyl_sum(const std::vector<i64>& k, std::span<const AngleRecord> angles, std::vector<u64> checkpoints,
                    unsigned workers = 1);

/// Half-open box Π [lo_i, hi_i) on the torus, wrapping when hi_i < lo_i.
/// lo_i == hi_i means the whole circle in that direction.
struct BoxSpec {
  std::vector<double> lo, hi;

  static BoxSpec full(std::size_t dim) { return {std::vector<double>(dim, 0.0), std::vector<double>(dim, 0.0)}; }
  std::size_t dim() const { return lo.size(); }
  double side(std::size_t i) const;
  /// Haar measure.
  double measure() const;
  bool contains(const TorusPoint& t) const;
  /// Same box translated by y (mod 1).
  BoxSpec shifted(const TorusPoint& y) const;
  /// "lo1,lo2:hi1,hi2"
  static BoxSpec parse(const std::string& text, std::size_t dim);
  std::string str() const;
};

/// li(x) = Ei(log x).
double log_integral(double x);

struct BoxCount {
  BoxSpec box;
  u64 x = 0;
  u64 count = 0;
  u64 total = 0;             // π_K(X)
  double expected = 0;       // λ·π_K(X)
  double expected_li = 0;    // λ·li(X)
  double expected_xlog = 0;  // λ·X/log X
  double deviation = 0;      // count - expected
  double frequency() const { return total ? static_cast<double>(count) / total : 0.0; }
};

BoxCount box_count(const BoxSpec& box, std::span<const AngleRecord> angles, u64 x);

/// The g^(n-1) boxes Π [j_i/g, (j_i+1)/g), last coordinate fastest.
std::vector<BoxSpec> grid_boxes(std::size_t dim, unsigned g);
std::vector<BoxCount> grid_counts(std::size_t dim, unsigned g, std::span<const AngleRecord> angles, u64 x);

struct WindowCount {
  Rational x, delta;
  u64 count = 0;
  double predicted = 0;     // λ·δ·x/log x
  double predicted_li = 0;  // λ·(li((1+δ)x) - li(x))
};

/// Primes with x < N(𝔭) <= (1+δ)x and ρ(𝔭) in the box; the window is
/// compared exactly.
WindowCount window_count(const BoxSpec& box, const Rational& delta, const Rational& x,
                         std::span<const AngleRecord> angles);

/// Count per class; `classes` maps an angle record to [0, num_classes).
/// With m = (1) and class number one there is a single class.
std::vector<u64> class_counts(std::span<const AngleRecord> angles, u64 x, std::size_t num_classes,
                              const std::function<std::size_t(const AngleRecord&)>& classes);
inline std::vector<u64> class_counts(std::span<const AngleRecord> angles, u64 x) {
  return class_counts(angles, x, 1, [](const AngleRecord&) { return std::size_t{0}; });
}

/// Number of records with norm <= x (records sorted by norm).
u64 prime_count(std::span<const AngleRecord> angles, u64 x);

}  // namespace angles
