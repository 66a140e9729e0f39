#include "angles/ratio_pairs.hpp"

#include <cmath>

#include "angles/error.hpp"

namespace angles {

namespace {

BigInt floor_of(const Rational& r) {
  BigInt q = numerator(r) / denominator(r);
  if (q * denominator(r) > numerator(r)) --q;
  return q;
}

u64 clamp_u64(const BigInt& v) {
  if (v < 0) return 0;
  if (v > std::numeric_limits<u64>::max()) return std::numeric_limits<u64>::max();
  return v.convert_to<u64>();
}

// records with lo < N <= hi and ρ in box, in stream order
std::vector<AngleRecord> block(std::span<const AngleRecord> angles, const Rational& lo, const Rational& hi,
                               const BoxSpec& box) {
  const std::size_t b = prime_count(angles, clamp_u64(floor_of(lo)));
  const std::size_t e = prime_count(angles, clamp_u64(floor_of(hi)));
  std::vector<AngleRecord> out;
  for (std::size_t i = b; i < e; ++i)
    if (box.contains(angles[i].rho)) out.push_back(angles[i]);
  return out;
}

Rational rpow(const Rational& x, int n) {
  Rational r = 1;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

}  // namespace

void validate(const RatioParams& P, std::size_t dim) {
  auto fail = [&](const std::string& why) {
    return ParamViolation(why, {{"x0", to_string(P.x0)}, {"eps", to_string(P.eps)}, {"delta", to_string(P.delta)}});
  };
  if (P.x0 <= 1) throw fail("x0 must exceed 1");
  if (P.eps <= 0) throw fail("eps must be positive");
  if (P.delta <= 0) throw fail("delta must be positive");
  if (1 + P.delta >= P.x0) throw fail("need 1 + delta < x0");
  if (P.delta * P.x0 >= P.eps) throw fail("need delta * x0 < eps");
  if (P.y0.dim() != dim || P.V.dim() != dim) throw fail("y0 and V must match the torus dimension");
  if (!(P.V.measure() > 0)) throw fail("V must have positive measure");
}

PairWitness build_pairs(const RatioParams& P, std::span<const AngleRecord> angles) {
  validate(P, P.y0.dim());
  PairWitness w;
  w.params = P;
  const Rational one_delta = 1 + P.delta;
  const Rational xmax = Rational(BigInt(P.max_norm));
  while (one_delta * rpow(P.x0, 2 * (w.K + 1) + 1) <= xmax) ++w.K;

  const BoxSpec V1 = P.V.shifted(P.y0);
  const double lambda = P.V.measure();
  const double log_x0 = std::log(to_double(P.x0));
  std::vector<std::vector<AngleRecord>> B;
  for (int n = 0; n <= 2 * w.K + 1; ++n) {
    const Rational lo = rpow(P.x0, n);
    B.push_back(block(angles, lo, one_delta * lo, n % 2 == 0 ? P.V : V1));
    BlockSize bs;
    bs.n = n;
    bs.lower = to_double(lo);
    bs.size = B.back().size();
    bs.expected = n > 0 ? lambda * to_double(P.delta) * bs.lower / (n * log_x0) : 0.0;
    w.blocks.push_back(bs);
  }

  w.k0 = w.K + 1;
  for (int k = w.K; k >= 0; --k) {
    if (B[2 * k + 1].size() < B[2 * k].size()) break;
    w.k0 = k;
  }

  w.c_sizes.assign(static_cast<std::size_t>(w.K + 1), 0);
  w.harmonic_exact = true;
  double running = 0;
  bool first = true;
  for (int k = w.k0; k <= w.K; ++k) {
    const auto& even = B[2 * k];
    const auto& odd = B[2 * k + 1];
    w.c_sizes[k] = even.size();
    const Rational cap = one_delta * rpow(P.x0, 2 * k);
    w.harmonic_bound += static_cast<double>(even.size()) / to_double(cap);
    for (std::size_t i = 0; i < even.size(); ++i) {
      PairRec pr{w.pairs.size() + 1, k, even[i], odd[i]};
      running += 1.0 / static_cast<double>(pr.p.ideal.norm);
      w.harmonic_sum.push_back(running);
      if (Rational(BigInt(pr.p.ideal.norm)) > cap) w.harmonic_exact = false;
      const Rational ratio(BigInt(pr.q.ideal.norm), BigInt(pr.p.ideal.norm));
      if (first || ratio < w.ratio_min) w.ratio_min = ratio;
      if (first || ratio > w.ratio_max) w.ratio_max = ratio;
      first = false;
      w.pairs.push_back(std::move(pr));
    }
  }
  w.empty = w.pairs.empty();
  return w;
}

bool in_difference_box(const TorusPoint& diff, const TorusPoint& y0, const BoxSpec& V) {
  for (std::size_t i = 0; i < V.dim(); ++i) {
    if (V.lo[i] == V.hi[i]) continue;
    const long double side = V.side(i);
    long double d = static_cast<long double>(diff.coords[i]) - y0.coords[i];
    d -= std::nearbyint(d);
    if (!(std::abs(d) < side || std::abs(d - 1) < side || std::abs(d + 1) < side)) return false;
  }
  return true;
}

WitnessCheck verify_witness(const PairWitness& w) {
  const RatioParams& P = w.params;
  const BoxSpec V1 = P.V.shifted(P.y0);
  WitnessCheck c;
  c.pairs = w.pairs.size();
  for (const auto& pr : w.pairs) {
    const Rational ratio(BigInt(pr.q.ideal.norm), BigInt(pr.p.ideal.norm));
    if (ratio > P.x0 - P.eps && ratio < P.x0 + P.eps) ++c.ratio_ok;
    if (in_difference_box(pr.q.rho - pr.p.rho, P.y0, P.V)) ++c.angle_ok;
    Rational lo = 1;
    for (int i = 0; i < 2 * pr.k; ++i) lo *= P.x0;
    const Rational np(BigInt(pr.p.ideal.norm)), nq(BigInt(pr.q.ideal.norm));
    const bool p_in = np > lo && np <= (1 + P.delta) * lo && P.V.contains(pr.p.rho);
    lo *= P.x0;
    const bool q_in = nq > lo && nq <= (1 + P.delta) * lo && V1.contains(pr.q.rho);
    if (p_in && q_in) ++c.aligned;
  }
  return c;
}

}  // namespace angles
