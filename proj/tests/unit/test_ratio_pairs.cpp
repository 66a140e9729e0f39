#include <doctest.h>

#include <cmath>

#include "angles/error.hpp"
#include "angles/ratio_pairs.hpp"
#include "common.hpp"

using namespace angles;

namespace {

const std::vector<AngleRecord>& cubic_angles() {
  static const std::vector<AngleRecord> v = compute_angles(AngleMap(field("cubic23")), 200000, 2);
  return v;
}

RatioParams params(const std::string& box) {
  RatioParams P;
  P.x0 = 2;
  P.y0 = TorusPoint{{0.3, 0.7}};
  P.eps = Rational(1, 2);
  P.delta = Rational(1, 5);
  P.V = BoxSpec::parse(box, 2);
  P.max_norm = 200000;
  return P;
}

// independent membership test for y0 + V - V
bool in_target(const TorusPoint& d, const RatioParams& P) {
  for (std::size_t i = 0; i < d.dim(); ++i) {
    const double side = P.V.side(i);
    if (side >= 1) continue;
    double off = d.coords[i] - P.y0.coords[i];
    off -= std::round(off);
    if (!(std::abs(off) < side)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("parameter checks") {
  RatioParams P = params("0,0:0.5,0.5");
  CHECK_NOTHROW(validate(P, 2));
  P.delta = Rational(3, 2);
  CHECK_THROWS_AS(validate(P, 2), ParamViolation);  // 1 + δ >= x0
  P = params("0,0:0.5,0.5");
  P.eps = Rational(1, 10);
  CHECK_THROWS_AS(validate(P, 2), ParamViolation);  // δ x0 >= ε
  P = params("0,0:0.5,0.5");
  P.x0 = 1;
  CHECK_THROWS_AS(validate(P, 2), ParamViolation);
}

TEST_CASE("full torus witness") {
  const RatioParams P = params("0,0:0,0");
  const PairWitness w = build_pairs(P, cubic_angles());
  CHECK_FALSE(w.empty);
  CHECK(w.pairs.size() > 100);
  for (const auto& pr : w.pairs) {
    const Rational r(BigInt(pr.q.ideal.norm), BigInt(pr.p.ideal.norm));
    CHECK(r > P.x0 - P.eps);
    CHECK(r < P.x0 + P.eps);
  }
  CHECK(verify_witness(w).all_ok());
}

TEST_CASE("quarter-measure witness") {
  const RatioParams P = params("0,0:0.5,0.5");
  const PairWitness w = build_pairs(P, cubic_angles());
  REQUIRE_FALSE(w.empty);
  const Rational lo = P.x0 - P.eps, hi = P.x0 + P.eps;
  for (std::size_t i = 0; i < w.pairs.size(); ++i) {
    const auto& pr = w.pairs[i];
    const Rational r(BigInt(pr.q.ideal.norm), BigInt(pr.p.ideal.norm));
    CHECK(r > lo);
    CHECK(r < hi);
    CHECK(in_target(pr.q.rho - pr.p.rho, P));
    CHECK(P.V.contains(pr.p.rho));
    CHECK(P.V.shifted(P.y0).contains(pr.q.rho));
    // alignment: p in B_2k, q in B_2k+1
    const double a = std::pow(2.0, 2 * pr.k), b = 2 * a;
    CHECK(pr.p.ideal.norm > a);
    CHECK(pr.p.ideal.norm <= 1.2 * a);
    CHECK(pr.q.ideal.norm > b);
    CHECK(pr.q.ideal.norm <= 1.2 * b);
    if (i > 0) {  // pairing by rank in norm order
      CHECK_FALSE(prime_less(pr.p.ideal, w.pairs[i - 1].p.ideal));
      CHECK_FALSE(prime_less(pr.q.ideal, w.pairs[i - 1].q.ideal));
    }
  }
  const WitnessCheck c = verify_witness(w);
  CHECK(c.pairs == w.pairs.size());
  CHECK(c.all_ok());
  CHECK(w.harmonic_exact);
  CHECK(w.harmonic_sum.back() >= w.harmonic_bound);

  double h = 0;
  for (const auto& pr : w.pairs) h += 1.0 / pr.p.ideal.norm;
  CHECK(h == doctest::Approx(w.harmonic_sum.back()));

  const PairWitness again = build_pairs(P, cubic_angles());
  REQUIRE(again.pairs.size() == w.pairs.size());
  for (std::size_t i = 0; i < w.pairs.size(); ++i) CHECK(again.pairs[i].p.ideal == w.pairs[i].p.ideal);
}

TEST_CASE("block sizes") {
  const RatioParams P = params("0,0:0.5,0.5");
  const PairWitness w = build_pairs(P, cubic_angles());
  const BoxSpec odd = P.V.shifted(P.y0);
  for (const auto& b : w.blocks) {
    if (b.n == 0) continue;
    u64 n = 0;
    const double lo = std::pow(2.0, b.n);
    for (const auto& a : cubic_angles())
      if (a.ideal.norm > lo && a.ideal.norm <= 1.2 * lo && (b.n % 2 ? odd : P.V).contains(a.rho)) ++n;
    CHECK(b.size == n);
    CHECK(b.expected == doctest::Approx(0.25 * 0.2 * lo / (b.n * std::log(2.0))));
  }
}

TEST_CASE("tampered witness is caught") {
  PairWitness w = build_pairs(params("0,0:0.5,0.5"), cubic_angles());
  REQUIRE(w.pairs.size() > 2);
  std::swap(w.pairs[0].q, w.pairs[1].q);
  w.pairs[0].q.rho = w.pairs[0].q.rho + TorusPoint{{0.5, 0.5}};
  CHECK_FALSE(verify_witness(w).all_ok());
}

TEST_CASE("empty witness") {
  RatioParams P = params("0,0:0.5,0.5");
  P.max_norm = 20;
  const PairWitness w = build_pairs(P, cubic_angles());
  CHECK(w.empty);
  CHECK(w.pairs.empty());
}
