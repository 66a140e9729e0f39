#include <doctest.h>

#include <random>

#include "angles/error.hpp"
#include "angles/generator.hpp"
#include "common.hpp"

using namespace angles;

namespace {

PrimeIdealRec linear_prime(const FieldSpec& F, u64 p, u64 r) {
  for (const auto& rec : primes_above(F, p))
    if (rec.is_linear() && rec.root() == r) return rec;
  FAIL("no such prime");
  return {};
}

bool associate(const AlgElem& a, const AlgElem& b, const FieldSpec& F) {
  // a/b is a unit iff b | a and the norms agree up to sign
  const auto na = norm(a, F), nb = norm(b, F);
  if (na != nb && na != -nb) return false;
  const auto M = multiplication_matrix(b, F);
  // solve M y = a exactly via Cramer
  const int n = F.degree();
  const i128 det = bareiss_determinant(M);
  for (int j = 0; j < n; ++j) {
    auto Mj = M;
    for (int i = 0; i < n; ++i) Mj[i][j] = a.coords[i];
    if (bareiss_determinant(Mj) % det != 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("generators of small cubic primes") {
  const FieldSpec F = field("cubic23");
  const auto p5 = linear_prime(F, 5, 2);
  const GeneratorRec g5 = find_generator(p5, F);
  CHECK(is_generator(g5.alpha, p5, F));
  CHECK(associate(g5.alpha, F.element({-2, 1, 0}), F));

  const auto p7 = linear_prime(F, 7, 5);
  const GeneratorRec g7 = find_generator(p7, F);
  CHECK(associate(g7.alpha, F.element({2, 1, 0}), F));
  CHECK(norm(F.element({2, 1, 0}), F) == 7);
}

TEST_CASE("gaussian 2+i") {
  const FieldSpec G = field("gaussian");
  // i ≡ r mod 5, so 2 + i lies over r = 3 and its conjugate over r = 2
  const auto p3 = linear_prime(G, 5, 3), p2 = linear_prime(G, 5, 2);
  CHECK(associate(find_generator(p3, G).alpha, G.element({2, 1}), G));
  CHECK(associate(find_generator(p2, G).alpha, G.element({2, -1}), G));
  CHECK(in_ideal(G.element({2, 1}), p3, G));
  CHECK_FALSE(in_ideal(G.element({2, 1}), p2, G));
}

TEST_CASE("membership and generator invariants") {
  const FieldSpec F = field("cubic23");
  const auto p5 = linear_prime(F, 5, 2);
  CHECK(in_ideal(F.element({-2, 1, 0}), p5, F));
  CHECK_FALSE(in_ideal(F.element({2, 1, 0}), p5, F));
  CHECK_FALSE(is_generator(F.element({5, 0, 0}), p5, F));

  const auto inert = primes_above(F, 2).front();
  CHECK(in_ideal(F.element({2, 0, 0}), inert, F));
  CHECK(is_generator(F.element({2, 0, 0}), inert, F));
}

TEST_CASE("normalization") {
  const FieldSpec F = field("cubic23");
  const UnitGroup U = UnitGroup::build(F);
  const AlgElem a = F.element({-2, 1, 0});
  // sign step alone: θ - 2 is negative at the real place
  CHECK(sign_mask(a, F) == 1);
  CHECK(mul(a, U.sign_fixers[sign_mask(a, F)], F) == F.element({2, -1, 0}));
  // then the unit-log coefficient of 2 - θ is about -3.3, so θ^4 is applied:
  // (2 - θ)(θ² + θ) = θ² + θ - 1
  const AlgElem n = normalize_element(a, F, U);
  CHECK(n == F.element({-1, 1, 1}));
  CHECK(normalize_element(F.element({2, -1, 0}), F, U) == n);
  CHECK(normalize_element(n, F, U) == n);
  for (const auto& u : {F.theta(), F.unit_inverses()[0], mul(F.theta(), F.theta(), F)}) {
    CHECK(normalize_element(mul(u, a, F), F, U) == n);
    CHECK(normalize_element(neg(mul(u, a, F)), F, U) == n);
  }
}

TEST_CASE("canonical form on random generators") {
  const FieldSpec F = field("cubic23");
  const UnitGroup U = UnitGroup::build(F);
  const auto ideals = enumerate_prime_ideals(F, 20000);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::size_t> pick(0, ideals.size() - 1);
  std::uniform_int_distribution<int> ex(-2, 2);
  for (int t = 0; t < 100; ++t) {
    const GeneratorRec g = find_generator(ideals[pick(rng)], F);
    const AlgElem n = normalize_element(g.alpha, F, U);
    const int k = ex(rng);
    AlgElem v = pow(k >= 0 ? F.theta() : F.unit_inverses()[0], static_cast<unsigned>(std::abs(k)), F);
    v = mul(v, g.alpha, F);
    if (t % 2) v = neg(v);
    CHECK(normalize_element(v, F, U) == n);
    CHECK(is_generator(n, g.ideal, F));
  }
}

TEST_CASE("normalization in the other fields") {
  const FieldSpec G = field("gaussian");
  const UnitGroup UG = UnitGroup::build(G);
  const AlgElem a = G.element({1, 2});
  const AlgElem n = normalize_element(a, G, UG);
  AlgElem v = a;
  for (int k = 0; k < 4; ++k) {
    CHECK(normalize_element(v, G, UG) == n);
    v = mul(v, G.theta(), G);
  }

  const FieldSpec Q = field("sqrt2");
  const UnitGroup UQ = UnitGroup::build(Q);
  const AlgElem b = Q.element({3, 1});
  const AlgElem m = normalize_element(b, Q, UQ);
  CHECK(sign_mask(m, Q) == 0);
  CHECK(normalize_element(mul(b, Q.element({1, 1}), Q), Q, UQ) == m);
  CHECK(normalize_element(neg(b), Q, UQ) == m);
}

TEST_CASE("every prime up to 1e4 has a generator") {
  for (const char* name : {"cubic23", "gaussian", "sqrt2"}) {
    const FieldSpec F = field(name);
    const UnitGroup U = UnitGroup::build(F);
    const auto ideals = enumerate_prime_ideals(F, 10000);
    const auto gens = find_generators(ideals, F, U, 2);
    REQUIRE(gens.size() == ideals.size());
    for (const auto& g : gens) {
      CHECK(is_generator(g.alpha, g.ideal, F));
      CHECK(g.normalized);
    }
  }
}

TEST_CASE("a field with class number two is caught") {
  FieldConfig cfg;
  cfg.name = "sqrt-5";
  cfg.poly = {5, 0, 1};
  cfg.roots_of_unity = 2;
  const FieldSpec F = FieldSpec::create(cfg);
  const auto p2 = primes_above(F, 2).front();  // (2, 1 + √-5) is not principal
  CHECK_THROWS_AS(find_generator(p2, F), GeneratorNotFound);
}
