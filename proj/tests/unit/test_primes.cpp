#include <doctest.h>

#include <algorithm>
#include <map>

#include "angles/primes.hpp"
#include "common.hpp"

using namespace angles;

TEST_CASE("splitting in the cubic field") {
  const FieldSpec F = field("cubic23");

  const auto p2 = primes_above(F, 2);
  REQUIRE(p2.size() == 1);
  CHECK(p2[0].norm == 8);
  CHECK(p2[0].res_degree == 3);
  CHECK_FALSE(p2[0].ramified);

  const auto p5 = primes_above(F, 5);
  REQUIRE(p5.size() == 2);
  CHECK(p5[0].norm == 5);
  CHECK(p5[0].root() == 2);
  CHECK(p5[1].norm == 25);
  CHECK(p5[1].factor == PolyFp{3, 2, 1});
  CHECK(p5[1].root_label() == "3;2;1");

  const auto p23 = primes_above(F, 23);
  REQUIRE(p23.size() == 2);
  CHECK(p23[0].root() == 3);
  CHECK(p23[0].multiplicity == 1);
  CHECK(p23[1].root() == 10);
  CHECK(p23[1].multiplicity == 2);
  CHECK(p23[0].ramified);
  CHECK(p23[1].ramified);
}

TEST_CASE("prime ideals up to 30") {
  const auto v = enumerate_prime_ideals(field("cubic23"), 30);
  std::vector<u64> norms;
  for (const auto& r : v) norms.push_back(r.norm);
  CHECK(norms == std::vector<u64>{5, 7, 8, 11, 17, 19, 23, 23, 25, 27});
}

TEST_CASE("gaussian primes up to 2") {
  const auto v = enumerate_prime_ideals(field("gaussian"), 2);
  REQUIRE(v.size() == 1);
  CHECK(v[0].p == 2);
  CHECK(v[0].root() == 1);
  CHECK(v[0].ramified);
  CHECK(v[0].norm == 2);
}

TEST_CASE("local degree identity and ordering") {
  for (const char* name : {"cubic23", "gaussian", "sqrt2"}) {
    const FieldSpec F = field(name);
    const auto v = enumerate_prime_ideals(F, 20000);
    std::map<u64, int> deg;
    for (const auto& r : v) {
      deg[r.p] += r.res_degree * r.multiplicity;
      CHECK(r.ramified == (F.discriminant() % static_cast<i128>(r.p) == 0));
    }
    CHECK(std::is_sorted(v.begin(), v.end(), prime_less));
    for (u64 p : primes_up_to(20000)) {
      // every factor of p of small enough norm is present
      int expect = 0;
      for (const auto& r : primes_above(F, p))
        if (r.norm <= 20000) expect += r.res_degree * r.multiplicity;
      CHECK(deg[p] == expect);
    }
    for (u64 p : primes_up_to(150)) {
      int total = 0;
      for (const auto& r : primes_above(F, p)) total += r.res_degree * r.multiplicity;
      CHECK(total == F.degree());
    }
  }
}

TEST_CASE("enumeration independent of workers") {
  const FieldSpec F = field("cubic23");
  const auto a = enumerate_prime_ideals(F, 300000, 1);
  const auto b = enumerate_prime_ideals(F, 300000, 3);
  CHECK(a == b);
}

TEST_CASE("cubic counts match the oracle") {
  const FieldSpec F = field("cubic23");
  CHECK(enumerate_prime_ideals(F, 10000).size() == 1225);
  CHECK(enumerate_prime_ideals(F, 100000).size() == 9565);
}
