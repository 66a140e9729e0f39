#include <doctest.h>

#include <cmath>

#include "angles/error.hpp"
#include "angles/function_field.hpp"

using namespace angles;

TEST_CASE("finite fields") {
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 8u, 9u}) {
    const Fq F(q);
    for (std::uint32_t a = 1; a < q; ++a) {
      CHECK(F.mul(a, F.inv(a)) == 1);
      CHECK(F.add(a, F.neg(a)) == 0);
      for (std::uint32_t b = 0; b < q; ++b)
        for (std::uint32_t c = 0; c < q; ++c) CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
    }
  }
  CHECK_THROWS_AS(Fq(6), InputError);
  CHECK_THROWS_AS(Fq(3).inv(0), DomainError);
}

TEST_CASE("small irreducible lists") {
  const auto q2n3 = irreducibles(2, 3);
  CHECK(q2n3 == std::vector<PolyFq>{{1, 1, 0, 1}, {1, 0, 1, 1}});
  CHECK(irreducibles(2, 4) == std::vector<PolyFq>{{1, 1, 0, 0, 1}, {1, 0, 0, 1, 1}, {1, 1, 1, 1, 1}});
  CHECK(irreducibles(3, 1).size() == 3);
  CHECK(irreducibles(3, 2) == std::vector<PolyFq>{{1, 0, 1}, {2, 1, 1}, {2, 2, 1}});
}

TEST_CASE("sieve agrees with rabin and the necklace count") {
  for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
    const Fq F(q);
    const int nmax = q == 2 ? 12 : (q == 3 ? 8 : 6);
    const IrreducibleTable t(F, nmax, 2);
    for (int n = 1; n <= nmax; ++n) {
      CHECK(t.count(n) == necklace_count(q, n));
      if (std::pow(q, n) > 5000) continue;
      std::size_t j = 0;
      for (std::uint64_t c = 0; c < static_cast<std::uint64_t>(std::pow(q, n)); ++c) {
        const bool irr = is_irreducible(fq::decode_monic(c, n, F), F);
        const bool listed = j < t.count(n) && t.codes(n)[j] == c;
        if (listed) ++j;
        CHECK(irr == listed);
      }
    }
  }
  CHECK(necklace_count(2, 14) == 1161);
  CHECK(necklace_count(3, 14) == 341484);
}

TEST_CASE("residue classes") {
  const auto r = class_counts(3, PolyFq{0, 1}, 2);
  REQUIRE(r.phi == 2);
  CHECK(r.rows[1].counts == std::vector<u64>{1, 2});
  CHECK(r.rows[0].ramified == 1);  // T itself
  CHECK(r.sums_ok());

  const auto one = class_counts(2, PolyFq{1}, 10);
  CHECK(one.phi == 1);
  for (const auto& row : one.rows) CHECK(row.counts[0] == row.total);

  const auto g = class_counts(2, PolyFq{1, 1, 1}, 14);
  CHECK(g.phi == 3);
  CHECK(g.sums_ok());
  CHECK(g.max_normalized() <= 4);

  CHECK_THROWS_AS(class_counts(2, PolyFq{}, 4), InputError);
  CHECK_THROWS_AS(class_counts(2, PolyFq{1, 2}, 4), InputError);
}

TEST_CASE("constant field extension") {
  const IrreducibleTable t(Fq(2), 14);
  const auto r = nongeometric_image(t, 2);
  CHECK(r.outside_gamma() == 0);
  CHECK(r.max_normalized_inside() <= 4);
  const auto d = nongeometric_image(t, 1);
  CHECK(d.outside_gamma() == 0);
  for (const auto& c : d.cells) CHECK(c.in_gamma);
  CHECK_THROWS_AS(nongeometric_image(t, 0), InputError);
}
