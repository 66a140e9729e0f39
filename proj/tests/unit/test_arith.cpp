#include <doctest.h>

#include "angles/error.hpp"
#include "angles/hnf.hpp"
#include "angles/modarith.hpp"
#include "angles/poly_fp.hpp"
#include "angles/rational.hpp"

using namespace angles;

TEST_CASE("miller-rabin agrees with the sieve") {
  const auto ps = primes_up_to(20000);
  std::size_t j = 0;
  for (u64 n = 0; n <= 20000; ++n) {
    const bool sieve = j < ps.size() && ps[j] == n;
    if (sieve) ++j;
    CHECK(is_prime(n) == sieve);
  }
  CHECK(is_prime(18446744073709551557ULL));
  CHECK_FALSE(is_prime(3215031751ULL));  // strong pseudoprime to 2, 3, 5, 7
}

TEST_CASE("segmented sieve over an offset range") {
  const auto ps = primes_in_range(1000000, 1000100);
  CHECK(ps.front() == 1000003);
  CHECK(ps.size() == 6);
}

TEST_CASE("modular helpers") {
  CHECK(powmod(3, 200, 1000003) == powmod(9, 100, 1000003));
  CHECK(mulmod(invmod(12345, 1000003), 12345, 1000003) == 1);
  CHECK(reduce_signed(-7, 5) == 3);
  CHECK(mobius(1) == 1);
  CHECK(mobius(6) == 1);
  CHECK(mobius(12) == 0);
  CHECK(mobius(30) == -1);
  CHECK(integer_root(1000000, 3) == 100);
  CHECK(integer_root(999999, 3) == 99);
  CHECK_THROWS_AS(ipow(10, 19), ArithmeticOverflow);
}

TEST_CASE("polynomials mod p") {
  const u64 p = 7;
  const PolyFp a{1, 2, 3}, b{6, 1};
  PolyFp q, r;
  fp::divmod(a, b, p, q, r);
  CHECK(fp::add(fp::mul(q, b, p), r, p) == a);
  CHECK(fp::degree(r) < fp::degree(b));
  CHECK(fp::gcd(fp::mul(a, b, p), fp::mul(b, b, p), p) == fp::monic(b, p));
  CHECK(fp::degree(PolyFp{}) == -1);
}

TEST_CASE("factorization mod p multiplies back") {
  const std::vector<i64> f{-1, -1, 0, 1};
  for (u64 p : primes_up_to(400)) {
    PolyFp prod{1};
    int deg = 0;
    for (const auto& fac : factor_poly_mod_p(f, p)) {
      for (int i = 0; i < fac.multiplicity; ++i) prod = fp::mul(prod, fac.factor, p);
      deg += fp::degree(fac.factor) * fac.multiplicity;
    }
    CHECK(deg == 3);
    CHECK(prod == fp::from_integers(f, p));
  }
}

TEST_CASE("hermite normal form") {
  const IntMatrix H = hermite_normal_form({{2, 4}, {3, 5}, {0, 6}});
  CHECK(H == IntMatrix{{1, 1}, {0, 2}});
  const IntMatrix I = hermite_normal_form({{0, 0}, {4, 0}, {0, 3}});
  CHECK(I == IntMatrix{{4, 0}, {0, 3}});
}

TEST_CASE("rational parsing") {
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK(parse_rational("-1.5e3") == Rational(-1500));
  CHECK(parse_rational("3/4") == Rational(3, 4));
  CHECK(parse_rational("1e-2") == Rational(1, 100));
  CHECK(to_string(Rational(6, 4)) == "3/2");
  CHECK(to_double(Rational(1, 3)) == doctest::Approx(1.0 / 3));
  CHECK_THROWS_AS(parse_rational("abc"), InputError);
  CHECK_THROWS_AS(parse_rational("1/0"), InputError);
  CHECK_THROWS_AS(parse_rational(""), InputError);
}
