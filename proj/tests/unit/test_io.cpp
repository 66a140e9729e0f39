#include <doctest.h>

#include <sstream>

#include "angles/error.hpp"
#include "angles/io.hpp"
#include "common.hpp"

using namespace angles;

TEST_CASE("formatting helpers") {
  CHECK(fixed(0.5) == "0.500000000");
  CHECK(fixed(-1e-12) == "0.000000000");
  CHECK(join({"a", "b"}, ';') == "a;b");
  CHECK(split("a,,b", ',') == std::vector<std::string>{"a", "", "b"});
  CHECK(parse_count("1e6") == 1000000);
  CHECK_THROWS_AS(parse_count("1.5"), InputError);
  CHECK_THROWS_AS(parse_count("-3"), InputError);
}

TEST_CASE("csv round trips") {
  const AngleMap map(field("cubic23"));
  const FieldSpec& F = map.field();
  const auto primes = enumerate_prime_ideals(F, 3000);
  std::stringstream ps;
  write_primes_csv(ps, primes);
  CHECK(read_primes_csv(ps, F) == primes);

  const auto gens = find_generators(primes, F, map.units());
  std::stringstream gs;
  write_generators_csv(gs, gens);
  const auto back = read_generators_csv(gs, F);
  REQUIRE(back.size() == gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i) CHECK(back[i].alpha == gens[i].alpha);

  const auto angles = compute_angles(map, gens);
  std::stringstream as;
  write_angles_csv(as, angles, 2);
  const std::string text = as.str();
  const auto read = read_angles_csv(as, F);
  REQUIRE(read.size() == angles.size());
  for (std::size_t i = 0; i < read.size(); ++i) CHECK(torus_distance(read[i].rho, angles[i].rho) < 1e-9);
  std::stringstream again;
  write_angles_csv(again, read, 2);
  CHECK(again.str() == text);
}

TEST_CASE("bad csv rows") {
  const FieldSpec F = field("cubic23");
  std::stringstream a("norm,p,root,deg,ramified\n5,5,3,1,0\n");
  CHECK_THROWS_AS(read_primes_csv(a, F), InputError);
  std::stringstream b("norm,p,root,alpha_coords\n5,5,2,2;1;0\n");
  CHECK_THROWS_AS(read_generators_csv(b, F), InputError);
  std::stringstream c("norm,p,root,t1,t2\n5,5,2,0.5,1.2\n");
  CHECK_THROWS_AS(read_angles_csv(c, F), InputError);
  std::stringstream d("something else\n");
  CHECK_THROWS_AS(read_angles_csv(d, F), InputError);
  std::stringstream e("norm,p,root,deg,ramified\n4,4,0,1,0\n");
  CHECK_THROWS_AS(read_primes_csv(e, F), InputError);
}
