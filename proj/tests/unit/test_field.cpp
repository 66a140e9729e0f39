#include <doctest.h>

#include <cmath>

#include "angles/error.hpp"
#include "common.hpp"

using namespace angles;

TEST_CASE("cubic field arithmetic") {
  const FieldSpec F = field("cubic23");
  CHECK(F.degree() == 3);
  CHECK(F.r1() == 1);
  CHECK(F.r2() == 1);
  CHECK(to_string(F.discriminant()) == "-23");

  CHECK(mul(F.element({0, 1, 0}), F.element({0, 0, 1}), F) == F.element({1, 1, 0}));
  const AlgElem a = F.element({4, -3, 7});
  CHECK(mul(a, F.one(), F) == a);

  const AlgElem b = F.element({-2, 1, 0}), c = F.element({3, 2, 1});
  CHECK(norm(mul(b, c, F), F) == norm(b, F) * norm(c, F));
  CHECK(norm(b, F) == -5);
  CHECK(norm(F.one(), F) == 1);
  CHECK(norm(F.element({-2, 0, 1}), F) == -1);
  CHECK(norm(F.element({0, 0, 0}), F) == 0);
}

TEST_CASE("norm is multiplicative on a sample") {
  const FieldSpec F = field("cubic23");
  for (i64 i = -4; i <= 4; ++i)
    for (i64 j = -3; j <= 3; ++j) {
      const AlgElem a = F.element({i, j, 1}), b = F.element({j, 2, -i});
      CHECK(norm(mul(a, b, F), F) == norm(a, F) * norm(b, F));
    }
}

TEST_CASE("embeddings") {
  const FieldSpec F = field("cubic23");
  const Embedding e = embed(F.theta(), F);
  REQUIRE(e.real_places.size() == 1);
  REQUIRE(e.complex_places.size() == 1);
  CHECK(static_cast<double>(e.real_places[0]) == doctest::Approx(ref::theta).epsilon(1e-15));
  CHECK(static_cast<double>(e.complex_places[0].real()) == doctest::Approx(-0.6623589786).epsilon(1e-9));
  CHECK(static_cast<double>(e.complex_places[0].imag()) == doctest::Approx(0.5622795121).epsilon(1e-9));
  CHECK(static_cast<double>(std::abs(e.complex_places[0])) == doctest::Approx(ref::abs_cp).epsilon(1e-15));
  CHECK(static_cast<double>(std::abs(e.complex_places[0])) == doctest::Approx(1 / std::sqrt(ref::theta)));

  const Embedding one = embed(F.one(), F);
  CHECK(one.real_places[0] == 1);
  CHECK(one.complex_places[0] == complex(1, 0));
}

TEST_CASE("gaussian and sqrt2 configs") {
  const FieldSpec G = field("gaussian");
  CHECK(G.r1() == 0);
  CHECK(G.r2() == 1);
  CHECK(G.roots_of_unity() == 4);
  CHECK(norm(G.element({2, 1}), G) == 5);
  CHECK(mul(G.theta(), G.theta(), G) == G.from_integer(-1));

  const FieldSpec Q = field("sqrt2");
  CHECK(Q.r1() == 2);
  CHECK(norm(Q.element({1, 1}), Q) == -1);
  CHECK(to_string(Q.discriminant()) == "8");
}

TEST_CASE("config validation") {
  FieldConfig cfg;
  cfg.name = "bad";
  cfg.poly = {-1, -1, 0, 1};
  cfg.units = {{2, 1, 0}};  // norm 7, not a unit
  CHECK_THROWS_AS(FieldSpec::create(cfg), FieldConfigError);

  cfg.units = {{0, 1, 0}};
  cfg.poly = {-1, -1, 0, 2};  // not monic
  CHECK_THROWS_AS(FieldSpec::create(cfg), FieldConfigError);

  cfg.poly = {-2, 1, 0, 1};
  cfg.poly = {0, -1, 0, 1};  // X(X-1)(X+1)
  CHECK_THROWS_AS(FieldSpec::create(cfg), FieldConfigError);

  CHECK_THROWS_AS(parse_field_config("{not json"), FieldConfigError);
  CHECK_THROWS_AS(parse_field_config(R"({"name":"x"})"), FieldConfigError);
}

TEST_CASE("exact determinant") {
  CHECK(bareiss_determinant({{2, 0, 1}, {1, 3, 2}, {1, 1, 1}}) == 0);
  CHECK(bareiss_determinant({{4, 7}, {2, 6}}) == 10);
  CHECK(poly_discriminant({1, 0, 1}) == -4);
  CHECK(poly_discriminant({-1, -1, 0, 1}) == -23);
}
