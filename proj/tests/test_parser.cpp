#include <doctest.h>

#include "plectic/exterior.hpp"
#include "plectic/parser.hpp"
#include "test_support.hpp"

using namespace plectic;
using plectic::testing::Rng;

TEST_CASE("scalar expressions") {
  CHECK(parse_scalar("0") == Scalar());
  CHECK(parse_scalar("1/2") == Scalar(Rational(1, 2)));
  CHECK(parse_scalar("1/2*tau^1") == Scalar(Rational(1, 2)) * Scalar::tau());
  CHECK(parse_scalar("tau^-1") == Scalar::tau(-1));
  CHECK(parse_scalar("i^2") == Scalar(-1));
  CHECK(parse_scalar("(1/2+i)") == Scalar(Rational(1, 2)) + Scalar::i());
  CHECK(parse_scalar("1 - tau^2") == Scalar(1) - Scalar::tau(2));
  CHECK(parse_scalar("-3/4") == Scalar(Rational(-3, 4)));
  CHECK(parse_scalar("2^3") == Scalar(8));
  CHECK_THROWS_AS(parse_scalar("x0"), Error);
  CHECK_THROWS_AS(parse_scalar("1 +"), Error);
  CHECK_THROWS_AS(parse_scalar("(1"), Error);
  CHECK_THROWS_AS(parse_scalar("1/(1+tau)"), Error);
}

TEST_CASE("scalar rendering round trips") {
  Rng rng(5150);
  for (int it = 0; it < 200; ++it) {
    Scalar s;
    int nterms = 1 + static_cast<int>(rng.below(3));
    for (int t = 0; t < nterms; ++t) {
      GaussRat c(plectic::testing::rand_rational(rng), plectic::testing::rand_rational(rng));
      s += Scalar::term(c, static_cast<int>(rng.range(-3, 3)));
    }
    CHECK(parse_scalar(s.str()) == s);
  }
}

TEST_CASE("function expressions") {
  auto r2 = affine_chart(2);
  CoefFn x = CoefFn::coordinate(r2, 0);
  CoefFn y = CoefFn::coordinate(r2, 1);
  CHECK(parse_function("x0^2*x1 - 3", r2) == x * x * y - CoefFn::constant(r2, Scalar(3)));
  CHECK(parse_function("(x0+x1)^2", r2) == (x + y) * (x + y));

  auto t2 = torus_chart(2);
  CHECK(parse_function("E[1,0]*E[0,2]", t2) == CoefFn::fourier(t2, {1, 2}));
  CHECK(parse_function("E[1,0]^-1", t2) == CoefFn::fourier(t2, {-1, 0}));
  CHECK_THROWS_AS(parse_function("x0", t2), Error);
  CHECK_THROWS_AS(parse_function("E[1]", t2), Error);
  CHECK_THROWS_AS(parse_function("E[1,0]", r2), Error);
  CHECK_THROWS_AS(parse_function("(1+x0)^-1", r2), Error);
}

TEST_CASE("form and field expressions") {
  auto r3 = affine_chart(3);
  Form w = parse_form("x0*dx1^dx2 + dx0^dx1", r3);
  Form expect(r3, 2);
  expect.add_component({1, 2}, CoefFn::coordinate(r3, 0));
  expect.add_component({0, 1}, CoefFn::constant(r3, Scalar(1)));
  CHECK(w == expect);

  CHECK(parse_form("dx1^dx0", r3) == -parse_form("dx0^dx1", r3));
  CHECK(parse_form("dx0^dx0", r3).is_zero());
  CHECK(parse_form("dx0*dx1", r3) == parse_form("dx0^dx1", r3));

  MultiVector v = parse_field("e0 - x2*e1", r3);
  MultiVector ve(r3, 1);
  ve.add_component({0}, CoefFn::constant(r3, Scalar(1)));
  ve.add_component({1}, -CoefFn::coordinate(r3, 2));
  CHECK(v == ve);

  CHECK_THROWS_AS(parse_field("e0^e1", r3), Error);   // degree 2
  CHECK_THROWS_AS(parse_form("e0", r3), Error);
  CHECK_THROWS_AS(parse_field("dx0", r3), Error);
  CHECK_THROWS_AS(parse_form("dx0^e1", r3), Error);
  CHECK_THROWS_AS(parse_form("dx5", r3), Error);

  // spec-style contraction sanity through parsed inputs
  auto r2 = affine_chart(2);
  Form got = contract(parse_field("e1", r2), parse_form("dx0^dx1", r2));
  CHECK(got == parse_form("-dx0", r2));
}

TEST_CASE("numbers too large for machine ints still parse") {
  CHECK(parse_scalar("123456789012345678901234567890/3") ==
        Scalar(Rational(Integer("123456789012345678901234567890"), Integer(3))));
}
