#include <doctest.h>

#include "plectic/scalar.hpp"

using namespace plectic;

TEST_CASE("gaussian rational field ops") {
  GaussRat a(Rational(1), Rational(2));
  GaussRat b(Rational(3), Rational(-1));
  CHECK(a * b == GaussRat(Rational(5), Rational(5)));
  CHECK((a / b) * b == a);
  CHECK(a * a.conj() == GaussRat(a.norm()));
  CHECK_THROWS_AS(a / GaussRat(), Error);
}

TEST_CASE("scalar ring arithmetic") {
  Scalar t = Scalar::tau();
  Scalar one(1);
  CHECK((one + t) * (one + t) == one + Scalar(2) * t + t * t);
  CHECK(t * Scalar::tau(-1) == one);
  CHECK(Scalar::i() * Scalar::i() == Scalar(-1));
  CHECK((t - t).is_zero());
  CHECK(Scalar(Rational(1, 2)) + Scalar(Rational(1, 2)) == one);
}

TEST_CASE("scalar units and powers") {
  Scalar m = Scalar(Rational(2, 3)) * Scalar::tau(5);
  REQUIRE(m.inverse().has_value());
  CHECK(*m.inverse() * m == Scalar(1));
  CHECK(!(Scalar(1) + Scalar::tau()).inverse().has_value());
  CHECK(m.pow(0) == Scalar(1));
  CHECK(m.pow(2) == m * m);
  CHECK(m.pow(-2) * m.pow(2) == Scalar(1));
  CHECK(Scalar::i().pow(-1) == -Scalar::i());
}

TEST_CASE("exact laurent division") {
  Scalar t = Scalar::tau();
  Scalar num = t * t - Scalar(1);
  Scalar den = t - Scalar(1);
  auto q = num.div_exact(den);
  REQUIRE(q.has_value());
  CHECK(*q == t + Scalar(1));
  CHECK(*q * den == num);

  CHECK(!(t * t + Scalar(1)).div_exact(t + Scalar(2)).has_value());
  CHECK(!Scalar(1).div_exact(Scalar()).has_value());

  Scalar lnum = Scalar::tau(-2) + Scalar::tau(1);
  Scalar lden = Scalar::tau(-2);
  auto lq = lnum.div_exact(lden);
  REQUIRE(lq.has_value());
  CHECK(*lq * lden == lnum);

  // randomized closure: (a*b)/b == a
  Scalar a = Scalar(Rational(3, 7)) + Scalar::i() * Scalar::tau(2) - Scalar::tau(-1);
  Scalar b = Scalar(2) - Scalar::tau(3) + Scalar::i();
  auto r = (a * b).div_exact(b);
  REQUIRE(r.has_value());
  CHECK(*r == a);
}

TEST_CASE("scalar rational queries") {
  CHECK(Scalar(Rational(4, 2)).is_integer());
  CHECK(!Scalar(Rational(1, 2)).is_integer());
  CHECK(!Scalar::tau().is_rational());
  CHECK(!Scalar::i().is_rational());
  CHECK(Scalar().is_integer());
  CHECK(Scalar(Rational(5, 3)).as_rational() == Rational(5, 3));
  CHECK_THROWS_AS(Scalar::tau().as_rational(), Error);
}

TEST_CASE("scalar canonical rendering") {
  CHECK(Scalar().str() == "0");
  CHECK(Scalar(Rational(1, 2)).str() == "1/2");
  CHECK((Scalar(Rational(1, 2)) * Scalar::tau()).str() == "1/2*tau^1");
  CHECK(Scalar::i().str() == "i");
  CHECK((-Scalar::i()).str() == "-i");
  CHECK((Scalar(Rational(1, 2)) + Scalar::i()).str() == "(1/2+i)");
  CHECK((Scalar(1) - Scalar::tau(2)).str() == "1 - tau^2");
  CHECK(Scalar::tau(-1).str() == "tau^-1");
  CHECK((-Scalar::tau()).str() == "-tau^1");
  CHECK((Scalar(Rational(3, 4)) * Scalar::i() * Scalar::tau(2)).str() == "3/4*i*tau^2");
}

TEST_CASE("scalar numeric evaluation") {
  double pi = Scalar(Rational(1, 2)).numeric().real() * Scalar::tau().numeric().real();
  CHECK(pi == doctest::Approx(3.14159265358979));
  CHECK(Scalar::i().numeric().imag() == doctest::Approx(1.0));
}
