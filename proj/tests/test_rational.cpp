#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "rational.hpp"

using namespace ntu;

TEST_CASE("rational canonical form") {
  Rational a(2, 4);
  CHECK(a.numerator() == 1);
  CHECK(a.denominator() == 2);
  Rational b(-3, -6);
  CHECK(b.numerator() == 1);
  CHECK(b.denominator() == 2);
  Rational c(3, -6);
  CHECK(c.numerator() == -1);
  CHECK(c.denominator() == 2);
  CHECK_THROWS(Rational(1, 0));
}

TEST_CASE("rational arithmetic is exact") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long long> num(-50, 50), den(1, 30);
  for (int it = 0; it < 500; ++it) {
    long long a = num(rng), b = den(rng), c = num(rng), d = den(rng);
    Rational x(a, b), y(c, d);
    Rational s = x + y;
    // a/b + c/d == (ad + cb) / bd
    CHECK(s == Rational(a * d + c * b, b * d));
    CHECK(x * y == Rational(a * c, b * d));
    if (c != 0) CHECK(x / y == Rational(a * d, b * c));
    CHECK(x - y + y == x);
  }
}

TEST_CASE("floor ceil") {
  CHECK(Rational(7, 2).floor() == Rational(3));
  CHECK(Rational(7, 2).ceil() == Rational(4));
  CHECK(Rational(-7, 2).floor() == Rational(-4));
  CHECK(Rational(-7, 2).ceil() == Rational(-3));
  CHECK(Rational(5).floor() == Rational(5));
  CHECK(Rational(5).ceil() == Rational(5));
}

TEST_CASE("string round trip") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long long> num(-1000, 1000), den(1, 999);
  for (int it = 0; it < 200; ++it) {
    Rational x(num(rng), den(rng));
    CHECK(Rational::fromString(x.str()) == x);
  }
  CHECK(Rational::fromString("-3/9") == Rational(-1, 3));
  CHECK(Rational::fromString("42") == Rational(42));
  CHECK_THROWS_AS(Rational::fromString("x"), ValidationError);
}

TEST_CASE("extended bounds order totally") {
  auto ninf = ExtendedBound::minusInf();
  auto pinf = ExtendedBound::plusInf();
  auto two = ExtendedBound::of(2);
  CHECK(ninf < two);
  CHECK(two < pinf);
  CHECK(ninf < pinf);
  CHECK(!(pinf < pinf));
  CHECK(two.lessEq(Rational(2)));
  CHECK(two.greaterEq(Rational(2)));
  CHECK(ninf.lessEq(Rational(-1000)));
  CHECK(pinf.greaterEq(Rational(1000)));
  CHECK_THROWS_AS(pinf.value(), InvariantViolation);
}
