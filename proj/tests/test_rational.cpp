#include <random>
#include <sstream>

#include "doctest.h"
#include "hspace33/rational.hpp"
#include "support.hpp"

using h33::DivisionByZeroError;
using h33::Rational;

TEST_CASE("rational values are kept in lowest terms") {
  const Rational r(6, -8);
  CHECK(r.numerator() == -3);
  CHECK(r.denominator() == 4);
  CHECK(r.to_string() == "-3/4");
  CHECK(Rational(10, 5).is_integer());
  CHECK(Rational(0, 7).to_string() == "0");
  CHECK(Rational(0, 7).denominator() == 1);
}

TEST_CASE("zero denominators and divisors are rejected") {
  CHECK_THROWS_AS(Rational(1, 0), DivisionByZeroError);
  CHECK_THROWS_AS(Rational(3) / Rational(0), DivisionByZeroError);
  CHECK_THROWS_AS(Rational(0).pow(-2), DivisionByZeroError);
  CHECK_THROWS_AS(Rational::parse("5/0"), DivisionByZeroError);
}

TEST_CASE("parse") {
  CHECK(Rational::parse("7") == Rational(7));
  CHECK(Rational::parse("-12/18") == Rational(-2, 3));
  CHECK(Rational::parse("+3/9") == Rational(1, 3));
  CHECK_THROWS_AS(Rational::parse("1.5"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1/"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("x"), std::invalid_argument);
}

TEST_CASE("arithmetic examples") {
  CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  CHECK(Rational(1, 2) - Rational(2, 3) == Rational(-1, 6));
  CHECK(Rational(3, 4) * Rational(8, 9) == Rational(2, 3));
  CHECK(Rational(3, 4) / Rational(-9, 8) == Rational(-2, 3));
  CHECK(Rational(2, 3).pow(3) == Rational(8, 27));
  CHECK(Rational(2, 3).pow(-2) == Rational(9, 4));
  CHECK(Rational(-5).pow(0) == Rational(1));
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2).sign() == -1);
  CHECK(Rational(3, 8).to_double() == doctest::Approx(0.375));
}

TEST_CASE("no rounding on large values") {
  Rational x(1, 3);
  Rational sum(0);
  for (int i = 0; i < 300; ++i) sum += x;
  CHECK(sum == Rational(100));
  const Rational big = Rational(10).pow(40) + Rational(1);
  CHECK(big - Rational(10).pow(40) == Rational(1));
}

TEST_CASE("field axioms hold on random triples") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    const Rational a = h33::testing::random_rational(rng, 1000);
    const Rational b = h33::testing::random_rational(rng, 1000);
    const Rational c = h33::testing::random_rational(rng, 1000);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a - a == Rational(0));
    if (!b.is_zero()) CHECK((a / b) * b == a);
    CHECK(a.denominator() > 0);
  }
}

TEST_CASE("equal values hash equally") {
  CHECK(Rational(2, 4).hash() == Rational(1, 2).hash());
  std::ostringstream os;
  os << Rational(-7, 21);
  CHECK(os.str() == "-1/3");
}
