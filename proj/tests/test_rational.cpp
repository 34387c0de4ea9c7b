// Copyright 2026 privclust developers
// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"
#include "privclust/rational.hpp"

#include "fixtures.hpp"

using privclust::Rational;

TEST_CASE("rational normalization and arithmetic") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(-2, -4) == Rational(1, 2));
  CHECK(Rational(2, -4) == Rational(-1, 2));
  CHECK((Rational(1, 3) + Rational(1, 6)) == Rational(1, 2));
  CHECK((Rational(1, 2) * Rational(2, 3)) == Rational(1, 3));
  CHECK((Rational(7) - Rational(15, 2)) == Rational(-1, 2));
  CHECK(Rational(5, 10).str() == "1/2");
  CHECK(Rational(-3).str() == "-3");
  CHECK(Rational(0, 7).str() == "0");
}

TEST_CASE("rational ordering is exact") {
  CHECK(Rational(1, 3) < Rational(34, 100));
  CHECK(Rational(2, 3) > Rational(66, 100));
  CHECK(Rational(1000000000000LL, 3) < Rational(1000000000001LL, 3));
}

TEST_CASE("rational parse round-trips canonical text") {
  for (const char* s : {"0", "-3", "7/2", "-7/2", "123456789/1000000"}) {
    Rational r = Rational::parse(s);
    CHECK(r.str() == s);
  }
  CHECK_THROWS_AS(Rational::parse("2/4"), privclust::ParseError);
  CHECK_THROWS_AS(Rational::parse("1/0"), privclust::ParseError);
  CHECK_THROWS_AS(Rational::parse("1.5"), privclust::ParseError);
  CHECK_THROWS_AS(Rational::parse(""), privclust::ParseError);
  CHECK_THROWS_AS(Rational::parse("1/-2"), privclust::ParseError);
}

TEST_CASE("rational arithmetic matches a double shadow on random inputs") {
  fixtures::Rng rng(7);
  for (int i = 0; i < 500; ++i) {
    Rational a(rng.range(-50, 50), rng.range(1, 20));
    Rational b(rng.range(-50, 50), rng.range(1, 20));
    double da = static_cast<double>(a.num()) / a.den();
    double db = static_cast<double>(b.num()) / b.den();
    Rational sum = a + b;
    CHECK(static_cast<double>(sum.num()) / sum.den() == doctest::Approx(da + db));
    Rational prod = a * b;
    CHECK(static_cast<double>(prod.num()) / prod.den() == doctest::Approx(da * db));
    CHECK((a < b) == (da < db - 1e-12 ? true : (da < db)));
  }
}

TEST_CASE("rational overflow is an error, not silent wrap") {
  Rational big(INT64_MAX / 2, 1);
  CHECK_THROWS_AS(big * Rational(4), privclust::OverflowError);
}
