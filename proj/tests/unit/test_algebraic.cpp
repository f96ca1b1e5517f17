#include "doctest.h"

#include "rankin/algebraic.hpp"

using namespace rankin;

TEST_CASE("quadratic roots satisfy their polynomial") {
  const CycloNumber s(-1), t(3);
  const auto a = AlgNumber::quadratic_root(s, t, true);
  const auto b = AlgNumber::quadratic_root(s, t, false);
  CHECK(a * a - AlgNumber(s) * a + AlgNumber(t) == AlgNumber());
  CHECK(a + b == AlgNumber(s));
  CHECK(a * b == AlgNumber(t));
  CHECK_FALSE(a.is_cyclotomic());
  CHECK(a * a.inv() == AlgNumber(1));
  CHECK(AlgNumber::quadratic_root(s, t, true) == a);
}

TEST_CASE("rational discriminant gives exact roots") {
  const auto a = AlgNumber::quadratic_root(CycloNumber(5), CycloNumber(6), true);
  const auto b = AlgNumber::quadratic_root(CycloNumber(5), CycloNumber(6), false);
  CHECK(a == AlgNumber(3));
  CHECK(b == AlgNumber(2));
  CHECK(AlgNumber::quadratic_root(CycloNumber(7), CycloNumber(0), true) == AlgNumber(7));
  CHECK(AlgNumber::quadratic_root(CycloNumber(7), CycloNumber(0), false) == AlgNumber());
}

TEST_CASE("two adjoined roots") {
  const auto a = AlgNumber::quadratic_root(CycloNumber(-1), CycloNumber(3));
  const auto d = AlgNumber::quadratic_root(CycloNumber(-24), CycloNumber(5L * 5 * 5 * 5 * 5 * 5 * 5 * 5 * 5 * 5 * 5));
  const auto x = a * d + AlgNumber(CycloNumber::zeta(3));
  CHECK(x * x.inv() == AlgNumber(1));
  CHECK(x.roots().size() == 2);
  const auto num = x.embed(40);
  const auto expect = a.embed(40) * d.embed(40) + CycloNumber::zeta(3).embed(40);
  CHECK(distance(num, expect) < ten_to_minus(30, 40));
  CHECK(distance(x.inv().embed(40) * num, ComplexAP::from_rational(1, 40)) < ten_to_minus(30, 40));
}

TEST_CASE("numeric value of the plus branch") {
  const auto a = AlgNumber::quadratic_root(CycloNumber(-1), CycloNumber(3));
  BigFloat::default_precision(60);
  const auto v = a.embed(40);
  // (-1 + sqrt(-11))/2
  CHECK(abs(v.real() + BigFloat(0.5)) < ten_to_minus(35, 40));
  CHECK(abs(v.imag() - sqrt(BigFloat(11)) / 2) < ten_to_minus(35, 40));
}

TEST_CASE("cyclotomic extraction") {
  CHECK(AlgNumber(CycloNumber::zeta(5)).as_cyclotomic() == CycloNumber::zeta(5));
  const auto a = AlgNumber::quadratic_root(CycloNumber(-1), CycloNumber(3));
  CHECK_THROWS_AS((void)a.as_cyclotomic(), DomainError);
  CHECK((a - a).is_cyclotomic());
}
