#include <doctest.h>

#include <random>

#include "cubicalforms/errors.hpp"
#include "cubicalforms/scalar.hpp"
#include "cubicalforms/textio.hpp"

using namespace cubicalforms;

TEST_SUITE("scalar") {

TEST_CASE("integer arithmetic and kinds") {
  Scalar a(6), b(-4);
  CHECK((a + b) == Scalar(2));
  CHECK((a * b) == Scalar(-24));
  CHECK((a - b) == Scalar(10));
  CHECK((-b) == Scalar(4));
  CHECK(a.kind() == ScalarKind::Integer);
  CHECK((a + b).kind() == ScalarKind::Integer);
  CHECK(a.sign() == 1);
  CHECK(b.sign() == -1);
  CHECK(Scalar(0).is_zero());
  CHECK(Scalar(1).is_one());
}

TEST_CASE("kind promotion is by rank") {
  Scalar i(3), t = Scalar::two_local(1, 3), r = Scalar::rational(1, 2), e = Scalar::zeta();
  CHECK((i + t).kind() == ScalarKind::TwoLocal);
  CHECK((t + r).kind() == ScalarKind::Rational);
  CHECK((r * e).kind() == ScalarKind::Eisenstein);
  CHECK((i * e).kind() == ScalarKind::Eisenstein);
}

TEST_CASE("two-local inverses require odd numerators") {
  Scalar t = Scalar::two_local(1, 3);
  CHECK(t.inverse() == Scalar(3));
  Scalar even = Scalar::two_local(2, 3);
  CHECK_THROWS_AS(even.inverse(), NotTwoLocallyInvertible);
  CHECK_THROWS_AS(Scalar(0).inverse(), DivisionByZero);
  CHECK_THROWS_AS(Scalar::two_local(1, 2), MathError);  // denominator must be odd
}

TEST_CASE("rational arithmetic") {
  Scalar h = Scalar::rational(1, 2), th = Scalar::rational(1, 3);
  CHECK((h + th) == Scalar::rational(5, 6));
  CHECK((h * th) == Scalar::rational(1, 6));
  CHECK(h.inverse() == Scalar(2));
  CHECK((h / th) == Scalar::rational(3, 2));
  CHECK_THROWS_AS(Scalar::rational(1, 0), DivisionByZero);
}

TEST_CASE("eisenstein relations") {
  Scalar z = Scalar::zeta();
  // zeta^2 + zeta + 1 = 0
  CHECK((z * z + z + Scalar(1)).is_zero());
  CHECK((z * z * z) == Scalar(1));
  CHECK(z.inverse() == z * z);
  CHECK((z.inverse() * z).is_one());
  Scalar w = Scalar::eisenstein(Scalar(2), Scalar(-3));
  CHECK(w.eisenstein_norm() == mpq_class(4 + 6 + 9));  // a^2 - a*b + b^2
  CHECK((w * w.inverse()).is_one());
}

TEST_CASE("norm is multiplicative") {
  std::mt19937 rng(20260814);
  std::uniform_int_distribution<long> d(-9, 9);
  for (int i = 0; i < 200; ++i) {
    Scalar a = Scalar::eisenstein(Scalar(d(rng)), Scalar(d(rng)));
    Scalar b = Scalar::eisenstein(Scalar(d(rng)), Scalar(d(rng)));
    CHECK((a * b).eisenstein_norm() == a.eisenstein_norm() * b.eisenstein_norm());
  }
}

TEST_CASE("text round-trip") {
  for (const char* t : {"0", "7", "-3/5", "(1-2*zeta)", "(1/6+1/3*zeta)", "(-zeta)", "(2+zeta)"}) {
    Scalar s = parse_scalar(t);
    CHECK(parse_scalar(s.to_string()) == s);
  }
  CHECK(parse_scalar("7") == Scalar(7));
  CHECK(parse_scalar("-3/5") == Scalar::rational(-3, 5));
  CHECK(parse_scalar("(1-2*zeta)") == Scalar::eisenstein(Scalar(1), Scalar(-2)));
  CHECK_THROWS_AS(parse_scalar("1//2"), TextParseError);
  CHECK_THROWS_AS(parse_scalar(""), TextParseError);
}

}  // TEST_SUITE
