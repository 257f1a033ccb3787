#include <doctest.h>

#include <random>

#include "cubicalforms/errors.hpp"
#include "cubicalforms/poly.hpp"
#include "cubicalforms/textio.hpp"

using namespace cubicalforms;

namespace {

RingPtr ring3() { return PolyRing::create({"x", "y", "z"}); }

Poly random_poly(RingPtr ring, std::mt19937& rng, int max_terms = 6, int max_exp = 3) {
  std::uniform_int_distribution<int> nt(0, max_terms), e(0, max_exp);
  std::uniform_int_distribution<long> c(-9, 9);
  Poly p = Poly::zero(ring);
  int terms = nt(rng);
  for (int t = 0; t < terms; ++t) {
    std::vector<unsigned> exps(ring->size());
    for (auto& x : exps) x = static_cast<unsigned>(e(rng));
    p += Poly::monomial(ring, exps, Scalar(c(rng)));
  }
  return p;
}

}  // namespace

TEST_SUITE("poly") {

TEST_CASE("variables, monomials, printing") {
  RingPtr r = ring3();
  Poly x = Poly::variable(r, "x"), y = Poly::variable(r, "y");
  CHECK((x + y).to_string() == "1*x + 1*y");
  CHECK((x * x * y).scaled(Scalar(-2)).to_string() == "-2*x^2*y");
  CHECK((x - x).is_zero());
  CHECK(Poly::constant(r, Scalar(5)).constant_term() == Scalar(5));
  CHECK_THROWS_AS(Poly::variable(r, "w"), UnknownVariable);
  CHECK_THROWS_AS(PolyRing::create({"a", "b", "a"}), MathError);
}

TEST_CASE("graded-lex term order") {
  RingPtr r = ring3();
  Poly x = Poly::variable(r, "x"), y = Poly::variable(r, "y"), z = Poly::variable(r, "z");
  // higher total degree first, then lexicographic by declaration order
  Poly p = z + y * y + x * y + x;
  CHECK(p.to_string() == "1*x*y + 1*y^2 + 1*x + 1*z");
}

TEST_CASE("ring algebra laws hold") {
  std::mt19937 rng(7);
  RingPtr r = ring3();
  for (int i = 0; i < 60; ++i) {
    Poly a = random_poly(r, rng), b = random_poly(r, rng), c = random_poly(r, rng);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
  }
}

TEST_CASE("pow matches repeated multiplication") {
  std::mt19937 rng(8);
  RingPtr r = ring3();
  Poly a = random_poly(r, rng, 4, 2);
  Poly acc = Poly::constant(r, Scalar(1));
  for (unsigned n = 0; n <= 4; ++n) {
    CHECK(a.pow(n) == acc);
    acc *= a;
  }
}

TEST_CASE("reduction drops killed variables and reduces coefficients") {
  RingPtr r = ring3();
  Poly x = Poly::variable(r, "x"), y = Poly::variable(r, "y"), z = Poly::variable(r, "z");
  Poly p = x.scaled(Scalar(5)) + x * y + z.scaled(Scalar(4)) + z * z;
  Reduction red{2, {"y"}};
  // oracle: filter terms containing y, then take coefficients mod 2
  CHECK(reduce_mod_ideal(p, red) == x + z * z);
  // reduction is a ring homomorphism
  std::mt19937 rng(9);
  for (int i = 0; i < 40; ++i) {
    Poly a = random_poly(r, rng), b = random_poly(r, rng);
    CHECK(reduce_mod_ideal(a * b, red) ==
          reduce_mod_ideal(reduce_mod_ideal(a, red) * reduce_mod_ideal(b, red), red));
    CHECK(reduce_mod_ideal(a + b, red) ==
          reduce_mod_ideal(reduce_mod_ideal(a, red) + reduce_mod_ideal(b, red), red));
  }
  CHECK_THROWS_AS(reduce_mod_ideal(x.scaled(Scalar::rational(1, 2)), red),
                  NonIntegerCoefficient);
}

TEST_CASE("embedding into a larger ring and back") {
  RingPtr small = PolyRing::create({"x", "z"});
  RingPtr big = ring3();
  Poly p = Poly::variable(small, "x") * Poly::variable(small, "z") +
           Poly::variable(small, "x").scaled(Scalar(3));
  Poly q = p.embedded(big);
  CHECK(q.to_string() == p.to_string());
  CHECK(q.embedded(small) == p);
  // a used variable missing from the target throws; unused ones are fine
  RingPtr noz = PolyRing::create({"x", "y"});
  CHECK_THROWS_AS(p.embedded(noz), UnknownVariable);
  CHECK(Poly::variable(small, "x").embedded(noz).to_string() == "1*x");
}

TEST_CASE("coefficient extraction") {
  RingPtr r = ring3();
  Poly x = Poly::variable(r, "x"), y = Poly::variable(r, "y");
  Poly p = x * x * y.scaled(Scalar(7)) + x;
  CHECK(p.coefficient({2, 1, 0}) == Scalar(7));
  CHECK(p.coefficient({1, 0, 0}) == Scalar(1));
  CHECK(p.coefficient({0, 0, 5}) == Scalar(0));
}

TEST_CASE("text and JSON round-trips") {
  std::mt19937 rng(10);
  RingPtr r = ring3();
  for (int i = 0; i < 40; ++i) {
    Poly p = random_poly(r, rng);
    CHECK(parse_poly(r, p.to_string()) == p);
    CHECK(poly_from_json(r, poly_to_json(p)) == p);
  }
  CHECK_THROWS_AS(parse_poly(r, "x + + y"), TextParseError);
  CHECK_THROWS_AS(parse_poly(r, "q"), TextParseError);
}

}  // TEST_SUITE
