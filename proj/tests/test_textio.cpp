#include <doctest.h>

#include <random>

#include "cubicalforms/errors.hpp"
#include "cubicalforms/textio.hpp"
#include "cubicalforms/weierstrass.hpp"

using namespace cubicalforms;

TEST_SUITE("textio") {

TEST_CASE("scalar forms") {
  for (const char* s : {"0", "1", "-7", "2/3", "-355/113", "(1+1*zeta)", "(-1-2*zeta)",
                        "(1/6+1/3*zeta)"}) {
    Scalar c = parse_scalar(s);
    CHECK(parse_scalar(c.to_string()) == c);
  }
  CHECK(parse_scalar("4/6") == parse_scalar("2/3"));
  CHECK_THROWS_AS(parse_scalar(""), TextParseError);
  CHECK_THROWS_AS(parse_scalar("1//2"), TextParseError);
  CHECK_THROWS_AS(parse_scalar("x"), TextParseError);
}

TEST_CASE("poly round-trips") {
  RingPtr r = PolyRing::create({"a1", "a2", "x"});
  Poly a1 = Poly::variable(r, "a1"), a2 = Poly::variable(r, "a2"),
       x = Poly::variable(r, "x");
  Poly p = a1 * a1 * x - a2.scaled(Scalar(3)) + x.scaled(Scalar::rational(1, 2));
  CHECK(parse_poly(r, p.to_string()) == p);
  CHECK(poly_from_json(r, poly_to_json(p)) == p);
  CHECK(parse_poly(r, "0").is_zero());
  CHECK_THROWS_AS(parse_poly(r, "a1 + b"), TextParseError);
  CHECK_THROWS_AS(parse_poly(r, "a1 +"), TextParseError);
}

TEST_CASE("series round-trips require the truncation marker") {
  WeierstrassCurve c = WeierstrassCurve::symbolic();
  TSeries f = fgl(c, 5);
  RingPtr r = f.ring();
  CHECK(parse_series(r, {"x0", "x1"}, f.to_string()) == f);
  CHECK(series_from_json(r, series_to_json(f)) == f);
  CHECK_THROWS_AS(parse_series(r, {"x0", "x1"}, "x0 + x1"), TextParseError);
  TSeries z = parse_series(r, {"x0", "x1"}, "0 + O(6)");
  CHECK(z.is_zero());
  CHECK(z.order() == 6);
}

TEST_CASE("series with Eisenstein coefficients") {
  RingPtr r = PolyRing::create({"q", "z"});
  std::string text = "z + (-1-2*zeta)*q*z^2 + (-1/6-1/3*zeta)*z^2 + O(3)";
  TSeries s = parse_series(r, {"z"}, text);
  CHECK(s.to_string() == text);
  CHECK(series_from_json(r, series_to_json(s)) == s);
}

TEST_CASE("random polynomials survive both encodings") {
  RingPtr r = PolyRing::create({"u", "v", "w"});
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> e(0, 4), nt(1, 10);
  std::uniform_int_distribution<long> num(-20, 20);
  std::uniform_int_distribution<long> den(1, 9);
  for (int i = 0; i < 40; ++i) {
    Poly p = Poly::zero(r);
    int terms = nt(rng);
    for (int t = 0; t < terms; ++t) {
      std::vector<unsigned> exps{static_cast<unsigned>(e(rng)), static_cast<unsigned>(e(rng)),
                                 static_cast<unsigned>(e(rng))};
      p += Poly::monomial(r, exps, Scalar::rational(num(rng), den(rng)));
    }
    CHECK(parse_poly(r, p.to_string()) == p);
    CHECK(poly_from_json(r, poly_to_json(p)) == p);
  }
}

}  // TEST_SUITE
