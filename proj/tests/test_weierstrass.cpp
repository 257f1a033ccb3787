#include <doctest.h>

#include "cubicalforms/errors.hpp"
#include "cubicalforms/weierstrass.hpp"

using namespace cubicalforms;

TEST_SUITE("weierstrass") {

TEST_CASE("presets") {
  CHECK_FALSE(WeierstrassCurve::symbolic().is_gamma13());
  WeierstrassCurve g = WeierstrassCurve::gamma13();
  CHECK(g.is_gamma13());
  CHECK(g.a2().is_zero());
  CHECK(g.a4().is_zero());
  CHECK(g.a6().is_zero());
}

TEST_CASE("z(x) solves the curve equation") {
  WeierstrassCurve c = WeierstrassCurve::symbolic();
  TSeries z = z_series(c, 9);
  RingPtr ring = z.ring();
  TSeries x = TSeries::variable(ring, {"x"}, 9, "x");
  TSeries lhs = z + z.mul_poly(c.a1().embedded(ring)) * x + z * z.mul_poly(c.a3().embedded(ring));
  TSeries rhs = x * x * x + x * x * z.mul_poly(c.a2().embedded(ring)) +
                x * (z * z).mul_poly(c.a4().embedded(ring)) +
                (z * z * z).mul_poly(c.a6().embedded(ring));
  CHECK(lhs == rhs);
  CHECK_THROWS_AS(z_series(c, 2), MathError);
}

TEST_CASE("z(x) leading terms") {
  WeierstrassCurve c = WeierstrassCurve::symbolic();
  TSeries z = z_series(c, 7);
  CHECK(z.to_string() ==
        "x^3 - a1*x^4 + a1^2*x^5 + a2*x^5 - a1^3*x^6 - 2*a1*a2*x^6 - a3*x^6 + O(7)");
}

TEST_CASE("group law expansion and axioms") {
  WeierstrassCurve c = WeierstrassCurve::symbolic();
  TSeries f = fgl(c, 4);
  CHECK(f.to_string() == "x0 + x1 + a1*x0*x1 - a2*x0^2*x1 - a2*x0*x1^2 + O(4)");
  TSeries f6 = fgl(c, 6);
  RingPtr ring = f6.ring();
  std::vector<std::string> sv{"x0", "x1"};
  // commutative
  CHECK(f6.renamed(ring, sv, {{"x0", "x1"}, {"x1", "x0"}}) == f6);
  // unital: F(x, 0) = x
  TSeries x0 = TSeries::variable(ring, sv, 6, "x0");
  TSeries zero = TSeries::zero(ring, sv, 6);
  CHECK(f6.substitute({{"x0", x0}, {"x1", zero}}) == x0);
}

TEST_CASE("formal inverse and n-series") {
  WeierstrassCurve c = WeierstrassCurve::symbolic();
  int ord = 7;
  TSeries iota = formal_inverse(c, ord);
  TSeries f = fgl(c, ord);
  RingPtr r1 = iota.ring();
  RingPtr r2 = f.ring();
  TSeries x = TSeries::variable(r1, {"x"}, ord, "x");
  // F(x, iota(x)) = 0, built by substitution in the two-variable ring
  TSeries xs0 = x.renamed(r2, {"x0", "x1"}, {{"x", "x0"}});
  TSeries is1 = iota.renamed(r2, {"x0", "x1"}, {{"x", "x0"}});
  TSeries sum = f.substitute({{"x0", xs0}, {"x1", is1}});
  CHECK(sum.is_zero());

  CHECK(n_series(c, 0, ord).is_zero());
  CHECK(n_series(c, 1, ord) == x);
  CHECK(n_series(c, -1, ord) == iota);
  // [2](x) = F(x, x)
  TSeries two = f.substitute({{"x0", xs0}, {"x1", xs0}});
  CHECK(n_series(c, 2, ord).renamed(r2, {"x0", "x1"}, {{"x", "x0"}}) == two);
}

TEST_CASE("gamma13 inverse expansion") {
  WeierstrassCurve g = WeierstrassCurve::gamma13();
  TSeries iota = formal_inverse(g, 5);
  CHECK(iota.to_string() == "-x + a1*x^2 - a1^2*x^3 + a1^3*x^4 + a3*x^4 + O(5)");
}

TEST_CASE("discriminant of the preset curve") {
  RingPtr r = WeierstrassCurve::coefficient_ring();
  Poly a1 = Poly::variable(r, "a1"), a3 = Poly::variable(r, "a3");
  Poly d = discriminant(a1, a3);
  CHECK(d == a3.pow(3) * (a1.pow(3) - a3.scaled(Scalar(27))));
}

}  // TEST_SUITE
