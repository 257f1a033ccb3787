#include <doctest.h>

#include "cubicalforms/errors.hpp"
#include "cubicalforms/involution.hpp"

using namespace cubicalforms;

TEST_SUITE("involution") {

TEST_CASE("negating coordinate change, pinned expansion") {
  CHECK(gamma13_g(6).to_string() ==
        "x - a1*x^2 + a1^2*x^3 - a1^3*x^4 - a3*x^4 + a1^4*x^5 + 3*a1*a3*x^5 + O(6)");
  CHECK(gamma13_g_negated(4).to_string() == "x + a1*x^2 + a1^2*x^3 + O(4)");
}

TEST_CASE("general coordinate change") {
  RingPtr r = WeierstrassCurve::coefficient_ring();
  WeierstrassCurve c = WeierstrassCurve::gamma13();
  Poly one = Poly::constant(r, Scalar(1)), zero = Poly::zero(r);

  IsoParams id{one, zero, zero, zero};
  TSeries x = TSeries::variable(coordinate_change_g(c, id, 5).ring(), {"x"}, 5, "x");
  CHECK(coordinate_change_g(c, id, 5) == x);

  IsoParams half{Poly::constant(r, Scalar(2)), zero, zero, zero};
  CHECK(coordinate_change_g(c, half, 4).to_string() == "1/2*x + O(4)");

  IsoParams bad_zero{zero, zero, zero, zero};
  CHECK_THROWS_AS(coordinate_change_g(c, bad_zero, 4), NonUnitU);
  IsoParams bad_var{Poly::variable(r, "a1"), zero, zero, zero};
  CHECK_THROWS_AS(coordinate_change_g(c, bad_var, 4), NonUnitU);
}

TEST_CASE("twisted composition is the identity, plain one only mod 2") {
  TwistedComposeReport rep = twisted_compose_check(10);
  TSeries x = TSeries::variable(rep.twisted.ring(), {"x"}, 10, "x");
  CHECK(rep.twisted == x);
  CHECK(rep.plain != x);
  CHECK(rep.plain_mod2 == x.reduced({2, {}}));
}

TEST_CASE("Q and its twist") {
  CHECK(q_series(6).to_string() ==
        "1 + a1*x + a3*x^3 - a1*a3*x^4 + a1^2*a3*x^5 + O(6)");
  CHECK(q_tau_series(4).to_string() == "1 - a1*x - a3*x^3 + O(4)");

  // Q(x) * Qtau(g(x)) = 1
  int ord = 8;
  TSeries g = gamma13_g(ord);
  TSeries qt_at_g = q_tau_series(ord).substitute({{"x", g}});
  TSeries prod = q_series(ord) * qt_at_g;
  CHECK(prod == TSeries::constant(prod.ring(), {"x"}, ord, Scalar(1)));
}

TEST_CASE("torus restriction of the Q product") {
  for (int m : {1, 2}) {
    int ord = 5;
    TSeries prod = q_product_torus(m, ord);
    TSeries restricted = torus_restriction(m, prod, ord);
    TSeries one =
        TSeries::constant(restricted.ring(), restricted.series_vars(), ord, Scalar(1));
    CHECK(restricted.reduced({2, {}}) == one);
  }

  // a lopsided input is rejected
  TSeries prod = q_product_torus(1, 4);
  TSeries y1 = TSeries::variable(prod.ring(), prod.series_vars(), 4, "y1");
  CHECK_THROWS_AS(torus_restriction(1, prod + y1, 4), NotSymmetric);
}

TEST_CASE("total class of the tangent-sum bundle") {
  CHECK(pontryagin_series(1, 5, 2).to_string() ==
        "1 + t*x1^2 - a1*t*x1^3 + a1^2*t*x1^4 + O(5)");
  CHECK(pontryagin_series(2, 3, 3).to_string() == "1 + t*x1^2 + t*x2^2 + O(3)");
}

}  // TEST_SUITE
