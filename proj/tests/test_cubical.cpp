#include <doctest.h>

#include "cubicalforms/cubical.hpp"
#include "cubicalforms/errors.hpp"

using namespace cubicalforms;

TEST_SUITE("cubical") {

TEST_CASE("pinned coefficient families") {
  WeierstrassCurve c = WeierstrassCurve::symbolic();
  TSeries r = cubical_structure(c, 5);
  RingPtr ring = r.ring();
  Poly a1 = Poly::variable(ring, "a1"), a2 = Poly::variable(ring, "a2"),
       a3 = Poly::variable(ring, "a3"), a4 = Poly::variable(ring, "a4");
  CHECK(r.homog(0) == Poly::constant(ring, Scalar(1)));
  CHECK(r.homog(1).is_zero());
  CHECK(r.homog(2).is_zero());
  CHECK(r.coefficient({1, 1, 1}) == -(a1 * a2 - a3.scaled(Scalar(3))));
  Poly quartic = -(a1 * a3 - a2 * a2 + a4.scaled(Scalar(5)));
  CHECK(r.coefficient({2, 1, 1}) == quartic);
  CHECK(r.coefficient({1, 2, 1}) == quartic);
  CHECK(r.coefficient({1, 1, 2}) == quartic);
  CHECK_THROWS_AS(cubical_structure(c, 3), MathError);
}

TEST_CASE("symmetry and normalization") {
  WeierstrassCurve c = WeierstrassCurve::symbolic();
  TSeries r = cubical_structure(c, 5);
  RingPtr ring = r.ring();
  std::vector<std::string> sv{"x0", "x1", "x2"};
  CHECK(r.renamed(ring, sv, {{"x0", "x1"}, {"x1", "x0"}}) == r);
  CHECK(r.renamed(ring, sv, {{"x0", "x1"}, {"x1", "x2"}, {"x2", "x0"}}) == r);
  std::map<std::string, TSeries> kill2{{"x0", TSeries::variable(ring, sv, 5, "x0")},
                                       {"x1", TSeries::variable(ring, sv, 5, "x1")},
                                       {"x2", TSeries::zero(ring, sv, 5)}};
  CHECK(r.substitute(kill2) == TSeries::constant(ring, sv, 5, Scalar(1)));
}

TEST_CASE("fraction sides share their lowest form") {
  WeierstrassCurve c = WeierstrassCurve::gamma13();
  SeriesFraction t = t_fraction(c, 17), u = u_fraction(c, 17);
  TSeries lhs = t.numerator * u.denominator;
  TSeries rhs = t.denominator * u.numerator;
  CHECK(lhs.valuation() == 16);
  CHECK(rhs.valuation() == 16);
  // equal lowest forms: the quotient series starts at 1
  CHECK(lhs.homog(16) == rhs.homog(16));
}

TEST_CASE("reduced preset expansion") {
  Reduction red{2, {"a1", "a2"}};
  WeierstrassCurve g = WeierstrassCurve::gamma13();
  TSeries r = cubical_structure(g, 4, &red);
  RingPtr ring = r.ring();
  Poly mono = Poly::variable(ring, "a3") * Poly::variable(ring, "x0") *
              Poly::variable(ring, "x1") * Poly::variable(ring, "x2");
  CHECK(r == TSeries::from_poly(Poly::constant(ring, Scalar(1)) + mono,
                                {"x0", "x1", "x2"}, 4));
}

TEST_CASE("lowest-form cancellation report") {
  CancellationReport rep = cancellation_check(4);
  // w has the 18 degree-7 monomials of (sum_sym x0^4 x1^2)(x0+x1+x2) mod 2
  CHECK(rep.lowest_form.term_count() == 18);
  CHECK(rep.lowest_form == rep.lowest_factored);
  RingPtr ring = rep.quotient.ring();
  Poly mono = Poly::variable(ring, "a3") * Poly::variable(ring, "x0") *
              Poly::variable(ring, "x1") * Poly::variable(ring, "x2");
  CHECK(rep.quotient == mono);
  CHECK(rep.second_difference == mono * rep.lowest_form);
  CHECK(rep.cubical_mod2.homog(0) == Poly::constant(ring, Scalar(1)));
  CHECK(rep.cubical_mod2.homog(3) == mono);
}

}  // TEST_SUITE
