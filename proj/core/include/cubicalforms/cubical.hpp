#pragma once

#include "cubicalforms/weierstrass.hpp"

namespace cubicalforms {

// A quotient of two series in {x0,x1,x2} that is not itself a power series;
// only the combined quotient of the two fractions below is.
struct SeriesFraction {
  TSeries numerator;
  TSeries denominator;
};

// t = [prod_cyc (x0*z1 - x1*z0)] / [det(x_i, 1, z_i) * z0*z1*z2].
SeriesFraction t_fraction(const WeierstrassCurve& c, int order);

// u = [(x0 +F x1)(x1 +F x2)(x2 +F x0)] / [x0*x1*x2 * (x0 +F x1 +F x2)].
SeriesFraction u_fraction(const WeierstrassCurve& c, int order);

// The power series t/u, normalized with constant term 1.  Forms the combined
// numerator and denominator, cancels their common monomial factor
// (x0*x1*x2)^3, and divides degree by degree.  Internally works at order
// order+7 since both combined sides have valuation 7.
TSeries cubical_structure(const WeierstrassCurve& c, int order,
                          const Reduction* red = nullptr);

// The mod-(2,a1,a2) consistency run on the gamma13 curve: the combined
// numerator and denominator share their lowest (degree-7) form w, their
// second-lowest forms differ by v = a3*x0*x1*x2*w, and the quotient series is
// 1 + v/w + higher terms.  Any failed identity raises PinnedValueMismatch
// naming the first offending term.
struct CancellationReport {
  Poly lowest_form;         // w, the shared degree-7 form
  Poly lowest_factored;     // (sum_sym x0^4*x1^2) * (x0+x1+x2), equal to w
  Poly second_difference;   // v, the degree-10 difference
  Poly quotient;            // v / w, exact homogeneous division
  TSeries cubical_mod2;     // the quotient series itself
};

CancellationReport cancellation_check(int order);

}  // namespace cubicalforms
