#pragma once

#include "cubicalforms/series.hpp"

namespace cubicalforms {

// A cubic y^2*z + a1*x*y*z + a3*y*z^2 = x^3 + a2*x^2*z + a4*x*z^2 + a6*z^3 in
// the coordinates x = X/Y, z = Z/Y, carried by its five coefficients.  The
// coefficients are polynomials over the shared coefficient ring; presets fix
// some of them (gamma13: a2 = a4 = a6 = 0).
class WeierstrassCurve {
 public:
  // The ring Z[a1,a2,a3,a4,a6] the coefficients live in.
  static RingPtr coefficient_ring();

  static WeierstrassCurve symbolic();
  static WeierstrassCurve gamma13();
  static WeierstrassCurve from_values(Poly a1, Poly a2, Poly a3, Poly a4, Poly a6);

  const Poly& a1() const { return a1_; }
  const Poly& a2() const { return a2_; }
  const Poly& a3() const { return a3_; }
  const Poly& a4() const { return a4_; }
  const Poly& a6() const { return a6_; }

  bool is_gamma13() const { return a2_.is_zero() && a4_.is_zero() && a6_.is_zero(); }

 private:
  WeierstrassCurve(Poly a1, Poly a2, Poly a3, Poly a4, Poly a6);
  Poly a1_, a2_, a3_, a4_, a6_;
};

// The coefficient ring extended by series variables, in declaration order
// a1,a2,a3,a4,a6 then the given names.
RingPtr curve_series_ring(const std::vector<std::string>& series_vars);

// The unique series z(x) = x^3 + ... solving the curve equation for z,
// computed by the contracting iteration
//   z <- x^3 + a2*x^2*z + a4*x*z^2 + a6*z^3 - a1*x*z - a3*z^2.
TSeries z_series(const WeierstrassCurve& c, int order);

// The formal group law x0 +_F x1 in {x0,x1}, via the chord through
// (x0,z0),(x1,z1): with slope L and intercept V the curve cuts the chord in a
// third point whose abscissa comes from Vieta on the resulting cubic; the sum
// is the formal inverse of that abscissa.
TSeries fgl(const WeierstrassCurve& c, int order);

// The series i(x) with F(x, i(x)) = 0, by the iteration
// i <- -x - (F(x,i) - x - i) starting from -x.
TSeries formal_inverse(const WeierstrassCurve& c, int order);

// [n](x): [0] = 0, [n+1] = F(x,[n]), [-n] = i([n]).
TSeries n_series(const WeierstrassCurve& c, long n, int order);

// a3^3 * (a1^3 - 27*a3).
Poly discriminant(const Poly& a1, const Poly& a3);

}  // namespace cubicalforms
