#pragma once

#include "cubicalforms/weierstrass.hpp"

namespace cubicalforms {

// Parameters of the ambient coordinate change X' = u^2 X + r Z,
// Y' = s u^2 X + u^3 Y + t Z, Z' = Z.  u must be an invertible constant;
// r, s, t are arbitrary polynomials in the curve coefficients.
struct IsoParams {
  Poly u, r, s, t;
};

// x' = (u^{-1} x + r u^{-3} z) / (1 + t u^{-3} z + s u^{-1} x) expanded as a
// series in x.  The output has zero constant term and unit linear coefficient.
// Throws NonUnitU when u is not an invertible constant.
TSeries coordinate_change_g(const WeierstrassCurve& c, const IsoParams& p, int order);

// The curve-negating change of coordinates on the three-torsion model:
// g(x) = x / (1 + a1 x + a3 z(x)) = x - a1 x^2 + a1^2 x^3 + ...
TSeries gamma13_g(int order);

// Same series with a1, a3 negated: coordinates on the image curve.
TSeries gamma13_g_negated(int order);

struct TwistedComposeReport {
  TSeries twisted;      // g_{-a}(g_a(x)); equals x to the computed order
  TSeries plain;        // g_a(g_a(x)); differs from x by 2-divisible terms
  TSeries plain_mod2;   // plain reduced mod 2; equals x
};
TwistedComposeReport twisted_compose_check(int order);

// Q(x) = x / g(x) = 1 + a1 x + a3 z(x).  Both expressions are computed and
// compared; InternalMismatch if they ever disagree.
TSeries q_series(int order);

// Q with a1, a3 negated, matching gamma13_g_negated.
TSeries q_tau_series(int order);

// prod_{k=1}^{2m+1} Q(y_k) in the series variables y1..y_{2m+1}, the input
// the torus restriction consumes.
TSeries q_product_torus(int m, int order);

// Restriction along y_{2k-1} -> x_k, y_{2k} -> g(x_k) for k <= m, and
// y_{2m+1} -> 0.  The input must be symmetric in the y's (NotSymmetric).
TSeries torus_restriction(int m, const TSeries& s, int order);

// prod_{k=1}^m (1 - t * c_k) with c_k = x_k * iota(x_k), over the
// three-torsion model.  t is a plain formal variable, truncated past t_order;
// the series order applies to x1..xm.
TSeries pontryagin_series(int m, int order, int t_order);

}  // namespace cubicalforms
