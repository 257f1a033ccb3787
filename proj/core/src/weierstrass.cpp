#include "cubicalforms/weierstrass.hpp"

namespace cubicalforms {

namespace {
const std::vector<std::string>& a_vars() {
  static const std::vector<std::string> names = {"a1", "a2", "a3", "a4", "a6"};
  return names;
}
}  // namespace

RingPtr WeierstrassCurve::coefficient_ring() {
  static const RingPtr ring = PolyRing::create(a_vars());
  return ring;
}

WeierstrassCurve::WeierstrassCurve(Poly a1, Poly a2, Poly a3, Poly a4, Poly a6)
    : a1_(std::move(a1)), a2_(std::move(a2)), a3_(std::move(a3)), a4_(std::move(a4)),
      a6_(std::move(a6)) {}

WeierstrassCurve WeierstrassCurve::symbolic() {
  RingPtr r = coefficient_ring();
  return WeierstrassCurve(Poly::variable(r, "a1"), Poly::variable(r, "a2"),
                          Poly::variable(r, "a3"), Poly::variable(r, "a4"),
                          Poly::variable(r, "a6"));
}

WeierstrassCurve WeierstrassCurve::gamma13() {
  RingPtr r = coefficient_ring();
  return WeierstrassCurve(Poly::variable(r, "a1"), Poly::zero(r), Poly::variable(r, "a3"),
                          Poly::zero(r), Poly::zero(r));
}

WeierstrassCurve WeierstrassCurve::from_values(Poly a1, Poly a2, Poly a3, Poly a4, Poly a6) {
  RingPtr r = coefficient_ring();
  for (const Poly* p : {&a1, &a2, &a3, &a4, &a6})
    if (!p->ring() || !p->ring()->same_as(*r))
      throw VariableMismatch("curve coefficients must live in the coefficient ring");
  return WeierstrassCurve(std::move(a1), std::move(a2), std::move(a3), std::move(a4),
                          std::move(a6));
}

RingPtr curve_series_ring(const std::vector<std::string>& series_vars) {
  std::vector<std::string> names = a_vars();
  names.insert(names.end(), series_vars.begin(), series_vars.end());
  return PolyRing::create(std::move(names));
}

TSeries z_series(const WeierstrassCurve& c, int order) {
  if (order < 3) throw MathError("z expansion needs order >= 3");
  RingPtr r = curve_series_ring({"x"});
  const std::vector<std::string> sv = {"x"};
  Poly x = Poly::variable(r, "x");
  Poly a1 = c.a1().embedded(r), a2 = c.a2().embedded(r), a3 = c.a3().embedded(r);
  Poly a4 = c.a4().embedded(r), a6 = c.a6().embedded(r);

  TSeries x3 = TSeries::from_poly(x.pow(3), sv, order);
  TSeries z = x3;
  for (int pass = 0; pass <= order; ++pass) {
    TSeries z2 = z * z;
    TSeries z3 = z2 * z;
    z = x3 + z.mul_poly(a2 * x * x) + z2.mul_poly(a4 * x) + z3.mul_poly(a6) -
        z.mul_poly(a1 * x) - z2.mul_poly(a3);
  }
  return z;
}

namespace {

// Abscissa of the third intersection of the curve with the chord through
// (x0, z(x0)) and (x1, z(x1)), as a series in {x0, x1}.
TSeries third_intersection(const WeierstrassCurve& c, int order) {
  RingPtr r2 = curve_series_ring({"x0", "x1"});
  const std::vector<std::string> sv = {"x0", "x1"};
  TSeries z = z_series(c, order + 1);

  TSeries lam = divided_difference(z, r2, "x0", "x1");
  TSeries x0_id = TSeries::variable(r2, sv, order + 1, "x0");
  TSeries z0 = z.substitute({{"x", x0_id}});

  Poly x0 = Poly::variable(r2, "x0");
  Poly x1 = Poly::variable(r2, "x1");
  Poly a1 = c.a1().embedded(r2), a2 = c.a2().embedded(r2), a3 = c.a3().embedded(r2);
  Poly a4 = c.a4().embedded(r2), a6 = c.a6().embedded(r2);

  TSeries nu = z0 - lam.mul_poly(x0);
  TSeries lam2 = lam * lam;
  TSeries one = TSeries::constant(r2, sv, order, Scalar(1));

  // Substituting z = L*x + V into the curve gives a cubic in x whose three
  // roots are x0, x1, and the third abscissa; Vieta's relation reads off the
  // latter as -B/A - x0 - x1.
  TSeries A = one + lam.mul_poly(a2) + lam2.mul_poly(a4) + (lam2 * lam).mul_poly(a6);
  TSeries B = nu.mul_poly(a2) + (lam * nu).mul_poly(a4).scaled(Scalar(2)) +
              (lam2 * nu).mul_poly(a6).scaled(Scalar(3)) - lam.mul_poly(a1) -
              lam2.mul_poly(a3);
  return -(B * A.invert_unit()) - TSeries::from_poly(x0 + x1, sv, order);
}

}  // namespace

TSeries fgl(const WeierstrassCurve& c, int order) {
  if (order < 2) throw MathError("group law needs order >= 2");
  TSeries x3 = third_intersection(c, order);

  // The inverse series sends x to the abscissa completing it to a chord whose
  // third intersection sits at the origin.
  RingPtr r1 = curve_series_ring({"x"});
  TSeries x_id = TSeries::variable(r1, {"x"}, order, "x");
  TSeries iota = -x_id;
  for (int pass = 0; pass <= order; ++pass)
    iota = iota + x3.substitute({{"x0", x_id}, {"x1", iota}});

  return iota.substitute({{"x", x3}});
}

TSeries formal_inverse(const WeierstrassCurve& c, int order) {
  TSeries F = fgl(c, order);
  RingPtr r1 = curve_series_ring({"x"});
  TSeries x_id = TSeries::variable(r1, {"x"}, order, "x");
  TSeries iota = -x_id;
  for (int pass = 0; pass <= order; ++pass) {
    TSeries fx = F.substitute({{"x0", x_id}, {"x1", iota}});
    iota = -x_id - (fx - x_id - iota);
  }
  return iota;
}

TSeries n_series(const WeierstrassCurve& c, long n, int order) {
  RingPtr r1 = curve_series_ring({"x"});
  TSeries x_id = TSeries::variable(r1, {"x"}, order, "x");
  if (n == 0) return TSeries::zero(r1, {"x"}, order);

  long steps = n < 0 ? -n : n;
  TSeries acc = x_id;
  if (steps >= 2) {
    TSeries F = fgl(c, order);
    for (long i = 1; i < steps; ++i) acc = F.substitute({{"x0", x_id}, {"x1", acc}});
  }
  if (n < 0) acc = formal_inverse(c, order).substitute({{"x", acc}});
  return acc;
}

Poly discriminant(const Poly& a1, const Poly& a3) {
  return a3.pow(3) * (a1.pow(3) - a3.scaled(Scalar(27)));
}

}  // namespace cubicalforms
