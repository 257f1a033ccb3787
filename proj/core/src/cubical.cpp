#include "cubicalforms/cubical.hpp"

namespace cubicalforms {

namespace {

const std::vector<std::string> kSv3 = {"x0", "x1", "x2"};

struct Pieces {
  RingPtr r3;
  std::vector<TSeries> z;   // z(x0), z(x1), z(x2)
  std::vector<TSeries> w;   // z(xi)/xi^3, unit series
  std::vector<Poly> xv;     // x0, x1, x2 as polynomials
  TSeries F01, F12, F20;    // group law on the index pairs
  TSeries Fsum3;            // x0 +F x1 +F x2
};

Pieces make_pieces(const WeierstrassCurve& c, int order, const Reduction* red) {
  Pieces p;
  p.r3 = curve_series_ring(kSv3);

  TSeries z = z_series(c, order + 3);
  RingPtr r1 = z.ring();
  TSeries xcube = TSeries::from_poly(Poly::variable(r1, "x").pow(3), {"x"}, order + 3);
  TSeries w = graded_divide(z, xcube);  // order == given order
  if (red) {
    z = z.reduced(*red);
    w = w.reduced(*red);
  }

  for (int i = 0; i < 3; ++i) {
    std::string xi = "x" + std::to_string(i);
    TSeries id = TSeries::variable(p.r3, kSv3, order, xi);
    p.z.push_back(z.substitute({{"x", id}}));
    p.w.push_back(w.substitute({{"x", id}}));
    p.xv.push_back(Poly::variable(p.r3, xi));
  }

  TSeries F2 = fgl(c, order);
  if (red) F2 = F2.reduced(*red);
  p.F01 = F2.renamed(p.r3, kSv3);
  p.F12 = F2.renamed(p.r3, kSv3, {{"x0", "x1"}, {"x1", "x2"}});
  p.F20 = F2.renamed(p.r3, kSv3, {{"x0", "x2"}, {"x1", "x0"}});

  TSeries Fx2 = F2.renamed(p.r3, kSv3, {{"x1", "x2"}});
  TSeries x1_id = TSeries::variable(p.r3, kSv3, order, "x1");
  TSeries x2_id = TSeries::variable(p.r3, kSv3, order, "x2");
  p.Fsum3 = Fx2.substitute({{"x0", p.F01}, {"x1", x1_id}, {"x2", x2_id}});
  if (red) p.Fsum3 = p.Fsum3.reduced(*red);
  return p;
}

TSeries det3(const Pieces& p) {
  // det of the rows (xi, 1, zi): sum_cyc (x1*z0 - x0*z1).
  TSeries d = p.z[0].mul_poly(p.xv[1]) - p.z[1].mul_poly(p.xv[0]);
  d += p.z[1].mul_poly(p.xv[2]) - p.z[2].mul_poly(p.xv[1]);
  d += p.z[2].mul_poly(p.xv[0]) - p.z[0].mul_poly(p.xv[2]);
  return d;
}

struct Combined {
  TSeries num;  // valuation 7
  TSeries den;  // valuation 7
};

// The combined quotient t/u with the common factor (x0*x1*x2)^3 cancelled:
// each chord factor x_i*z_j - x_j*z_i is x_i*x_j*(x_j^2*w_j - x_i^2*w_i), and
// z0*z1*z2 = (x0*x1*x2)^3 * w0*w1*w2, so both sides shed the monomial exactly.
Combined combined_sides(const WeierstrassCurve& c, int working_order, const Reduction* red) {
  Pieces p = make_pieces(c, working_order, red);

  auto h = [&](int i, int j) {
    return p.w[j].mul_poly(p.xv[j] * p.xv[j]) - p.w[i].mul_poly(p.xv[i] * p.xv[i]);
  };
  TSeries h01 = h(0, 1), h12 = h(1, 2), h20 = h(2, 0);

  Combined out;
  out.num = h01.mul(h12, red).mul(h20, red).mul(p.Fsum3, red);
  out.den = det3(p).mul(p.w[0], red).mul(p.w[1], red).mul(p.w[2], red)
                .mul(p.F01, red).mul(p.F12, red).mul(p.F20, red);
  return out;
}

}  // namespace

SeriesFraction t_fraction(const WeierstrassCurve& c, int order) {
  Pieces p = make_pieces(c, order, nullptr);
  auto chord = [&](int i, int j) {
    return p.z[j].mul_poly(p.xv[i]) - p.z[i].mul_poly(p.xv[j]);
  };
  SeriesFraction f;
  f.numerator = chord(0, 1) * chord(1, 2) * chord(2, 0);
  f.denominator = det3(p) * p.z[0] * p.z[1] * p.z[2];
  return f;
}

SeriesFraction u_fraction(const WeierstrassCurve& c, int order) {
  Pieces p = make_pieces(c, order, nullptr);
  SeriesFraction f;
  f.numerator = p.F01 * p.F12 * p.F20;
  f.denominator = p.Fsum3.mul_poly(p.xv[0] * p.xv[1] * p.xv[2]);
  return f;
}

TSeries cubical_structure(const WeierstrassCurve& c, int order, const Reduction* red) {
  if (order < 4) throw MathError("cubical structure needs order >= 4");
  Combined sides = combined_sides(c, order + 7, red);
  return graded_divide(sides.num, sides.den, red);
}

CancellationReport cancellation_check(int order) {
  if (order < 4) throw MathError("cancellation check needs order >= 4");
  const Reduction red{2, {"a1", "a2"}};
  const int W = order + 7;
  Combined sides = combined_sides(WeierstrassCurve::gamma13(), W, &red);

  CancellationReport rep;
  RingPtr r3 = sides.num.ring();

  Poly n7 = sides.num.homog(7);
  Poly d7 = sides.den.homog(7);
  if (n7 != d7) {
    Poly diff = reduce_mod_ideal(n7 - d7, red);
    throw PinnedValueMismatch("lowest forms of numerator and denominator differ, first term " +
                              Poly::from_sorted_terms(r3, {diff.terms().front()}).to_string());
  }
  rep.lowest_form = n7;

  Poly x0 = Poly::variable(r3, "x0"), x1 = Poly::variable(r3, "x1"),
       x2 = Poly::variable(r3, "x2");
  Poly sum_cyc = x0 + x1 + x2;
  Poly sum_sym = Poly::zero(r3);
  const int perms[6][3] = {{4, 2, 0}, {4, 0, 2}, {2, 4, 0}, {0, 4, 2}, {2, 0, 4}, {0, 2, 4}};
  for (const auto& e : perms)
    sum_sym += x0.pow(e[0]) * x1.pow(e[1]) * x2.pow(e[2]);
  rep.lowest_factored = reduce_mod_ideal(sum_sym * sum_cyc, red);
  if (rep.lowest_form != rep.lowest_factored)
    throw PinnedValueMismatch("lowest form does not match its factored display");

  Poly prod_cyc = reduce_mod_ideal((x1 * x1 - x0 * x0) * (x2 * x2 - x1 * x1) *
                                   (x0 * x0 - x2 * x2) * sum_cyc, red);
  if (rep.lowest_form != prod_cyc)
    throw PinnedValueMismatch("lowest form does not match the cyclic square product");

  for (int d = 8; d <= 9; ++d) {
    Poly diff = reduce_mod_ideal(sides.num.homog(d) - sides.den.homog(d), red);
    if (!diff.is_zero())
      throw PinnedValueMismatch("unexpected degree-" + std::to_string(d) + " difference, term " +
                                Poly::from_sorted_terms(r3, {diff.terms().front()}).to_string());
  }

  rep.second_difference = reduce_mod_ideal(sides.num.homog(10) - sides.den.homog(10), red);
  Poly a3 = Poly::variable(r3, "a3");
  Poly expected_v = reduce_mod_ideal(a3 * x0 * x1 * x2 * rep.lowest_form, red);
  if (rep.second_difference != expected_v) {
    Poly diff = reduce_mod_ideal(rep.second_difference - expected_v, red);
    throw PinnedValueMismatch("second-lowest difference is not a3*x0*x1*x2*w, first term " +
                              Poly::from_sorted_terms(r3, {diff.terms().front()}).to_string());
  }

  rep.quotient = divide_exact(rep.second_difference, rep.lowest_form, &red);
  Poly expected_q = reduce_mod_ideal(a3 * x0 * x1 * x2, red);
  if (rep.quotient != expected_q)
    throw PinnedValueMismatch("homogeneous quotient v/w is not a3*x0*x1*x2");

  rep.cubical_mod2 = graded_divide(sides.num, sides.den, &red);
  return rep;
}

}  // namespace cubicalforms
