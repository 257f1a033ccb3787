#include "cubicalforms/involution.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace cubicalforms {

namespace {

// The three-torsion model with a1, a3 replaced by their negatives.
WeierstrassCurve negated_gamma13() {
  RingPtr r = WeierstrassCurve::coefficient_ring();
  Poly z = Poly::zero(r);
  return WeierstrassCurve::from_values(Poly::variable(r, "a1").scaled(Scalar(-1)), z,
                                       Poly::variable(r, "a3").scaled(Scalar(-1)), z, z);
}

TSeries closed_q(const WeierstrassCurve& c, int order) {
  if (order < 1) throw MathError("Q needs order >= 1");
  TSeries z = z_series(c, std::max(order, 3)).truncated(order);
  RingPtr r = z.ring();
  TSeries x = TSeries::variable(r, {"x"}, order, "x");
  return TSeries::constant(r, {"x"}, order, Scalar(1)) + x.mul_poly(c.a1().embedded(r)) +
         z.mul_poly(c.a3().embedded(r));
}

}  // namespace

TSeries coordinate_change_g(const WeierstrassCurve& c, const IsoParams& p, int order) {
  if (!p.u.is_constant() || p.u.is_zero()) throw NonUnitU("u must be an invertible constant");
  Scalar ui;
  try {
    ui = p.u.constant_term().inverse();
  } catch (const MathError&) {
    throw NonUnitU("u must be an invertible constant");
  }
  Scalar ui3 = ui * ui * ui;

  if (order < 1) throw MathError("coordinate change needs order >= 1");
  TSeries z = z_series(c, std::max(order, 3)).truncated(order);
  RingPtr r = z.ring();
  TSeries x = TSeries::variable(r, {"x"}, order, "x");
  TSeries one = TSeries::constant(r, {"x"}, order, Scalar(1));

  TSeries num = x.scaled(ui) + z.mul_poly(p.r.embedded(r)).scaled(ui3);
  TSeries den = one + z.mul_poly(p.t.embedded(r)).scaled(ui3) +
                x.mul_poly(p.s.embedded(r)).scaled(ui);
  return num * den.invert_unit();
}

TSeries gamma13_g(int order) {
  RingPtr r = WeierstrassCurve::coefficient_ring();
  IsoParams p{Poly::constant(r, Scalar(1)), Poly::zero(r), Poly::variable(r, "a1"),
              Poly::variable(r, "a3")};
  return coordinate_change_g(WeierstrassCurve::gamma13(), p, order);
}

TSeries gamma13_g_negated(int order) {
  RingPtr r = WeierstrassCurve::coefficient_ring();
  WeierstrassCurve c = negated_gamma13();
  IsoParams p{Poly::constant(r, Scalar(1)), Poly::zero(r), c.a1(), c.a3()};
  return coordinate_change_g(c, p, order);
}

TwistedComposeReport twisted_compose_check(int order) {
  TSeries ga = gamma13_g(order);
  TwistedComposeReport rep;
  rep.twisted = gamma13_g_negated(order).substitute({{"x", ga}});
  rep.plain = ga.substitute({{"x", ga}});
  rep.plain_mod2 = rep.plain.reduced(Reduction{2, {}});
  return rep;
}

TSeries q_series(int order) {
  TSeries g = gamma13_g(order + 1);
  TSeries x = TSeries::variable(g.ring(), {"x"}, order + 1, "x");
  TSeries quotient = graded_divide(x, g);  // order: one less than its inputs
  TSeries closed = closed_q(WeierstrassCurve::gamma13(), order);
  if (quotient != closed)
    throw InternalMismatch("x/g(x) disagrees with 1 + a1*x + a3*z(x)");
  return closed;
}

TSeries q_tau_series(int order) { return closed_q(negated_gamma13(), order); }

TSeries q_product_torus(int m, int order) {
  if (m < 1) throw MathError("torus rank must be at least 1");
  std::vector<std::string> names = {"a1", "a3"};
  std::vector<std::string> yv;
  for (int k = 1; k <= 2 * m + 1; ++k) yv.push_back("y" + std::to_string(k));
  names.insert(names.end(), yv.begin(), yv.end());
  RingPtr ry = PolyRing::create(names);

  TSeries q = q_series(order);
  TSeries out = TSeries::constant(ry, yv, order, Scalar(1));
  for (const auto& y : yv) out *= q.renamed(ry, yv, {{"x", y}});
  return out;
}

TSeries torus_restriction(int m, const TSeries& s, int order) {
  if (m < 1) throw MathError("torus rank must be at least 1");
  const std::vector<std::string>& yv = s.series_vars();
  if (static_cast<int>(yv.size()) != 2 * m + 1)
    throw VariableMismatch("expected a series in 2m+1 variables");
  for (std::size_t i = 0; i + 1 < yv.size(); ++i) {
    TSeries swapped = s.renamed(s.ring(), yv, {{yv[i], yv[i + 1]}, {yv[i + 1], yv[i]}});
    if (swapped != s)
      throw NotSymmetric("input is not symmetric under " + yv[i] + " <-> " + yv[i + 1]);
  }

  std::vector<std::string> names;
  for (const auto& n : s.ring()->names()) {
    bool is_y = false;
    for (const auto& y : yv) is_y = is_y || (n == y);
    if (!is_y) names.push_back(n);
  }
  std::vector<std::string> xv;
  for (int k = 1; k <= m; ++k) xv.push_back("x" + std::to_string(k));
  names.insert(names.end(), xv.begin(), xv.end());
  RingPtr rx = PolyRing::create(names);

  TSeries g = gamma13_g(order);
  std::map<std::string, TSeries> assign;
  for (int k = 1; k <= m; ++k) {
    assign["y" + std::to_string(2 * k - 1)] = TSeries::variable(rx, xv, order, xv[k - 1]);
    assign["y" + std::to_string(2 * k)] = g.renamed(rx, xv, {{"x", xv[k - 1]}});
  }
  assign["y" + std::to_string(2 * m + 1)] = TSeries::zero(rx, xv, order);
  return s.substitute(assign);
}

TSeries pontryagin_series(int m, int order, int t_order) {
  if (m < 1) throw MathError("torus rank must be at least 1");
  WeierstrassCurve c = WeierstrassCurve::gamma13();
  TSeries iota = formal_inverse(c, order);
  TSeries cx = iota.mul_poly(Poly::variable(iota.ring(), "x"));  // x * iota(x)

  std::vector<std::string> names = {"a1", "a3", "t"};
  std::vector<std::string> xv;
  for (int k = 1; k <= m; ++k) xv.push_back("x" + std::to_string(k));
  names.insert(names.end(), xv.begin(), xv.end());
  RingPtr rt = PolyRing::create(names);
  Poly t = Poly::variable(rt, "t");

  TSeries out = TSeries::constant(rt, xv, order, Scalar(1));
  for (int k = 1; k <= m; ++k) {
    TSeries ck = cx.renamed(rt, xv, {{"x", xv[k - 1]}});
    out *= TSeries::constant(rt, xv, order, Scalar(1)) - ck.mul_poly(t);
  }

  // t is a plain formal variable: discard powers past t_order.
  std::size_t ti = rt->index_of("t");
  std::map<int, Poly> kept;
  for (const auto& [d, p] : out.slices()) {
    std::vector<Poly::Term> terms;
    for (const auto& tm : p.terms())
      if (expkey::exponent(tm.first, ti) <= static_cast<unsigned>(t_order)) terms.push_back(tm);
    if (!terms.empty()) kept[d] = Poly::from_sorted_terms(rt, terms);
  }
  TSeries res = TSeries::zero(rt, xv, order);
  for (const auto& [d, p] : kept) res += TSeries::from_poly(p, xv, order);
  return res;
}

}  // namespace cubicalforms
