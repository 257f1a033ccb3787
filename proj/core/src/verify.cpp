#include "cubicalforms/verify.hpp"

#include <chrono>
#include <functional>
#include <sstream>

#include "cubicalforms/cubical.hpp"
#include "cubicalforms/involution.hpp"
#include "cubicalforms/qchar.hpp"
#include "cubicalforms/ssq.hpp"
#include "cubicalforms/weierstrass.hpp"

namespace cubicalforms {

namespace {

std::string first_series_term(const TSeries& diff) {
  for (const auto& [d, p] : diff.slices())
    if (!p.terms().empty())
      return Poly::from_sorted_terms(diff.ring(), {p.terms().front()}).to_string();
  return "0";
}

std::string series_mismatch(const char* what, const TSeries& got, const TSeries& want) {
  if (got == want) return "";
  std::ostringstream os;
  os << what << ": first offending term " << first_series_term(got - want);
  return os.str();
}

std::string poly_mismatch(const char* what, const Poly& got, const Poly& want) {
  if (got == want) return "";
  Poly diff = got - want;
  std::ostringstream os;
  os << what << ": first offending term "
     << Poly::from_sorted_terms(diff.ring(), {diff.terms().front()}).to_string();
  return os.str();
}

std::string qx_mismatch(const char* what, const QXSeries& got, const QXSeries& want) {
  if (got == want) return "";
  for (int n = 0; n < got.x_order(); ++n)
    for (int q = 0; q < got.q_order(); ++q)
      if (!(got.at(n, q) == want.at(n, q))) {
        std::ostringstream os;
        os << what << ": first offending term at x^" << n << "*q^" << q << ": "
           << got.at(n, q).to_string() << " vs " << want.at(n, q).to_string();
        return os.str();
      }
  return std::string(what) + ": truncation orders differ";
}

CheckResult timed(const std::string& name, double budget,
                  const std::function<std::string()>& body) {
  CheckResult res;
  res.name = name;
  res.budget_seconds = budget;
  auto t0 = std::chrono::steady_clock::now();
  try {
    res.detail = body();
    res.pass = res.detail.empty();
  } catch (const std::exception& e) {
    res.pass = false;
    res.detail = e.what();
  }
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (res.pass && budget > 0 && res.seconds > budget) {
    res.pass = false;
    res.detail = "exceeded time budget";
  }
  return res;
}

std::string check_series_expansion() {
  WeierstrassCurve c = WeierstrassCurve::symbolic();
  TSeries z = z_series(c, 7);
  RingPtr ring = z.ring();
  Poly a1 = Poly::variable(ring, "a1"), a2 = Poly::variable(ring, "a2"),
       a3 = Poly::variable(ring, "a3"), x = Poly::variable(ring, "x");
  Poly expected = x.pow(3) - a1 * x.pow(4) + (a1 * a1 + a2) * x.pow(5) -
                  (a1 * a1 * a1 + (a1 * a2).scaled(2) + a3) * x.pow(6);
  return series_mismatch("z(x)", z, TSeries::from_poly(expected, {"x"}, 7));
}

std::string check_group_law() {
  WeierstrassCurve c = WeierstrassCurve::symbolic();
  TSeries f = fgl(c, 4);
  RingPtr ring = f.ring();
  Poly a1 = Poly::variable(ring, "a1"), a2 = Poly::variable(ring, "a2"),
       x0 = Poly::variable(ring, "x0"), x1 = Poly::variable(ring, "x1");
  Poly expected = x0 + x1 + a1 * x0 * x1 - a2 * (x0 * x0 * x1 + x0 * x1 * x1);
  std::string head = series_mismatch("F(x0,x1)", f, TSeries::from_poly(expected, {"x0", "x1"}, 4));
  if (!head.empty()) return head;

  RingPtr ring3 = curve_series_ring({"x0", "x1", "x2"});
  std::vector<std::string> sv3{"x0", "x1", "x2"};
  TSeries f7 = fgl(c, 7);
  TSeries f01 = f7.renamed(ring3, sv3);
  TSeries f12 = f7.renamed(ring3, sv3, {{"x0", "x1"}, {"x1", "x2"}});
  TSeries x0v = TSeries::variable(ring3, sv3, 7, "x0");
  TSeries x2v = TSeries::variable(ring3, sv3, 7, "x2");
  TSeries lhs = f01.substitute({{"x0", f01}, {"x1", x2v}, {"x2", x2v}});
  TSeries rhs = f01.substitute({{"x0", x0v}, {"x1", f12}, {"x2", x2v}});
  return series_mismatch("F(F(x0,x1),x2) - F(x0,F(x1,x2))", lhs, rhs);
}

std::string check_cubical_coefficients() {
  WeierstrassCurve c = WeierstrassCurve::symbolic();
  TSeries r = cubical_structure(c, 5);
  RingPtr ring = r.ring();
  Poly a1 = Poly::variable(ring, "a1"), a2 = Poly::variable(ring, "a2"),
       a3 = Poly::variable(ring, "a3"), a4 = Poly::variable(ring, "a4");
  Poly cubic = -(a1 * a2 - a3.scaled(3));
  Poly quartic = -(a1 * a3 - a2 * a2 + a4.scaled(5));
  std::string d = poly_mismatch("coefficient of x0*x1*x2", r.coefficient({1, 1, 1}), cubic);
  if (!d.empty()) return d;
  for (const std::vector<unsigned>& e :
       {std::vector<unsigned>{2, 1, 1}, std::vector<unsigned>{1, 2, 1}, std::vector<unsigned>{1, 1, 2}}) {
    d = poly_mismatch("quartic coefficient", r.coefficient(e), quartic);
    if (!d.empty()) return d;
  }
  return "";
}

std::string check_cubical_mod2() {
  CancellationReport rep = cancellation_check(4);  // throws on any failed identity
  RingPtr ring = rep.cubical_mod2.ring();
  Poly a3 = Poly::variable(ring, "a3"), x0 = Poly::variable(ring, "x0"),
       x1 = Poly::variable(ring, "x1"), x2 = Poly::variable(ring, "x2");
  Poly mono = a3 * x0 * x1 * x2;
  std::string d = poly_mismatch("common-factor quotient", rep.quotient, mono);
  if (!d.empty()) return d;
  d = poly_mismatch("second-lowest difference", rep.second_difference, mono * rep.lowest_form);
  if (!d.empty()) return d;
  Poly one = Poly::constant(ring, Scalar(1));
  TSeries expected = TSeries::from_poly(one + mono, {"x0", "x1", "x2"}, 4);
  return series_mismatch("reduced series", rep.cubical_mod2, expected);
}

std::string check_cubical_symmetry() {
  WeierstrassCurve c = WeierstrassCurve::symbolic();
  TSeries r = cubical_structure(c, 6);
  RingPtr ring = r.ring();
  std::vector<std::string> sv{"x0", "x1", "x2"};
  const char* names[3] = {"x0", "x1", "x2"};
  int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  for (auto& pi : perms) {
    std::map<std::string, std::string> renames;
    for (int i = 0; i < 3; ++i) renames[names[i]] = names[pi[i]];
    std::string d = series_mismatch("permuted series", r.renamed(ring, sv, renames), r);
    if (!d.empty()) return d;
  }
  TSeries one = TSeries::constant(ring, sv, 6, Scalar(1));
  for (int dropped = 0; dropped < 3; ++dropped) {
    std::map<std::string, TSeries> assign;
    for (int i = 0; i < 3; ++i)
      assign[names[i]] = i == dropped ? TSeries::zero(ring, sv, 6)
                                      : TSeries::variable(ring, sv, 6, names[i]);
    std::string d = series_mismatch("normalization at a zero variable",
                                    r.substitute(assign), one);
    if (!d.empty()) return d;
  }
  return "";
}

std::string check_involution() {
  TwistedComposeReport rep = twisted_compose_check(10);
  TSeries xv = TSeries::variable(rep.twisted.ring(), {"x"}, 10, "x");
  std::string d = series_mismatch("twisted double composite", rep.twisted, xv);
  if (!d.empty()) return d;
  Reduction mod2{2, {}};
  d = series_mismatch("plain double composite mod 2", rep.plain_mod2, xv.reduced(mod2));
  if (!d.empty()) return d;

  TSeries q = q_series(10);
  TSeries qt = q_tau_series(10);
  TSeries g = gamma13_g(10);
  TSeries prod = q * qt.substitute({{"x", g}});
  TSeries one = TSeries::constant(q.ring(), {"x"}, 10, Scalar(1));
  d = series_mismatch("Q(x)*Q^tau(g(x))", prod, one);
  if (!d.empty()) return d;

  WeierstrassCurve c13 = WeierstrassCurve::gamma13();
  d = series_mismatch("g vs [-1] mod 2", gamma13_g(8).reduced(mod2),
                      n_series(c13, -1, 8).reduced(mod2));
  if (!d.empty()) return d;

  TSeries iota = formal_inverse(c13, 8);
  TSeries x8 = TSeries::variable(iota.ring(), {"x"}, 8, "x");
  TSeries cx = x8 * iota;
  d = series_mismatch("x*iota(x) under iota", cx.substitute({{"x", iota}}), cx);
  return d;
}

std::string check_theta() {
  return qx_mismatch("theta expansion", phi_product(10, 6), phi_exp(10, 6));
}

std::string check_genus() {
  QXSeries psi = psi_series(6, 4);
  for (int q = 0; q < 4; ++q) {
    Scalar want = q == 0 ? Scalar(1) : Scalar(0);
    if (!(psi.at(0, q) == want))
      return "psi(0) != 1 at q^" + std::to_string(q) + ": " + psi.at(0, q).to_string();
  }
  QXSeries x = level3_genus_x(6, 4);
  for (int q = 0; q < 4; ++q) {
    if (!(x.at(0, q) == Scalar(0)))
      return "x(z) has a constant term at q^" + std::to_string(q);
    Scalar want = q == 0 ? Scalar(1) : Scalar(0);
    if (!(x.at(1, q) == want))
      return "linear coefficient of x(z) is not 1 at q^" + std::to_string(q) + ": " +
             x.at(1, q).to_string();
  }
  return "";
}

std::string check_fixed_point_window() {
  // d_r(d_r(basis)) = 0 over the whole window is verified inside every page
  // passage; a failure surfaces as InternalMismatch.
  Window w{48, 16, 8};
  e_infinity_chart(w);

  struct Pinned {
    SsqMonomial mono;
    int order;  // torsion exponent; 0 = free
    const char* label;
  };
  const Pinned pinned[] = {
      {{1, 0, 0, 0}, 1, "a"},
      {{0, 8, 0, 0}, 0, "sigma^8"},
      {{0, -8, 0, 0}, 0, "sigma^-8"},
      {{0, 0, 1, 0}, 0, "u1"},
      {{0, 0, 0, 1}, 0, "u2"},
      {{0, -8, 0, 3}, 0, "u2^3*sigma^-8"},
  };
  for (const Pinned& pc : pinned) {
    int t = -1;
    if (!survives_to_e_infinity(pc.mono, w, &t))
      return std::string(pc.label) + " does not survive";
    if (t != pc.order)
      return std::string(pc.label) + " has torsion exponent " + std::to_string(t) +
             ", expected " + std::to_string(pc.order);
  }

  PagePresentation e2 = page_homology(1, w);
  bool found_a = false;
  for (const auto& cell : e2.cells)
    if (cell.deg == Degree{0, 1} && cell.filtration == 1 && cell.sigma_exp == 0) {
      found_a = true;
      if (cell.generators.size() != 1 || cell.generators[0].second != 1)
        return "the class a is not Z/2 on the second page";
    }
  if (!found_a) return "the cell of a is missing from the second page";

  // Filtration-0 integral row against the invariant-monomial count: weight-S
  // products u1^p*u2^m correspond to invariant monomials exactly when p + m
  // is even, i.e. all of them for even S and none for odd S.
  for (long S = 0; S <= 24; ++S) {
    long expected = 0;
    for (long m = 0; 3 * m <= S && m <= w.u2_max; ++m)
      if ((S - 3 * m + m) % 2 == 0) ++expected;
    long rank = 0;
    bool seen = false;
    for (const auto& cell : e2.cells)
      if (cell.deg == Degree{-2 * S, 0} && cell.filtration == 0 && cell.sigma_exp == -S) {
        seen = true;
        if (!cell.determinate) return "filtration-0 cell unexpectedly indeterminate";
        for (const auto& gen : cell.generators)
          if (gen.second != 0) return "filtration-0 generator is not free";
        rank = static_cast<long>(cell.generators.size());
      }
    if (!seen) rank = 0;
    if (rank != expected)
      return "filtration-0 row rank at weight " + std::to_string(S) + " is " +
             std::to_string(rank) + ", expected " + std::to_string(expected);
  }
  return "";
}

}  // namespace

std::vector<CheckResult> run_paper_suite() {
  std::vector<CheckResult> out;
  out.push_back(timed("series-expansion", 1, check_series_expansion));
  out.push_back(timed("group-law-expansion-associativity", 60, check_group_law));
  out.push_back(timed("cubical-low-order-coefficients", 300, check_cubical_coefficients));
  out.push_back(timed("cubical-mod2-cancellation", 0, check_cubical_mod2));
  out.push_back(timed("cubical-symmetry-normalization", 0, check_cubical_symmetry));
  out.push_back(timed("involution-suite", 0, check_involution));
  out.push_back(timed("theta-product-vs-exp", 30, check_theta));
  out.push_back(timed("genus-normalization", 0, check_genus));
  out.push_back(timed("fixed-point-window", 300, check_fixed_point_window));
  return out;
}

bool all_passed(const std::vector<CheckResult>& results) {
  for (const auto& r : results)
    if (!r.pass) return false;
  return true;
}

double total_seconds(const std::vector<CheckResult>& results) {
  double t = 0;
  for (const auto& r : results) t += r.seconds;
  return t;
}

std::string format_report(const std::vector<CheckResult>& results) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(2);
  for (const auto& r : results) {
    os << (r.pass ? "PASS" : "FAIL") << "  " << r.name << "  (" << r.seconds << " s";
    if (r.budget_seconds > 0) os << ", budget " << static_cast<long>(r.budget_seconds) << " s";
    os << ")";
    if (!r.pass) os << "  " << r.detail;
    os << "\n";
  }
  std::size_t passed = 0;
  for (const auto& r : results)
    if (r.pass) ++passed;
  os << (all_passed(results) ? "PASS" : "FAIL") << "  suite total: " << passed << "/"
     << results.size() << " checks, " << total_seconds(results) << " s\n";
  return os.str();
}

}  // namespace cubicalforms
