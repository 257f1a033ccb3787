#include <doctest.h>

#include <algorithm>
#include <random>

#include "cubicalforms/errors.hpp"
#include "cubicalforms/series.hpp"
#include "cubicalforms/textio.hpp"

using namespace cubicalforms;

namespace {

RingPtr ring_ax() { return PolyRing::create({"a", "x", "y"}); }

TSeries random_series(RingPtr ring, const std::vector<std::string>& sv, int order,
                      std::mt19937& rng, bool unit = false) {
  std::uniform_int_distribution<int> nt(1, 8), e(0, order - 1), pe(0, 2);
  std::uniform_int_distribution<long> c(-9, 9);
  Poly p = unit ? Poly::constant(ring, Scalar(1)) : Poly::zero(ring);
  int terms = nt(rng);
  for (int t = 0; t < terms; ++t) {
    std::vector<unsigned> exps(ring->size(), 0);
    bool sv_zero = true;
    for (std::size_t i = 0; i < ring->size(); ++i) {
      bool is_series = std::find(sv.begin(), sv.end(), ring->name(i)) != sv.end();
      exps[i] = static_cast<unsigned>(is_series ? e(rng) : pe(rng));
      if (is_series && exps[i] != 0) sv_zero = false;
    }
    if (unit && sv_zero) exps[ring->index_of(sv.front())] = 1;  // keep the unit head
    p += Poly::monomial(ring, exps, Scalar(c(rng)));
  }
  return TSeries::from_poly(p, sv, order);
}

}  // namespace

TEST_SUITE("series") {

TEST_CASE("construction, order, valuation") {
  RingPtr r = ring_ax();
  TSeries x = TSeries::variable(r, {"x", "y"}, 5, "x");
  CHECK(x.order() == 5);
  CHECK(x.valuation() == 1);
  CHECK(TSeries::zero(r, {"x", "y"}, 5).valuation() == 5);
  CHECK(x.to_string() == "x + O(5)");
  Poly a = Poly::variable(r, "a");
  CHECK(x.mul_poly(a).to_string() == "a*x + O(5)");
  CHECK_THROWS_AS(x.homog(5), BeyondTruncation);
  CHECK(x.homog(3).is_zero());
}

TEST_CASE("truncation order follows the minimum rule") {
  RingPtr r = ring_ax();
  std::mt19937 rng(11);
  TSeries f = random_series(r, {"x", "y"}, 6, rng);
  TSeries g = random_series(r, {"x", "y"}, 4, rng);
  CHECK((f + g).order() == 4);
  CHECK((f * g).order() == 4);
  CHECK(f.truncated(3).order() == 3);
}

TEST_CASE("geometric series inverse") {
  RingPtr r = ring_ax();
  TSeries one = TSeries::constant(r, {"x", "y"}, 8, Scalar(1));
  TSeries x = TSeries::variable(r, {"x", "y"}, 8, "x");
  TSeries inv = (one - x).invert_unit();
  // oracle: all coefficients of 1/(1-x) are 1
  for (unsigned n = 0; n < 8; ++n) {
    std::vector<unsigned> exps{n, 0};
    CHECK(inv.coefficient(exps) == Poly::constant(r, Scalar(1)));
  }
  CHECK_THROWS_AS(x.invert_unit(), NonUnitConstantTerm);
}

TEST_CASE("invert_unit multiplies back to one") {
  RingPtr r = ring_ax();
  std::mt19937 rng(12);
  for (int i = 0; i < 25; ++i) {
    TSeries u = random_series(r, {"x", "y"}, 6, rng, true);
    TSeries one = TSeries::constant(r, {"x", "y"}, 6, Scalar(1));
    CHECK(u * u.invert_unit() == one);
  }
}

TEST_CASE("graded division multiplies back") {
  RingPtr r = ring_ax();
  std::mt19937 rng(13);
  TSeries x = TSeries::variable(r, {"x", "y"}, 7, "x");
  for (int i = 0; i < 25; ++i) {
    TSeries q = random_series(r, {"x", "y"}, 7, rng);
    TSeries den = (x * x).scaled(Scalar(3)) + x * x * x;
    TSeries num = q * den;
    TSeries back = graded_divide(num, den);
    CHECK(back.order() == 5);  // min(order) - valuation(den)
    CHECK(back == q.truncated(back.order()));
  }
  TSeries y = TSeries::variable(r, {"x", "y"}, 7, "y");
  CHECK_THROWS_AS(graded_divide(y, x + x * x), NotDivisible);
}

TEST_CASE("substitution is associative") {
  RingPtr r = ring_ax();
  std::vector<std::string> sv{"x", "y"};
  std::mt19937 rng(14);
  TSeries x = TSeries::variable(r, sv, 5, "x"), y = TSeries::variable(r, sv, 5, "y");
  for (int i = 0; i < 10; ++i) {
    TSeries f = random_series(r, sv, 5, rng);
    // g, h: positive valuation substitutions
    TSeries g = x * x + y, h = y + x.scaled(Scalar(2)) * y;
    std::map<std::string, TSeries> first{{"x", g}, {"y", y}};
    std::map<std::string, TSeries> second{{"x", x}, {"y", h}};
    TSeries lhs = f.substitute(first).substitute(second);
    std::map<std::string, TSeries> combined{{"x", g.substitute(second)}, {"y", h}};
    TSeries rhs = f.substitute(combined);
    CHECK(lhs == rhs);
  }
  CHECK_THROWS_AS(x.substitute({{"x", TSeries::constant(r, sv, 5, Scalar(1))}, {"y", y}}),
                  NonPositiveValuation);
}

TEST_CASE("renames keep unused variables lenient") {
  RingPtr src = PolyRing::create({"a", "b", "x"});
  RingPtr dst = PolyRing::create({"a", "t"});
  TSeries s = TSeries::variable(src, {"x"}, 4, "x").mul_poly(Poly::variable(src, "a"));
  TSeries t = s.renamed(dst, {"t"}, {{"x", "t"}});
  CHECK(t.to_string() == "a*t + O(4)");
  // a used variable with no target slot throws
  TSeries bad = TSeries::variable(src, {"x"}, 4, "x").mul_poly(Poly::variable(src, "b"));
  CHECK_THROWS_AS(bad.renamed(dst, {"t"}, {{"x", "t"}}), UnknownVariable);
}

TEST_CASE("divided differences recover termwise quotients") {
  RingPtr uni = PolyRing::create({"a", "x"});
  RingPtr two = PolyRing::create({"a", "u", "v"});
  Poly a = Poly::variable(uni, "a"), x = Poly::variable(uni, "x");
  TSeries f = TSeries::from_poly(x * x * x.scaled(Scalar(2)) + (a * x * x), {"x"}, 6);
  TSeries l = divided_difference(f, two, "u", "v");
  // oracle: (f(v)-f(u))/(v-u) termwise: x^n -> sum u^i v^{n-1-i}
  RingPtr r2 = two;
  Poly u = Poly::variable(r2, "u"), v = Poly::variable(r2, "v"), a2 = Poly::variable(r2, "a");
  Poly expect = (u * u + u * v + v * v).scaled(Scalar(2)) + a2 * (u + v);
  CHECK(l == TSeries::from_poly(expect, {"u", "v"}, l.order()));
}

TEST_CASE("reduce commutes with multiplication") {
  RingPtr r = ring_ax();
  std::mt19937 rng(15);
  Reduction red{2, {"a"}};
  for (int i = 0; i < 25; ++i) {
    TSeries f = random_series(r, {"x", "y"}, 5, rng);
    TSeries g = random_series(r, {"x", "y"}, 5, rng);
    CHECK((f * g).reduced(red) == (f.reduced(red) * g.reduced(red)).reduced(red));
    CHECK(f.mul(g, &red) == (f * g).reduced(red));
  }
}

TEST_CASE("text and JSON round-trips") {
  RingPtr r = ring_ax();
  std::mt19937 rng(16);
  for (int i = 0; i < 25; ++i) {
    TSeries f = random_series(r, {"x", "y"}, 5, rng);
    CHECK(parse_series(r, {"x", "y"}, f.to_string()) == f);
    CHECK(series_from_json(r, series_to_json(f)) == f);
  }
  CHECK_THROWS_AS(parse_series(r, {"x"}, "x + x^2"), TextParseError);  // missing O(N)
}

}  // TEST_SUITE
