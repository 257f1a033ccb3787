#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "cubicalforms/errors.hpp"
#include "cubicalforms/ssq.hpp"

using namespace cubicalforms;

namespace {

PageElement mono(long j, long k, long p, long m, long c = 1) {
  return PageElement::monomial({j, k, p, m}, Scalar(c));
}

}  // namespace

TEST_SUITE("ssq") {

TEST_CASE("degrees and filtration") {
  CHECK(degree_of({1, 0, 0, 0}) == Degree{0, 1});   // a
  CHECK(degree_of({0, 1, 0, 0}) == Degree{1, -1});  // sigma
  CHECK(degree_of({0, 0, 1, 0}) == Degree{-1, -1}); // u1
  CHECK(degree_of({0, 0, 0, 1}) == Degree{-3, -3}); // u2
  CHECK(degree_of({0, -8, 0, 3}) == Degree{-17, -1});
  CHECK(filtration_of({5, -3, 2, 1}) == 5);
}

TEST_CASE("element text round-trips") {
  std::vector<std::string> cases{
      "a",
      "sigma^-8",
      "u1",
      "u2^3*sigma^-8",
      "2*a^3*sigma^2*u1",
      "a + 2*sigma",
      "0",
      "3/5*u2",
  };
  for (const auto& s : cases) {
    PageElement e = PageElement::parse(s);
    CHECK(PageElement::parse(e.to_string()) == e);
  }
  CHECK(PageElement::parse("u2^3*sigma^-8").to_string() == "sigma^-8*u2^3");
  CHECK_THROWS_AS(PageElement::parse("a^-1"), MalformedElement);
  CHECK_THROWS_AS(PageElement::parse("(1/2)*a"), MalformedElement);
  CHECK_THROWS_AS(PageElement::parse("b^2"), MalformedElement);
}

TEST_CASE("differential residue classes") {
  // d1 on odd sigma exponents
  CHECK(d_r(1, mono(0, 1, 0, 0)) == mono(1, 2, 0, 0, 2));
  CHECK(d_r(1, mono(0, 2, 0, 0)).is_zero());
  CHECK(d_r(1, mono(2, -3, 1, 0)) == mono(3, -2, 1, 0, 2));
  // d3 on sigma^k, k = 2 mod 4
  CHECK(d_r(3, mono(0, 2, 0, 0)) == mono(3, 4, 1, 0));
  CHECK(d_r(3, mono(0, 4, 0, 0)).is_zero());
  CHECK(d_r(3, mono(0, -6, 0, 0)) == mono(3, -4, 1, 0));
  // d7 on sigma^k, k = 4 mod 8
  CHECK(d_r(7, mono(0, 4, 0, 0)) == mono(7, 8, 0, 1));
  CHECK(d_r(7, mono(0, 8, 0, 0)).is_zero());
  CHECK(d_r(7, mono(0, -4, 0, 0)) == mono(7, 0, 0, 1));
  // no other pages carry differentials
  for (int r : {2, 4, 5, 6, 8})
    CHECK(d_r(r, mono(0, 1, 0, 0) + mono(0, 2, 0, 0) + mono(0, 4, 0, 0)).is_zero());
}

TEST_CASE("differentials square to zero and obey the sign rule") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> kd(-12, 12), jd(0, 3), pd(0, 2), md(0, 2);
  for (int i = 0; i < 200; ++i) {
    PageElement x = mono(jd(rng), kd(rng), pd(rng), md(rng));
    for (int r : {1, 3, 7}) CHECK(d_r(r, d_r(r, x)).is_zero());
  }
  // d(xy) = d(x) y + (-1)^{deg} x d(y), with the sign read off the sigma
  // exponent modulo the period of the residue class
  for (int i = 0; i < 200; ++i) {
    long k1 = kd(rng), k2 = kd(rng);
    PageElement x = mono(jd(rng), k1, pd(rng), md(rng));
    PageElement y = mono(jd(rng), k2, pd(rng), md(rng));
    PageElement lhs = d_r(1, x * y);
    PageElement rhs = d_r(1, x) * y + (x * d_r(1, y)).scaled(Scalar(k1 % 2 ? -1 : 1));
    CHECK(lhs == rhs);
    if (k1 % 2 == 0 && k2 % 2 == 0) {
      PageElement l3 = d_r(3, x * y);
      PageElement r3 =
          d_r(3, x) * y + (x * d_r(3, y)).scaled(Scalar((k1 / 2) % 2 ? -1 : 1));
      CHECK(l3 == r3);
      if (k1 % 4 == 0 && k2 % 4 == 0) {
        PageElement l7 = d_r(7, x * y);
        PageElement r7 =
            d_r(7, x) * y + (x * d_r(7, y)).scaled(Scalar((k1 / 4) % 2 ? -1 : 1));
        CHECK(l7 == r7);
      }
    }
  }
}

TEST_CASE("page numbers follow the collapse pattern") {
  Window w{8, 4, 2};
  CHECK(page_homology(1, w).page == 2);
  CHECK(page_homology(3, w).page == 4);
  CHECK(page_homology(7, w).page == 8);
  CHECK(e_infinity_chart(w).page == 8);
}

TEST_CASE("pinned survivors in the acceptance window") {
  Window w{48, 16, 8};
  int t = -1;
  CHECK(survives_to_e_infinity({1, 0, 0, 0}, w, &t));  // a
  CHECK(t == 1);
  for (SsqMonomial s : {SsqMonomial{0, 8, 0, 0}, SsqMonomial{0, -8, 0, 0},
                        SsqMonomial{0, 0, 1, 0}, SsqMonomial{0, 0, 0, 1},
                        SsqMonomial{0, -8, 0, 3}}) {
    t = -1;
    CHECK(survives_to_e_infinity(s, w, &t));
    CHECK(t == 0);
  }
  for (SsqMonomial s : {SsqMonomial{0, 1, 0, 0}, SsqMonomial{0, -1, 0, 0},
                        SsqMonomial{0, -2, 0, 0}, SsqMonomial{0, -4, 0, 0},
                        SsqMonomial{1, 1, 0, 0}}) {
    CHECK_FALSE(survives_to_e_infinity(s, w));
  }
}

TEST_CASE("window too small to decide") {
  Window tiny{2, 1, 1};
  CHECK_THROWS_AS(survives_to_e_infinity({0, 0, 0, 1}, tiny), WindowTooSmall);
}

TEST_CASE("second page of the vertical tower") {
  // the a-tower at sigma^0: a survives d1 with order 2
  PagePresentation p2 = page_homology(1, Window{8, 4, 2});
  bool found = false;
  for (const auto& c : p2.cells) {
    if (c.deg == Degree{0, 1} && c.filtration == 1) {
      found = true;
      REQUIRE(c.generators.size() == 1);
      CHECK(c.generators[0].second == 1);
      CHECK(c.generators[0].first == PageElement::parse("a"));
    }
  }
  CHECK(found);
}

TEST_CASE("chart renderings") {
  PagePresentation chart = e_infinity_chart(Window{6, 3, 1});
  std::string text = chart_text(chart);
  CHECK(text.find("sigma^") != std::string::npos);
  std::string ascii = chart_ascii(chart);
  CHECK(ascii.find("filt") != std::string::npos);
  std::string json = chart_json(chart);
  CHECK(json.find("\"page\": 8") != std::string::npos);
  CHECK(json.find("\"cells\"") != std::string::npos);
}

}  // TEST_SUITE
