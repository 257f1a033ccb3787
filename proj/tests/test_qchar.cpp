#include <doctest.h>

#include <map>

#include "cubicalforms/errors.hpp"
#include "cubicalforms/qchar.hpp"

using namespace cubicalforms;

namespace {

mpz_class sigma_oracle(int e, int n) {
  mpz_class s = 0;
  for (int d = 1; d <= n; ++d) {
    if (n % d) continue;
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(e));
    s += p;
  }
  return s;
}

}  // namespace

TEST_SUITE("qchar") {

TEST_CASE("Bernoulli numbers") {
  std::map<int, std::string> table{{0, "1"},     {1, "-1/2"},     {2, "1/6"},
                                   {4, "-1/30"}, {6, "1/42"},     {8, "-1/30"},
                                   {10, "5/66"}, {12, "-691/2730"}};
  for (const auto& [n, s] : table) CHECK(bernoulli(n).to_string() == s);
  for (int n : {3, 5, 7, 9, 11}) CHECK(bernoulli(n).is_zero());
}

TEST_CASE("divisor power sums") {
  for (int e : {1, 3, 5})
    for (int n = 1; n <= 24; ++n) CHECK(divisor_power_sum(e, n) == sigma_oracle(e, n));
}

TEST_CASE("Eisenstein grids") {
  QXSeries g2 = eisenstein_G(2, 4);
  CHECK(g2.at(0, 0).to_string() == "-1/24");
  CHECK(g2.at(0, 1) == Scalar(1));
  CHECK(g2.at(0, 2) == Scalar(3));
  CHECK(g2.at(0, 3) == Scalar(4));
  QXSeries g4 = eisenstein_G(4, 3);
  CHECK(g4.at(0, 0).to_string() == "1/240");
  CHECK(g4.at(0, 2) == Scalar(9));
  CHECK_THROWS_AS(g2.at(1, 4), BeyondTruncation);
}

TEST_CASE("grid arithmetic") {
  QXSeries a(ScalarKind::Rational, 3, 2);
  a.set(0, 0, Scalar(1));
  a.set(1, 0, Scalar(2));
  a.set(0, 1, Scalar(-1));
  QXSeries b = a * a.inverted();
  CHECK(b.at(0, 0) == Scalar(1));
  CHECK(b.at(1, 0).is_zero());
  CHECK(b.at(0, 1).is_zero());
  QXSeries x(ScalarKind::Rational, 3, 2);
  x.set(1, 0, Scalar(1));
  CHECK_THROWS_AS(x.inverted(), NonUnitConstantTerm);
  CHECK(x.negated_x().at(1, 0) == Scalar(-1));
  CHECK((a - a).is_zero());
}

TEST_CASE("theta series: product and exponential forms agree") {
  CHECK(phi_product(8, 4) == phi_exp(8, 4));
}

TEST_CASE("theta series is odd") {
  QXSeries p = phi_product(7, 4);
  CHECK(p.negated_x() == p.scaled(Scalar(-1)));
  for (int xd = 0; xd < 7; xd += 2)
    for (int qd = 0; qd < 4; ++qd) CHECK(p.at(xd, qd).is_zero());
}

TEST_CASE("shifted theta value at the special point") {
  QXSeries pm = phi_product(4, 3, PhiShift::MinusOmega);
  CHECK(pm.field() == ScalarKind::Eisenstein);
  CHECK(pm.at(0, 0).to_string() == "(-1-2*zeta)");
  CHECK(pm.at(1, 1).to_string() == "9/2");
}

TEST_CASE("normalized quotient equals one at zero") {
  QXSeries psi = psi_series(4, 3);
  CHECK(psi.at(0, 0) == Scalar(1));
  CHECK(psi.at(0, 1).is_zero());
  CHECK(psi.at(0, 2).is_zero());
}

TEST_CASE("genus coordinate, pinned expansion") {
  QXSeries x = level3_genus_x(5, 3);
  CHECK(x.at(0, 0).is_zero());
  CHECK(x.at(1, 0) == Scalar(1));
  CHECK(x.to_tseries("z").to_string() ==
        "z + (-1-2*zeta)*q*z^2 + (-1/6-1/3*zeta)*z^2 - 6*q^2*z^3 - 2*q*z^3 - 1/6*z^3 + "
        "(3+6*zeta)*q^2*z^4 + (1/4+1/2*zeta)*q*z^4 + (1/24+1/12*zeta)*z^4 + O(5)");
}

TEST_CASE("character product, pinned expansions") {
  TSeries none = character_product(0, 3, 2);
  CHECK(none == TSeries::constant(none.ring(), none.series_vars(), 3, Scalar(1)));
  CHECK(character_product(1, 3, 3).to_string() ==
        "1 + (1+2*zeta)*q*x1 + (1/6+1/3*zeta)*x1 + 1/8*x1^2 + O(3)");
}

TEST_CASE("character product over two roots restricts to one root") {
  TSeries two = character_product(2, 3, 3);
  RingPtr r2 = two.ring();
  TSeries x1 = TSeries::variable(r2, two.series_vars(), 3, "x1");
  TSeries zero = TSeries::zero(r2, two.series_vars(), 3);
  TSeries collapsed = two.substitute({{"x1", x1}, {"x2", zero}});
  TSeries one_root =
      character_product(1, 3, 3).renamed(r2, two.series_vars(), {{"x1", "x1"}});
  CHECK(collapsed == one_root);
}

}  // TEST_SUITE
