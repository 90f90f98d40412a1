#include <doctest.h>

#include "fracbdf/series.hpp"

using namespace fracbdf;

namespace {

Rational q(const std::string& s) { return rational_from_string(s); }

LaurentSeries poly(std::vector<std::string> coeffs, int low = 0) {
  std::vector<Rational> c;
  c.reserve(coeffs.size());
  for (const auto& s : coeffs) {
    c.push_back(q(s));
  }
  return LaurentSeries::from_coefficients(low, std::move(c));
}

}  // namespace

TEST_CASE("rational string round trip") {
  CHECK(to_fraction_string(q("31/24")) == "31/24");
  CHECK(to_fraction_string(q("-5/12")) == "-5/12");
  CHECK(to_fraction_string(q("4/2")) == "2");
  CHECK(to_fraction_string(Rational(0)) == "0");
  CHECK(q("6/8") == Rational(3, 4));
  CHECK_THROWS_AS(rational_from_string("1/0"), std::domain_error);
}

TEST_CASE("bdf generating polynomial") {
  CHECK(bdf_generating_poly(1) == LaurentSeries::monomial(Rational(1), 1));
  CHECK(bdf_generating_poly(2) == poly({"1", "1/2"}, 1));
  CHECK(bdf_generating_poly(6) ==
        poly({"1", "1/2", "1/3", "1/4", "1/5", "1/6"}, 1));
  CHECK_THROWS_AS(bdf_generating_poly(0), std::invalid_argument);
  CHECK_THROWS_AS(bdf_generating_poly(7), std::invalid_argument);
}

TEST_CASE("multiplication") {
  const auto s = LaurentSeries::monomial(Rational(1), 1);
  const auto inv_s = LaurentSeries::monomial(Rational(1), -1);
  CHECK(s * inv_s == LaurentSeries::constant(Rational(1)));

  const auto d2 = poly({"1", "1/2"}, 1);  // s + s^2/2
  CHECK(d2 * d2 == poly({"1", "1", "1/4"}, 2));

  const LaurentSeries zero;
  CHECK((zero * d2).is_zero());
  CHECK((zero * d2).is_exact());
}

TEST_CASE("inversion") {
  const auto s = LaurentSeries::monomial(Rational(1), 1);
  CHECK(invert(s, 4).coeff(-1) == 1);
  CHECK(invert(s, 4).coeff(0) == 0);

  const auto geo = invert(poly({"1", "1"}), 3);  // 1/(1+s)
  CHECK(geo == LaurentSeries::from_coefficients(
                   0, {Rational(1), Rational(-1), Rational(1), Rational(-1)}, 3));

  // Multiplying back yields exactly 1 within the validity window.
  const auto d2 = poly({"1", "1/2"}, 1);
  const auto inv = invert(d2, 5);
  const auto prod = d2 * inv;
  CHECK(prod.coeff(0) == 1);
  for (int e = 1; e <= prod.truncation_order(); ++e) {
    CHECK(prod.coeff(e) == 0);
  }
  CHECK(prod.truncation_order() >= 5);

  CHECK_THROWS_AS(invert(LaurentSeries(), 3), std::domain_error);
}

TEST_CASE("truncation bookkeeping fails loudly") {
  const auto trunc = LaurentSeries::from_coefficients(0, {Rational(1), Rational(1)}, 1);
  CHECK_THROWS_AS(trunc.coeff(2), std::logic_error);

  const auto inv_s = LaurentSeries::monomial(Rational(1), -1);
  const auto prod = trunc * inv_s;  // known only through s^0
  CHECK(prod.truncation_order() == 0);
  CHECK(prod.coeff(-1) == 1);
  CHECK_THROWS_AS(prod.coeff(1), std::logic_error);

  // Inverting a truncated series cannot see past its window.
  CHECK_THROWS_AS(invert(trunc, 2), std::logic_error);
}

TEST_CASE("zeta re-expansion") {
  const auto s = LaurentSeries::monomial(Rational(1), 1);
  CHECK(to_zeta_coeffs(s) == std::vector<Rational>{Rational(1), Rational(-1)});
  CHECK(to_zeta_coeffs(LaurentSeries::constant(Rational(1))) ==
        std::vector<Rational>{Rational(1)});
  CHECK(to_zeta_coeffs(pow(s, 2)) ==
        std::vector<Rational>{Rational(1), Rational(-2), Rational(1)});

  CHECK_THROWS_AS(to_zeta_coeffs(LaurentSeries::monomial(Rational(1), -1)),
                  std::domain_error);
  CHECK_THROWS_AS(
      to_zeta_coeffs(LaurentSeries::from_coefficients(0, {Rational(1)}, 3)),
      std::domain_error);
}

TEST_CASE("zeta re-expansion is an involution") {
  const auto p = poly({"3/7", "-2", "0", "5/3", "1/720"});
  const auto zc = to_zeta_coeffs(p);
  CHECK(from_zeta_coeffs(zc) == p);

  // And in the other direction.
  std::vector<Rational> coeffs = {q("-1/3"), q("4"), q("9/8"), q("0"), q("-7/5")};
  const auto back = to_zeta_coeffs(from_zeta_coeffs(coeffs));
  REQUIRE(back.size() == coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    CHECK(back[i] == coeffs[i]);
  }
}

TEST_CASE("power sum series") {
  CHECK(power_sum_series(0) == LaurentSeries::monomial(Rational(1), -1));
  CHECK(power_sum_series(1) ==
        LaurentSeries::from_coefficients(-2, {Rational(1), Rational(-1)}));
  CHECK(power_sum_series(2) ==
        LaurentSeries::from_coefficients(-3,
                                         {Rational(2), Rational(-3), Rational(1)}));
}

TEST_CASE("power sum pole order and leading coefficient") {
  Rational factorial(1);
  for (int ell = 0; ell <= 8; ++ell) {
    if (ell > 0) {
      factorial *= ell;
    }
    const auto g = power_sum_series(ell);
    CHECK(g.lowest_exponent() == -(ell + 1));
    CHECK(g.coeff(-(ell + 1)) == factorial);
  }
}

TEST_CASE("leading singularities cancel against the BDF inverse powers") {
  for (int k = 3; k <= 6; ++k) {
    const auto delta = bdf_generating_poly(k);
    Rational factorial(1);
    for (int ell = 1; ell <= k - 2; ++ell) {
      factorial *= ell;
      const auto diff = Rational(1) / factorial * power_sum_series(ell) -
                        invert(pow(delta, ell + 1), k + 2);
      CHECK(diff.lowest_exponent() >= 0);
    }
  }
}

TEST_CASE("derivative") {
  const auto g = LaurentSeries::from_coefficients(-2, {Rational(1), Rational(-1)});
  CHECK(derivative(g) ==
        LaurentSeries::from_coefficients(-3, {Rational(-2), Rational(1)}));
  CHECK(derivative(LaurentSeries::constant(Rational(5))).is_zero());
}
