#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "fracbdf/fem1d.hpp"
#include "fracbdf/stability.hpp"

using namespace fracbdf;

TEST_CASE("critical orders") {
  CHECK(alpha_star(2) == doctest::Approx(2.0).epsilon(1e-14));
  // The published two-decimal values truncate the exact ratios.
  CHECK(std::floor(alpha_star(3) * 100) / 100 == doctest::Approx(1.91));
  CHECK(std::floor(alpha_star(4) * 100) / 100 == doctest::Approx(1.68));
  CHECK(std::floor(alpha_star(5) * 100) / 100 == doctest::Approx(1.40));
  CHECK(std::floor(alpha_star(6) * 100) / 100 == doctest::Approx(1.11));
  CHECK_THROWS_AS(alpha_star(1), std::invalid_argument);
  CHECK_THROWS_AS(alpha_star(7), std::invalid_argument);
}

TEST_CASE("no intersection below the critical order") {
  CHECK(!cfl_constant(1.39, 5).has_value());
  CHECK(!cfl_constant(1.25, 3).has_value());
  CHECK(!cfl_constant(1.10, 6).has_value());
}

TEST_CASE("known CFL value") {
  const auto c = cfl_constant(1.5, 5);
  REQUIRE(c.has_value());
  CHECK(*c == doctest::Approx(1.58).epsilon(0.01));
}

TEST_CASE("grid refinement stability of the CFL constant") {
  for (auto [alpha, k] : {std::pair{1.5, 5}, {1.95, 3}, {1.75, 4}, {1.6, 6}}) {
    const auto coarse = cfl_constant(alpha, k, 10000);
    const auto fine = cfl_constant(alpha, k, 20000);
    REQUIRE(coarse.has_value());
    REQUIRE(fine.has_value());
    CHECK(std::abs(*coarse - *fine) < 1e-8);
  }
}

TEST_CASE("qualitative shape of the CFL curves") {
  // BDF6 keeps a usable step bound all the way to alpha near 2.
  const auto c6 = cfl_constant(1.99, 6);
  REQUIRE(c6.has_value());
  CHECK(*c6 >= 0.01);

  // Somewhere BDF4 tolerates larger steps than BDF3.
  bool found = false;
  for (double alpha : {1.92, 1.94, 1.96, 1.98}) {
    const auto c3 = cfl_constant(alpha, 3);
    const auto c4 = cfl_constant(alpha, 4);
    if (c3 && c4 && *c4 > *c3) {
      found = true;
    }
  }
  CHECK(found);
}

TEST_CASE("threshold step size") {
  const auto sys = assemble(100);
  const double rA = numerical_radius(sys);
  const auto tau0 = tau_threshold(1.5, 5, rA);
  REQUIRE(tau0.has_value());
  CHECK(*tau0 > 5.5e-4);
  CHECK(*tau0 < 5.7e-4);

  CHECK(!tau_threshold(1.25, 3, rA).has_value());  // unconditional

  // Scaling law: doubling r(A) scales the threshold by 2^{-1/alpha}.
  const auto tau_half = tau_threshold(1.5, 5, 2.0 * rA);
  REQUIRE(tau_half.has_value());
  CHECK(*tau_half == doctest::Approx(*tau0 * std::pow(2.0, -1.0 / 1.5))
                         .epsilon(1e-12));

  // A tiny operator radius leaves practically any step stable.
  const auto tau_large = tau_threshold(1.5, 5, 1e-9);
  REQUIRE(tau_large.has_value());
  CHECK(*tau_large > 1e5);
}

TEST_CASE("full condition") {
  // Unconditional range, any step.
  CHECK(check_condition(1.25, 3, 0.5, 1.2e5).first);

  const auto sys = assemble(100);
  const double rA = numerical_radius(sys);
  // The two step sizes bracketing the threshold for alpha=1.5, k=5.
  CHECK(!check_condition(1.5, 5, 1.0 / 1700, rA).first);
  CHECK(check_condition(1.5, 5, 1.0 / 1800, rA).first);

  const auto report = check_condition(1.5, 5, 1.0 / 1800, rA).second;
  CHECK(!report.unconditional);
  REQUIRE(report.cfl_constant.has_value());
  REQUIRE(report.tau_threshold.has_value());
}
