#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fracbdf/errors.hpp"
#include "fracbdf/cq_weights.hpp"
#include "fracbdf/harness.hpp"
#include "fracbdf/stepper.hpp"

using namespace fracbdf;

TEST_CASE("zero data stays identically zero") {
  const auto sys = assemble(16);
  for (auto regime : {Regime::subdiffusion, Regime::diffusion_wave}) {
    ProblemSpec spec;
    spec.regime = regime;
    spec.alpha = regime == Regime::subdiffusion ? 0.5 : 1.5;
    for (auto scheme : {Scheme::corrected, Scheme::uncorrected, Scheme::l1}) {
      if (scheme == Scheme::l1 && regime == Regime::diffusion_wave) {
        continue;
      }
      RunOptions opt;
      opt.scheme = scheme;
      opt.k = 3;
      opt.steps = 12;
      const auto result = run_solver(sys, spec, opt);
      CHECK(!result.unstable);
      for (double v : result.u_final) {
        CHECK(v == 0.0);
      }
    }
  }
}

TEST_CASE("history convolution matches a from-scratch re-summation") {
  const auto sys = assemble(9);
  ProblemSpec spec;
  spec.regime = Regime::subdiffusion;
  spec.alpha = 0.4;
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> unif(-0.01, 0.01);
  std::vector<double> v_values(static_cast<std::size_t>(sys.interior_nodes()));
  for (auto& x : v_values) {
    x = unif(rng);
  }
  spec.v = [&](double x) {
    const auto i = static_cast<std::size_t>(std::lround(x / sys.h) - 1);
    return v_values[i];
  };
  spec.f = [](double x, double t) { return std::sin(3 * x + t); };
  spec.f_derivs0 = {[](double x) { return std::cos(3 * x); }};

  RunOptions opt;
  opt.scheme = Scheme::corrected;
  opt.k = 3;
  opt.steps = 12;
  SolverRun run(sys, spec, opt);
  while (run.current_step() < opt.steps) {
    run.advance();
  }

  const auto weights = detail::polynomial_power_series<long double>(
      detail::bdf_zeta_coefficients_as<long double>(opt.k),
      static_cast<long double>(spec.alpha),
      static_cast<std::size_t>(opt.steps) + 1);
  for (long n = 1; n <= opt.steps; ++n) {
    const auto got = run.history_convolution(n);
    std::vector<long double> expected(got.size(), 0.0L);
    for (long j = 1; j <= n; ++j) {
      const auto w = run.history(n - j);
      for (std::size_t i = 0; i < expected.size(); ++i) {
        expected[i] += weights[static_cast<std::size_t>(j)] * w[i];
      }
    }
    for (std::size_t i = 0; i < expected.size(); ++i) {
      CHECK(static_cast<double>(got[i]) == static_cast<double>(expected[i]));
    }
  }
}

TEST_CASE("zeroed corrections reproduce the uncorrected scheme exactly") {
  const auto sys = assemble(12);
  ProblemSpec spec = make_case("b", 0.5);
  CorrectionSet zeroed;  // k = 1 shape: no coefficients at all
  zeroed.k = 4;
  zeroed.regime = Regime::subdiffusion;

  RunOptions corrected_opt;
  corrected_opt.scheme = Scheme::corrected;
  corrected_opt.k = 4;
  corrected_opt.steps = 24;
  corrected_opt.corrections = &zeroed;

  RunOptions plain_opt = corrected_opt;
  plain_opt.scheme = Scheme::uncorrected;
  plain_opt.corrections = nullptr;

  SolverRun a(sys, spec, corrected_opt);
  SolverRun b(sys, spec, plain_opt);
  while (a.current_step() < corrected_opt.steps) {
    a.advance();
    b.advance();
    const auto wa = a.history(a.current_step());
    const auto wb = b.history(b.current_step());
    for (std::size_t i = 0; i < wa.size(); ++i) {
      CHECK(wa[i] == wb[i]);
    }
  }
}

TEST_CASE("missing source derivatives are a configuration error") {
  const auto sys = assemble(8);
  ProblemSpec spec;
  spec.regime = Regime::subdiffusion;
  spec.alpha = 0.5;
  spec.f = [](double, double t) { return std::exp(t); };

  RunOptions opt;
  opt.scheme = Scheme::corrected;
  opt.k = 4;
  opt.steps = 8;
  CHECK_THROWS_AS(SolverRun(sys, spec, opt), std::invalid_argument);

  opt.fd_fallback_derivs = true;
  CHECK_NOTHROW(SolverRun(sys, spec, opt));

  // k = 2 never needs them.
  opt.fd_fallback_derivs = false;
  opt.k = 2;
  CHECK_NOTHROW(SolverRun(sys, spec, opt));
}

TEST_CASE("finite-difference stencils") {
  // Exact on polynomials: slope of a line from two points.
  const auto w1 = fd_stencil(1, 1);
  REQUIRE(w1.size() == 2);
  CHECK(w1[0] == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(w1[1] == doctest::Approx(1.0).epsilon(1e-14));

  // A third-order stencil for the first derivative kills cubics.
  const auto w3 = fd_stencil(1, 3);
  REQUIRE(w3.size() == 4);
  for (int m = 0; m <= 3; ++m) {
    double acc = 0;
    for (std::size_t j = 0; j < w3.size(); ++j) {
      acc += w3[j] * std::pow(static_cast<double>(j), m);
    }
    CHECK(acc == doctest::Approx(m == 1 ? 1.0 : 0.0).epsilon(1e-12));
  }

  // cos'(0) = 0 recovered at the stencil's order.
  auto fd_error = [&](double tau, int deriv, int order, auto&& f) {
    const auto w = fd_stencil(deriv, order);
    double acc = 0;
    for (std::size_t j = 0; j < w.size(); ++j) {
      acc += w[j] * f(static_cast<double>(j) * tau);
    }
    return acc / std::pow(tau, deriv);
  };
  const double e1 = std::abs(fd_error(0.02, 1, 4, [](double t) { return std::cos(t); }));
  const double e2 = std::abs(fd_error(0.01, 1, 4, [](double t) { return std::cos(t); }));
  CHECK(std::log2(e1 / e2) >= 3.6);

  // First-order stencil on e^t carries an O(tau) error.
  const double g1 = std::abs(fd_error(0.02, 2, 1, [](double t) { return std::exp(t); }) -
                             1.0);
  const double g2 = std::abs(fd_error(0.01, 2, 1, [](double t) { return std::exp(t); }) -
                             1.0);
  CHECK(std::log2(g1 / g2) == doctest::Approx(1.0).epsilon(0.25));
}

TEST_CASE("diffusion-wave trajectories agree for supplied and quadrature g") {
  const auto sys = assemble(12);
  ProblemSpec with_g = make_case("c", 1.4);
  ProblemSpec without_g = with_g;
  without_g.g = nullptr;

  RunOptions opt;
  opt.scheme = Scheme::corrected;
  opt.k = 3;
  opt.steps = 24;
  const auto a = run_solver(sys, with_g, opt);
  const auto b = run_solver(sys, without_g, opt);
  double max_diff = 0;
  double scale = 0;
  for (std::size_t i = 0; i < a.u_final.size(); ++i) {
    max_diff = std::max(max_diff, std::abs(a.u_final[i] - b.u_final[i]));
    scale = std::max(scale, std::abs(a.u_final[i]));
  }
  CHECK(max_diff <= 1e-13 * std::max(scale, 1.0));
}

TEST_CASE("stability gate refuses an oversized wave step") {
  const auto sys = assemble(100);
  ProblemSpec spec = make_case("c", 1.5);
  RunOptions opt;
  opt.scheme = Scheme::corrected;
  opt.k = 5;
  opt.steps = 1000;  // tau = 1e-3 exceeds the threshold near 5.6e-4
  try {
    SolverRun run(sys, spec, opt);
    FAIL("expected a stability refusal");
  } catch (const StabilityRefused& e) {
    CHECK(e.tau == doctest::Approx(1e-3).epsilon(1e-12));
    CHECK(e.tau_threshold > 5.5e-4);
    CHECK(e.tau_threshold < 5.7e-4);
  }

  opt.override_stability = true;
  CHECK_NOTHROW(SolverRun(sys, spec, opt));
}

TEST_CASE("L1 scheme rejects the wave regime") {
  const auto sys = assemble(8);
  ProblemSpec spec = make_case("c", 1.5);
  RunOptions opt;
  opt.scheme = Scheme::l1;
  opt.steps = 8;
  CHECK_THROWS_AS(SolverRun(sys, spec, opt), std::invalid_argument);
}

TEST_CASE("subdiffusion decay from a positive initial profile") {
  // Coarse sanity run: solution stays positive, decays, and no detector trip.
  const auto sys = assemble(20);
  ProblemSpec spec = make_case("a", 0.5);
  RunOptions opt;
  opt.scheme = Scheme::corrected;
  opt.k = 2;
  opt.steps = 64;
  const auto result = run_solver(sys, spec, opt);
  CHECK(!result.unstable);
  const auto mid = result.u_final[result.u_final.size() / 2];
  CHECK(mid > 0.0);
  CHECK(mid < 0.25);
}
