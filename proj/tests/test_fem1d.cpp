#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>

#include "fracbdf/fem1d.hpp"

using namespace fracbdf;

namespace {

Eigen::MatrixXd dense_mass(const SpatialSystem& sys) {
  const int n = sys.interior_nodes();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    m(i, i) = sys.mass_diag[static_cast<std::size_t>(i)];
    if (i + 1 < n) {
      m(i, i + 1) = m(i + 1, i) = sys.mass_off[static_cast<std::size_t>(i)];
    }
  }
  return m;
}

Eigen::MatrixXd dense_stiffness(const SpatialSystem& sys) {
  const int n = sys.interior_nodes();
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    s(i, i) = sys.stiff_diag[static_cast<std::size_t>(i)];
    if (i + 1 < n) {
      s(i, i + 1) = s(i + 1, i) = sys.stiff_off[static_cast<std::size_t>(i)];
    }
  }
  return s;
}

}  // namespace

TEST_CASE("assembly") {
  CHECK_THROWS_AS(assemble(1), std::invalid_argument);

  const auto sys2 = assemble(2);
  CHECK(sys2.h == 0.5);
  REQUIRE(sys2.interior_nodes() == 1);
  CHECK(sys2.mass_diag[0] == doctest::Approx(1.0 / 3).epsilon(1e-16));
  CHECK(sys2.stiff_diag[0] == doctest::Approx(4.0).epsilon(1e-16));

  const auto sys4 = assemble(4);
  for (double d : sys4.stiff_diag) {
    CHECK(d == doctest::Approx(8.0).epsilon(1e-16));
  }
  for (double o : sys4.stiff_off) {
    CHECK(o == doctest::Approx(-4.0).epsilon(1e-16));
  }

  const auto sys10 = assemble(10);
  // Interior mass row sums equal h; interior stiffness rows sum to zero.
  for (int i = 1; i + 1 < sys10.interior_nodes(); ++i) {
    const double mass_sum = sys10.mass_off[static_cast<std::size_t>(i - 1)] +
                            sys10.mass_diag[static_cast<std::size_t>(i)] +
                            sys10.mass_off[static_cast<std::size_t>(i)];
    CHECK(mass_sum == doctest::Approx(sys10.h).epsilon(1e-14));
    const double stiff_sum = sys10.stiff_off[static_cast<std::size_t>(i - 1)] +
                             sys10.stiff_diag[static_cast<std::size_t>(i)] +
                             sys10.stiff_off[static_cast<std::size_t>(i)];
    CHECK(std::abs(stiff_sum) <= 1e-14 / sys10.h);
  }
}

TEST_CASE("closed-form eigenvalues match the dense solver") {
  for (int m : {2, 3, 5, 8, 13, 16}) {
    const auto sys = assemble(m);
    const auto lambda = eigenvalues(sys);
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> dense(
        dense_stiffness(sys), dense_mass(sys));
    REQUIRE(dense.info() == Eigen::Success);
    // Dense eigenvalues of S x = lambda M x are the magnitudes, ascending.
    std::vector<double> reference(dense.eigenvalues().data(),
                                  dense.eigenvalues().data() + m - 1);
    REQUIRE(lambda.size() == reference.size());
    for (std::size_t j = 0; j < lambda.size(); ++j) {
      CHECK(lambda[j] < 0);
      CHECK(std::abs(-lambda[j] - reference[j]) <=
            1e-10 * std::abs(reference[j]));
    }
  }
}

TEST_CASE("single interior node eigenvalue") {
  // M = 2: stiffness [4], mass [1/3] gives the generalized eigenvalue 12.
  const auto sys = assemble(2);
  const auto lambda = eigenvalues(sys);
  REQUIRE(lambda.size() == 1);
  CHECK(lambda[0] == doctest::Approx(-12.0).epsilon(1e-14));
  CHECK(numerical_radius(sys) == doctest::Approx(12.0).epsilon(1e-14));
}

TEST_CASE("eigenvalues are negative and increasing in magnitude") {
  const auto lambda = eigenvalues(assemble(40));
  for (std::size_t j = 0; j + 1 < lambda.size(); ++j) {
    CHECK(lambda[j] < 0);
    CHECK(std::abs(lambda[j + 1]) > std::abs(lambda[j]));
  }
}

TEST_CASE("numerical radius scale") {
  const auto sys = assemble(100);
  const double r = numerical_radius(sys);
  CHECK(r > 1.1e5);
  CHECK(r < 1.3e5);

  // r(A) h^2 approaches 12 under refinement.
  const auto fine = assemble(1000);
  CHECK(numerical_radius(fine) * fine.h * fine.h ==
        doctest::Approx(12.0).epsilon(1e-3));
}

TEST_CASE("shifted solve") {
  const auto sys = assemble(8);
  const int n = sys.interior_nodes();

  std::vector<double> zero(static_cast<std::size_t>(n), 0.0);
  const auto u0 = solve_shifted(sys, 3.0, zero);
  for (double v : u0) {
    CHECK(v == 0.0);
  }

  // Against a dense LU factorization.
  std::mt19937 rng(1234);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Eigen::VectorXd rhs(n);
  for (int i = 0; i < n; ++i) {
    rhs(i) = unif(rng);
  }
  const double sigma = 7.5;
  const Eigen::MatrixXd a = sigma * dense_mass(sys) + dense_stiffness(sys);
  const Eigen::VectorXd expected = a.fullPivLu().solve(rhs);
  const auto got = solve_shifted(
      sys, sigma, std::span<const double>(rhs.data(), static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i) {
    CHECK(std::abs(got[static_cast<std::size_t>(i)] - expected(i)) <= 1e-13);
  }

  CHECK_THROWS_AS(solve_shifted(sys, 0.0, zero), std::invalid_argument);
}

TEST_CASE("shifted solve residual on a manufactured solution") {
  const auto sys = assemble(64);
  const int n = sys.interior_nodes();
  std::vector<double> u_true(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    u_true[static_cast<std::size_t>(i)] = std::sin(3.0 * sys.node(i)) + 0.25;
  }
  const double sigma = 42.0;
  std::vector<double> mu(u_true.size()), su(u_true.size()), rhs(u_true.size());
  apply_mass(sys, u_true, mu);
  apply_stiffness(sys, u_true, su);
  for (std::size_t i = 0; i < rhs.size(); ++i) {
    rhs[i] = sigma * mu[i] + su[i];
  }
  const auto u = solve_shifted(sys, sigma, rhs);
  double num = 0, den = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    num = std::max(num, std::abs(u[i] - u_true[i]));
    den = std::max(den, std::abs(u_true[i]));
  }
  CHECK(num / den <= 1e-12);
}

TEST_CASE("mass-dominated limit of the shifted solve") {
  const auto sys = assemble(100);
  const int n = sys.interior_nodes();
  const double sigma = 1e10;
  std::vector<double> rhs(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    rhs[static_cast<std::size_t>(i)] = std::sin(std::numbers::pi * sys.node(i));
  }
  const auto u = solve_shifted(sys, sigma, rhs);
  for (int i = 0; i < n; ++i) {
    const double expected = rhs[static_cast<std::size_t>(i)] / (sigma * sys.h);
    CHECK(std::abs(u[static_cast<std::size_t>(i)] - expected) <=
          1e-3 / (sigma * sys.h));
  }
}

TEST_CASE("l2 norm of a sine interpolant") {
  const auto sys = assemble(100);
  const auto v = interpolate(
      sys, [](double x) { return std::sin(std::numbers::pi * x); });
  CHECK(std::abs(l2_norm(sys, v) - 1.0 / std::sqrt(2.0)) <= 1e-4);
}

TEST_CASE("load of the constant function") {
  const auto sys = assemble(10);
  const auto load = project_load(sys, [](double) { return 1.0; });
  for (double v : load) {
    CHECK(v == doctest::Approx(sys.h).epsilon(1e-14));
  }
}

TEST_CASE("load of the left-half indicator") {
  auto chi = [](double x) { return (x > 0 && x < 0.5) ? 1.0 : 0.0; };

  // Even mesh: the jump sits on a node; closed form per entry.
  const auto sys = assemble(10);
  const auto load = project_load(sys, chi);
  for (int i = 0; i < sys.interior_nodes(); ++i) {
    const double x = sys.node(i);
    double expected = 0;
    if (x < 0.5 - sys.h / 2) {
      expected = sys.h;
    } else if (std::abs(x - 0.5) < sys.h / 2) {
      expected = sys.h / 2;  // left half of the hat only
    }
    CHECK(load[static_cast<std::size_t>(i)] ==
          doctest::Approx(expected).epsilon(1e-13));
  }

  // Odd mesh: the jump cuts an element; compare with analytic hat integrals.
  const auto sys5 = assemble(5);
  const auto load5 = project_load(sys5, chi);
  const double h = sys5.h;  // 0.2, jump at x = 0.5 inside (0.4, 0.6)
  CHECK(load5[0] == doctest::Approx(h).epsilon(1e-13));
  // Node at 0.4: full left element + the strip (0.4, 0.5) of the right one.
  CHECK(load5[1] == doctest::Approx(h / 2 + 0.075).epsilon(1e-13));
  // Node at 0.6: the strip (0.4, 0.5) weighted by the rising hat.
  CHECK(load5[2] == doctest::Approx(0.025).epsilon(1e-13));
  CHECK(load5[3] == doctest::Approx(0.0).epsilon(1e-13));
}

TEST_CASE("single load entry agrees with the assembled vector") {
  const auto sys = assemble(7);
  auto f = [](double x) { return std::cos(3.0 * x) + (x < 0.5 ? 0.5 : 0.0); };
  const auto load = project_load(sys, f);
  for (int i = 0; i < sys.interior_nodes(); ++i) {
    CHECK(load_entry(sys, f, i) ==
          doctest::Approx(load[static_cast<std::size_t>(i)]).epsilon(1e-14));
  }
}
