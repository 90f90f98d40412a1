#include "fracbdf/fem1d.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fracbdf {

namespace {

constexpr double kGaussNode = 0.7745966692414834;  // sqrt(3/5)
constexpr double kGaussW0 = 5.0 / 9.0;
constexpr double kGaussW1 = 8.0 / 9.0;

// Integrates f * phi over [a, b] for the two hat functions of the containing
// element [xl, xr]; adds the contributions to the interior-node entries.
void accumulate_segment(const std::function<double(double)>& f, double a,
                        double b, double xl, double h, int left_node,
                        int n_interior, std::vector<double>& load) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double xs[3] = {mid - half * kGaussNode, mid, mid + half * kGaussNode};
  const double ws[3] = {kGaussW0 * half, kGaussW1 * half, kGaussW0 * half};
  for (int q = 0; q < 3; ++q) {
    const double fx = f(xs[q]) * ws[q];
    const double t = (xs[q] - xl) / h;  // local coordinate in [0, 1]
    if (left_node >= 1 && left_node <= n_interior) {
      load[static_cast<std::size_t>(left_node - 1)] += fx * (1.0 - t);
    }
    const int right_node = left_node + 1;
    if (right_node >= 1 && right_node <= n_interior) {
      load[static_cast<std::size_t>(right_node - 1)] += fx * t;
    }
  }
}

}  // namespace

SpatialSystem assemble(int subintervals) {
  if (subintervals < 2) {
    throw std::invalid_argument("mesh needs at least 2 subintervals, got " +
                                std::to_string(subintervals));
  }
  SpatialSystem sys;
  sys.subintervals = subintervals;
  sys.h = 1.0 / subintervals;
  const int n = subintervals - 1;
  sys.mass_diag.assign(static_cast<std::size_t>(n), 2.0 * sys.h / 3.0);
  sys.mass_off.assign(static_cast<std::size_t>(n > 0 ? n - 1 : 0), sys.h / 6.0);
  sys.stiff_diag.assign(static_cast<std::size_t>(n), 2.0 / sys.h);
  sys.stiff_off.assign(static_cast<std::size_t>(n > 0 ? n - 1 : 0), -1.0 / sys.h);
  return sys;
}

std::vector<double> eigenvalues(const SpatialSystem& sys) {
  const int m = sys.subintervals;
  std::vector<double> lambda(static_cast<std::size_t>(m - 1));
  for (int j = 1; j < m; ++j) {
    const double sj = std::sin(std::numbers::pi * j / (2.0 * m));
    const double fd = -(4.0 / (sys.h * sys.h)) * sj * sj;
    lambda[static_cast<std::size_t>(j - 1)] = fd / (1.0 + sys.h * sys.h / 6.0 * fd);
  }
  return lambda;
}

double numerical_radius(const SpatialSystem& sys) {
  const auto lambda = eigenvalues(sys);
  double r = 0;
  for (double v : lambda) {
    r = std::max(r, std::abs(v));
  }
  return r;
}

GridFunction solve_shifted(const SpatialSystem& sys, double sigma,
                           std::span<const double> rhs) {
  if (!(sigma > 0)) {
    throw std::invalid_argument("shift sigma must be positive");
  }
  const std::size_t n = sys.mass_diag.size();
  std::vector<double> d(n), e(n > 0 ? n - 1 : 0);
  for (std::size_t i = 0; i < n; ++i) {
    d[i] = sigma * sys.mass_diag[i] + sys.stiff_diag[i];
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    e[i] = sigma * sys.mass_off[i] + sys.stiff_off[i];
  }
  FactoredTridiagonal<double> fact(std::move(d), std::move(e));
  GridFunction u(n);
  fact.solve(rhs, u);
  return u;
}

double l2_norm(const SpatialSystem& sys, std::span<const double> u) {
  double quad = 0;
  const std::size_t n = u.size();
  for (std::size_t i = 0; i < n; ++i) {
    quad += sys.mass_diag[i] * u[i] * u[i];
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    quad += 2.0 * sys.mass_off[i] * u[i] * u[i + 1];
  }
  return std::sqrt(std::max(quad, 0.0));
}

GridFunction project_load(const SpatialSystem& sys,
                          const std::function<double(double)>& f) {
  const int n = sys.interior_nodes();
  GridFunction load(static_cast<std::size_t>(n), 0.0);
  for (int e = 0; e < sys.subintervals; ++e) {
    const double xl = e * sys.h;
    const double xr = xl + sys.h;
    if (xl < 0.5 && 0.5 < xr) {
      accumulate_segment(f, xl, 0.5, xl, sys.h, e, n, load);
      accumulate_segment(f, 0.5, xr, xl, sys.h, e, n, load);
    } else {
      accumulate_segment(f, xl, xr, xl, sys.h, e, n, load);
    }
  }
  return load;
}

namespace {

double hat_segment(const std::function<double(double)>& f, double a, double b,
                   double peak, double h) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double xs[3] = {mid - half * kGaussNode, mid, mid + half * kGaussNode};
  const double ws[3] = {kGaussW0 * half, kGaussW1 * half, kGaussW0 * half};
  double acc = 0;
  for (int q = 0; q < 3; ++q) {
    acc += f(xs[q]) * ws[q] * (1.0 - std::abs(xs[q] - peak) / h);
  }
  return acc;
}

}  // namespace

double load_entry(const SpatialSystem& sys,
                  const std::function<double(double)>& f, int node) {
  const double peak = sys.node(node);
  double acc = 0;
  for (double a : {peak - sys.h, peak}) {
    const double b = a + sys.h;
    if (a < 0.5 && 0.5 < b) {
      acc += hat_segment(f, a, 0.5, peak, sys.h);
      acc += hat_segment(f, 0.5, b, peak, sys.h);
    } else {
      acc += hat_segment(f, a, b, peak, sys.h);
    }
  }
  return acc;
}

GridFunction interpolate(const SpatialSystem& sys,
                         const std::function<double(double)>& f) {
  const int n = sys.interior_nodes();
  GridFunction v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    v[static_cast<std::size_t>(i)] = f(sys.node(i));
  }
  return v;
}

void apply_mass(const SpatialSystem& sys, std::span<const double> u,
                std::span<double> out) {
  const std::size_t n = u.size();
  for (std::size_t i = 0; i < n; ++i) {
    double acc = sys.mass_diag[i] * u[i];
    if (i > 0) {
      acc += sys.mass_off[i - 1] * u[i - 1];
    }
    if (i + 1 < n) {
      acc += sys.mass_off[i] * u[i + 1];
    }
    out[i] = acc;
  }
}

void apply_stiffness(const SpatialSystem& sys, std::span<const double> u,
                     std::span<double> out) {
  const std::size_t n = u.size();
  for (std::size_t i = 0; i < n; ++i) {
    double acc = sys.stiff_diag[i] * u[i];
    if (i > 0) {
      acc += sys.stiff_off[i - 1] * u[i - 1];
    }
    if (i + 1 < n) {
      acc += sys.stiff_off[i] * u[i + 1];
    }
    out[i] = acc;
  }
}

}  // namespace fracbdf
