#pragma once

#include <functional>
#include <span>
#include <vector>

namespace fracbdf {

/// Nodal values at the interior mesh points of (0, 1).
using GridFunction = std::vector<double>;

/// Piecewise-linear Galerkin discretization of (0, 1) with homogeneous
/// Dirichlet conditions on M equal subintervals. Mass and stiffness matrices
/// are symmetric tridiagonal of dimension M-1 and immutable after assembly.
struct SpatialSystem {
  int subintervals = 0;  // M
  double h = 0;          // 1 / M
  std::vector<double> mass_diag, mass_off;
  std::vector<double> stiff_diag, stiff_off;

  int interior_nodes() const { return subintervals - 1; }
  double node(int i) const { return h * (i + 1); }  // i = 0 .. M-2
};

/// Assembles mass (h/6, 2h/3, h/6) and stiffness (-1/h, 2/h, -1/h). M >= 2.
SpatialSystem assemble(int subintervals);

/// Closed-form generalized eigenvalues of (stiffness, mass), with the sign
/// convention of the discrete Laplacian (all negative), ascending in the mode
/// index so magnitudes increase.
std::vector<double> eigenvalues(const SpatialSystem& sys);

/// Largest eigenvalue magnitude of the discrete Laplacian.
double numerical_radius(const SpatialSystem& sys);

/// Solves (sigma * mass + stiffness) u = rhs, sigma > 0, by a symmetric
/// tridiagonal direct factorization.
GridFunction solve_shifted(const SpatialSystem& sys, double sigma,
                           std::span<const double> rhs);

/// sqrt(u^T mass u).
double l2_norm(const SpatialSystem& sys, std::span<const double> u);

/// Load vector (f, phi_i) by 3-point Gauss quadrature per element; an element
/// straddling x = 1/2 is split there first, so piecewise definitions with a
/// jump at 1/2 integrate exactly even when 1/2 is not a mesh node.
GridFunction project_load(const SpatialSystem& sys,
                          const std::function<double(double)>& f);

/// Single load-vector entry: integral of f * phi_node over the node's
/// support, with the same x = 1/2 splitting as project_load.
double load_entry(const SpatialSystem& sys,
                  const std::function<double(double)>& f, int node);

/// Nodal interpolant values of f at the interior nodes.
GridFunction interpolate(const SpatialSystem& sys,
                         const std::function<double(double)>& f);

void apply_mass(const SpatialSystem& sys, std::span<const double> u,
                std::span<double> out);
void apply_stiffness(const SpatialSystem& sys, std::span<const double> u,
                     std::span<double> out);

/// One-time LDL^T factorization of a symmetric positive definite tridiagonal
/// matrix, reusable across many solves of the same system.
template <class Real>
class FactoredTridiagonal {
 public:
  FactoredTridiagonal() = default;
  FactoredTridiagonal(std::vector<Real> diag, std::vector<Real> off)
      : d_(std::move(diag)), e_(std::move(off)) {
    for (std::size_t i = 1; i < d_.size(); ++i) {
      const Real l = e_[i - 1] / d_[i - 1];
      d_[i] -= l * e_[i - 1];
      e_[i - 1] = l;  // store the unit-lower factor in place
    }
  }

  std::size_t size() const { return d_.size(); }

  void solve(std::span<const Real> rhs, std::span<Real> x) const {
    const std::size_t n = d_.size();
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = rhs[i] - (i > 0 ? e_[i - 1] * x[i - 1] : Real(0));
    }
    for (std::size_t i = n; i-- > 0;) {
      x[i] = x[i] / d_[i] - (i + 1 < n ? e_[i] * x[i + 1] : Real(0));
    }
  }

 private:
  std::vector<Real> d_, e_;
};

}  // namespace fracbdf
