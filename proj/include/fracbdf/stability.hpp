#pragma once

#include <optional>

namespace fracbdf {

/// Stability classification of the BDF-k scheme for a diffusion-wave run.
struct StabilityReport {
  int k = 0;
  double alpha = 0;
  bool unconditional = false;
  double alpha_star = 0;
  std::optional<double> cfl_constant;   // present in the conditional regime
  std::optional<double> tau_threshold;  // present when r(A) was supplied
};

/// A(theta)-stability angle of BDF-k in degrees, k = 1..6.
double stability_angle_degrees(int k);

/// Critical fractional order pi / (pi - theta_k) below which the scheme is
/// unconditionally stable. k = 2..6.
double alpha_star(int k);

/// CFL constant c(alpha, k): the modulus of the intersection of the boundary
/// curve {delta(zeta)^alpha : |zeta| = 1} with the negative real axis that
/// lies closest to the origin. Located by tracking the continuously unwound
/// argument of delta(e^{-i theta}) on a fine theta grid, bracketing the
/// crossings of arg = +-pi after raising to the power alpha, then bisecting
/// until |Im| <= 1e-12. Returns nullopt when the curve never reaches the
/// negative real axis (alpha below alpha_star).
std::optional<double> cfl_constant(double alpha, int k,
                                   int grid_points = 10000);

/// Largest stable step (c(alpha,k) / rA)^{1/alpha}; nullopt in the
/// unconditional regime where no threshold exists.
std::optional<double> tau_threshold(double alpha, int k, double rA);

/// Full stability condition: unconditional order range, or the strict CFL
/// bound tau^alpha * rA < safety * c(alpha, k).
std::pair<bool, StabilityReport> check_condition(double alpha, int k, double tau,
                                                 double rA, double safety = 1.0);

}  // namespace fracbdf
