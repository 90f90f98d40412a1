#include "fracbdf/stability.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace fracbdf {

namespace {

constexpr double kAngleDeg[7] = {0, 90.0, 90.0, 86.03, 73.35, 51.84, 17.84};

std::complex<double> delta_on_circle(int k, double theta) {
  const std::complex<double> zeta(std::cos(theta), -std::sin(theta));
  const std::complex<double> s = 1.0 - zeta;
  std::complex<double> d(0, 0);
  for (int j = k; j >= 1; --j) {
    d = (d + 1.0 / j) * s;
  }
  return d;
}

double principal_arg(std::complex<double> z) { return std::arg(z); }

struct CurvePoint {
  double theta;
  double phase;  // unwound arg of delta(e^{-i theta})
  double mag;
};

}  // namespace

double stability_angle_degrees(int k) {
  if (k < 1 || k > 6) {
    throw std::invalid_argument("BDF order must be in 1..6, got " +
                                std::to_string(k));
  }
  return kAngleDeg[k];
}

double alpha_star(int k) {
  if (k < 2 || k > 6) {
    throw std::invalid_argument("alpha_star is defined for k = 2..6, got " +
                                std::to_string(k));
  }
  const double theta = stability_angle_degrees(k) * std::numbers::pi / 180.0;
  return std::numbers::pi / (std::numbers::pi - theta);
}

std::optional<double> cfl_constant(double alpha, int k, int grid_points) {
  if (!(alpha > 0.0 && alpha < 2.0)) {
    throw std::domain_error("fractional order alpha must lie in (0, 2)");
  }
  if (k < 2 || k > 6) {
    throw std::invalid_argument("cfl_constant is defined for k = 2..6");
  }
  if (grid_points < 16) {
    throw std::invalid_argument("theta grid too coarse");
  }

  // Unwind the argument along theta in (0, pi]. Near theta = 0 the curve
  // leaves the origin tangent to the imaginary axis, so the phase starts at
  // pi/2 and stays continuous from there.
  std::vector<CurvePoint> pts(static_cast<std::size_t>(grid_points));
  double phase = 0;
  std::complex<double> prev(1, 0);
  for (int m = 1; m <= grid_points; ++m) {
    const double theta = std::numbers::pi * m / grid_points;
    const std::complex<double> d = delta_on_circle(k, theta);
    if (m == 1) {
      phase = principal_arg(d);
    } else {
      phase += principal_arg(d / prev);
    }
    prev = d;
    pts[static_cast<std::size_t>(m - 1)] = {theta, phase, std::abs(d)};
  }

  // Crossings of alpha * phase through +-pi.
  double best = std::numeric_limits<double>::infinity();
  bool found = false;
  for (int target_sign : {+1, -1}) {
    const double target = target_sign * std::numbers::pi;
    for (std::size_t m = 0; m + 1 < pts.size(); ++m) {
      const double f0 = alpha * pts[m].phase - target;
      const double f1 = alpha * pts[m + 1].phase - target;
      if (f0 == 0.0 || f0 * f1 >= 0.0) {
        continue;
      }
      double lo = pts[m].theta, hi = pts[m + 1].theta;
      double phase_lo = pts[m].phase;
      std::complex<double> d_lo = delta_on_circle(k, lo);
      double value = 0;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const std::complex<double> d_mid = delta_on_circle(k, mid);
        const double phase_mid = phase_lo + principal_arg(d_mid / d_lo);
        const double f_mid = alpha * phase_mid - target;
        const double mag_a = std::pow(std::abs(d_mid), alpha);
        value = mag_a * std::cos(alpha * phase_mid);
        if (std::abs(mag_a * std::sin(alpha * phase_mid - target)) <= 1e-12) {
          break;
        }
        if ((alpha * pts[m].phase - target) * f_mid <= 0.0) {
          hi = mid;
        } else {
          lo = mid;
          phase_lo = phase_mid;
          d_lo = d_mid;
        }
      }
      if (value < 0) {
        best = std::min(best, std::abs(value));
        found = true;
      }
    }
  }
  if (!found) {
    return std::nullopt;
  }
  return best;
}

std::optional<double> tau_threshold(double alpha, int k, double rA) {
  if (!(rA > 0)) {
    throw std::invalid_argument("numerical radius must be positive");
  }
  if (alpha < alpha_star(k)) {
    return std::nullopt;  // unconditional: no threshold exists
  }
  const auto c = cfl_constant(alpha, k);
  if (!c) {
    return std::nullopt;
  }
  return std::pow(*c / rA, 1.0 / alpha);
}

std::pair<bool, StabilityReport> check_condition(double alpha, int k, double tau,
                                                 double rA, double safety) {
  StabilityReport report;
  report.k = k;
  report.alpha = alpha;
  report.alpha_star = alpha_star(k);
  report.unconditional = alpha < report.alpha_star;
  if (report.unconditional) {
    return {true, report};
  }
  report.cfl_constant = cfl_constant(alpha, k);
  if (!report.cfl_constant) {
    return {false, report};
  }
  report.tau_threshold = std::pow(*report.cfl_constant / rA, 1.0 / alpha);
  const bool ok = std::pow(tau, alpha) * rA < safety * (*report.cfl_constant);
  return {ok, report};
}

}  // namespace fracbdf
