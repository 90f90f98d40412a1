#pragma once

#include <stdexcept>
#include <string>

namespace fracbdf {

/// Raised when a derived correction table fails its residual-order
/// requirement: some coefficient that must vanish exactly is nonzero.
class CertificationError : public std::logic_error {
 public:
  CertificationError(std::string criterion, int k, int ell, int exponent,
                     std::string value)
      : std::logic_error("certification failure: " + criterion +
                         " k=" + std::to_string(k) +
                         " ell=" + std::to_string(ell) + " coefficient of s^" +
                         std::to_string(exponent) + " = " + value),
        criterion(std::move(criterion)),
        k(k),
        ell(ell),
        exponent(exponent),
        value(std::move(value)) {}

  std::string criterion;
  int k;
  int ell;
  int exponent;
  std::string value;
};

/// Raised when a diffusion-wave run violates the CFL step-size condition and
/// the caller did not override the stability gate.
class StabilityRefused : public std::runtime_error {
 public:
  StabilityRefused(double tau, double tau_threshold)
      : std::runtime_error("time step tau=" + std::to_string(tau) +
                           " exceeds the stability threshold tau0=" +
                           std::to_string(tau_threshold)),
        tau(tau),
        tau_threshold(tau_threshold) {}

  double tau;
  double tau_threshold;
};

}  // namespace fracbdf
