#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "fracbdf/series.hpp"

namespace fracbdf {

/// Convolution-quadrature weights for the fractional difference operator
/// generated by BDF-k: the Taylor coefficients b_0..b_{count-1} of
/// delta(zeta)^alpha. Stored tau-free; a stepper using time step tau applies
/// the tau^{-alpha} scaling itself, so one table serves every tau.
struct WeightTable {
  double alpha = 0;
  int k = 0;
  std::vector<double> weights;
};

/// Coefficients p_0..p_k of delta(zeta) in powers of zeta; the plain BDF-k
/// difference operator (the alpha = 1 specialization).
struct BdfDifferenceWeights {
  int k = 0;
  std::vector<double> p;
};

/// Fractional weights via the power-of-a-polynomial recurrence
///   q_0 = p_0^alpha,  n p_0 q_n = sum_{i=1}^{min(n,k)} ((alpha+1) i - n) p_i q_{n-i}.
/// Requires alpha in (0, 2), k in 1..6, count >= 1.
WeightTable cq_weights(double alpha, int k, std::size_t count);

/// Same contract as cq_weights, computed independently by sampling
/// delta(zeta)^alpha on a circle and inverse discrete Fourier transform.
/// Cross-check oracle; agreement with the recurrence is a tested invariant.
WeightTable cq_weights_fft_oracle(double alpha, int k, std::size_t count);

BdfDifferenceWeights bdf_difference_weights(int k);

/// Grunwald-Letnikov weights (-1)^j binom(alpha, j): the k = 1 case in
/// closed form.
std::vector<double> grunwald_letnikov_weights(double alpha, std::size_t count);

/// Exact zeta-power coefficients of the BDF-k generating polynomial.
std::vector<Rational> bdf_zeta_coefficients(int k);

namespace detail {

/// J.C.P. Miller recurrence for the Taylor coefficients of p(zeta)^alpha,
/// p a polynomial with p[0] > 0.
template <class Real>
std::vector<Real> polynomial_power_series(const std::vector<Real>& p, Real alpha,
                                          std::size_t count) {
  const std::size_t k = p.size() - 1;
  std::vector<Real> q(count);
  q[0] = std::pow(p[0], alpha);
  for (std::size_t n = 1; n < count; ++n) {
    Real acc = 0;
    const std::size_t top = std::min(n, k);
    for (std::size_t i = 1; i <= top; ++i) {
      acc += ((alpha + 1) * static_cast<Real>(i) - static_cast<Real>(n)) * p[i] *
             q[n - i];
    }
    q[n] = acc / (static_cast<Real>(n) * p[0]);
  }
  return q;
}

template <class Real>
std::vector<Real> bdf_zeta_coefficients_as(int k) {
  const auto exact = bdf_zeta_coefficients(k);
  std::vector<Real> p(exact.size());
  for (std::size_t i = 0; i < exact.size(); ++i) {
    p[i] = exact[i].template convert_to<Real>();
  }
  return p;
}

}  // namespace detail

}  // namespace fracbdf
