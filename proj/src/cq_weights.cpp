#include "fracbdf/cq_weights.hpp"

#include <bit>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace fracbdf {

namespace {

void require_domain(double alpha, int k, std::size_t count) {
  if (!(alpha > 0.0 && alpha < 2.0)) {
    throw std::domain_error("fractional order alpha must lie in (0, 2), got " +
                            std::to_string(alpha));
  }
  if (k < 1 || k > 6) {
    throw std::invalid_argument("BDF order must be in 1..6, got " +
                                std::to_string(k));
  }
  if (count < 1) {
    throw std::invalid_argument("weight count must be at least 1");
  }
}

using Cplx = std::complex<long double>;

// In-place iterative radix-2 transform; sign = +1 gives the unnormalized
// inverse-DFT convention sum_m x_m exp(+2 pi i j m / L).
void fft_radix2(std::vector<Cplx>& x, int sign) {
  const std::size_t n = x.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) {
      j ^= bit;
    }
    j ^= bit;
    if (i < j) {
      std::swap(x[i], x[j]);
    }
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const long double ang =
        sign * 2.0L * std::numbers::pi_v<long double> / static_cast<long double>(len);
    const Cplx wlen(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      Cplx w(1, 0);
      for (std::size_t j = 0; j < len / 2; ++j) {
        const Cplx u = x[i + j];
        const Cplx v = x[i + j + len / 2] * w;
        x[i + j] = u + v;
        x[i + j + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

}  // namespace

std::vector<Rational> bdf_zeta_coefficients(int k) {
  return to_zeta_coeffs(bdf_generating_poly(k));
}

WeightTable cq_weights(double alpha, int k, std::size_t count) {
  require_domain(alpha, k, count);
  const auto p = detail::bdf_zeta_coefficients_as<long double>(k);
  const auto q =
      detail::polynomial_power_series<long double>(p, static_cast<long double>(alpha), count);
  WeightTable table{alpha, k, std::vector<double>(count)};
  for (std::size_t i = 0; i < count; ++i) {
    table.weights[i] = static_cast<double>(q[i]);
  }
  return table;
}

WeightTable cq_weights_fft_oracle(double alpha, int k, std::size_t count) {
  require_domain(alpha, k, count);
  const std::size_t grid = std::bit_ceil(std::max<std::size_t>(4 * count, 8));
  // Sampling radius slightly inside the unit circle: the coefficients of
  // delta^alpha decay only algebraically on |zeta| = 1, so aliasing is pushed
  // down geometrically by the factor radius^grid instead.
  const long double log_shrink = -9.0L * std::numbers::ln10_v<long double> /
                                 static_cast<long double>(grid);
  const long double radius = std::exp(log_shrink);

  std::vector<long double> delta_s(static_cast<std::size_t>(k) + 1, 0.0L);
  for (int j = 1; j <= k; ++j) {
    delta_s[static_cast<std::size_t>(j)] = 1.0L / static_cast<long double>(j);
  }

  std::vector<Cplx> samples(grid);
  const long double step =
      2.0L * std::numbers::pi_v<long double> / static_cast<long double>(grid);
  for (std::size_t m = 0; m < grid; ++m) {
    const long double theta = step * static_cast<long double>(m);
    const Cplx zeta = radius * Cplx(std::cos(theta), -std::sin(theta));
    const Cplx s = Cplx(1, 0) - zeta;
    Cplx d(0, 0);
    for (int j = k; j >= 0; --j) {
      d = d * s + delta_s[static_cast<std::size_t>(j)];
    }
    samples[m] = std::pow(d, static_cast<long double>(alpha));
  }
  fft_radix2(samples, +1);

  WeightTable table{alpha, k, std::vector<double>(count)};
  for (std::size_t j = 0; j < count; ++j) {
    const long double unscale = std::exp(-log_shrink * static_cast<long double>(j));
    table.weights[j] = static_cast<double>(
        samples[j].real() / static_cast<long double>(grid) * unscale);
  }
  return table;
}

BdfDifferenceWeights bdf_difference_weights(int k) {
  const auto exact = bdf_zeta_coefficients(k);
  BdfDifferenceWeights out{k, std::vector<double>(exact.size())};
  for (std::size_t i = 0; i < exact.size(); ++i) {
    out.p[i] = to_double(exact[i]);
  }
  return out;
}

std::vector<double> grunwald_letnikov_weights(double alpha, std::size_t count) {
  std::vector<double> b(count);
  long double w = 1.0L;
  b[0] = 1.0;
  for (std::size_t n = 1; n < count; ++n) {
    w *= (static_cast<long double>(n) - 1.0L - alpha) / static_cast<long double>(n);
    b[n] = static_cast<double>(w);
  }
  return b;
}

}  // namespace fracbdf
