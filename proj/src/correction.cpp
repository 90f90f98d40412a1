#include "fracbdf/correction.hpp"

#include <stdexcept>

#include "fracbdf/errors.hpp"

namespace fracbdf {

namespace {

void require_order(int k, int lo) {
  if (k < lo || k > 6) {
    throw std::invalid_argument("correction order must be in " +
                                std::to_string(lo) + "..6, got " +
                                std::to_string(k));
  }
}

Rational factorial(int n) {
  Rational out(1);
  for (int i = 2; i <= n; ++i) {
    out *= i;
  }
  return out;
}

// Leading expansion coefficients of a series that must have no pole part:
// returns coefficients of s^0..s^count-1 and throws if any negative exponent
// survives (that would be an arithmetic bug upstream, never valid input).
std::vector<Rational> polynomial_part(const LaurentSeries& e, int count,
                                      const char* what) {
  if (!e.is_zero() && e.lowest_exponent() < 0) {
    throw std::logic_error(std::string("internal inconsistency: pole failed to "
                                       "cancel in ") +
                           what);
  }
  std::vector<Rational> g(static_cast<std::size_t>(count));
  for (int j = 0; j < count; ++j) {
    g[static_cast<std::size_t>(j)] = e.coeff(j);
  }
  return g;
}

// Difference recursion shared by the correction rows: choose d so that the
// polynomial zeta * sum_j d_j (1-zeta)^j cancels the expansion g through
// s^{keep-1}, with the remaining d entries forced to zero.
std::vector<Rational> difference_row(const std::vector<Rational>& g, int k,
                                     int keep) {
  std::vector<Rational> d(static_cast<std::size_t>(k - 1), Rational(0));
  for (int j = 0; j < keep && j <= k - 2; ++j) {
    const Rational prev = (j == 0) ? Rational(0) : d[static_cast<std::size_t>(j - 1)];
    d[static_cast<std::size_t>(j)] = prev - g[static_cast<std::size_t>(j)];
  }
  return d;
}

// zeta * p(s) read off in powers of zeta: returns the coefficients of
// zeta^1..zeta^{k-1}.
std::vector<Rational> shifted_zeta_row(const std::vector<Rational>& p_in_s, int k) {
  const auto zc = to_zeta_coeffs(
      LaurentSeries::from_coefficients(0, p_in_s));
  std::vector<Rational> row(static_cast<std::size_t>(k - 1), Rational(0));
  for (std::size_t i = 0; i < zc.size() && i < row.size(); ++i) {
    row[i] = zc[i];
  }
  return row;
}

// Polynomial in s for sum_{j>=1} row_j zeta^j given the row of zeta
// coefficients.
LaurentSeries row_as_series(const std::vector<Rational>& row) {
  std::vector<Rational> zc(row.size() + 1, Rational(0));
  for (std::size_t i = 0; i < row.size(); ++i) {
    zc[i + 1] = row[i];
  }
  return from_zeta_coeffs(zc);
}

std::vector<Rational> value_expansion_coeffs(int k) {
  // Unit-triangular system: the j-th equation determines c_{j-1}.
  std::vector<Rational> c(static_cast<std::size_t>(k - 1));
  for (int j = 1; j <= k - 1; ++j) {
    Rational rhs(1, j * (j + 1));
    for (int l = 1; l <= j - 1; ++l) {
      rhs += c[static_cast<std::size_t>(l - 1)] / (j - l);
    }
    for (int l = 0; l <= j - 2; ++l) {
      rhs -= c[static_cast<std::size_t>(l)] / (j - l);
    }
    c[static_cast<std::size_t>(j - 1)] = rhs;
  }
  return c;
}

struct RowDerivation {
  std::vector<Rational> g;
  std::vector<Rational> d;
  std::vector<Rational> b;
};

// One correction row from its target expansion: cancel E through s^{keep-1}.
RowDerivation derive_row(const LaurentSeries& e, int k, int keep, const char* what) {
  RowDerivation out;
  out.g = polynomial_part(e, keep, what);
  out.d = difference_row(out.g, k, keep);
  out.b = shifted_zeta_row(out.d, k);
  return out;
}

}  // namespace

std::string to_string(Regime regime) {
  return regime == Regime::subdiffusion ? "subdiffusion" : "diffusion_wave";
}

std::vector<Rational> derive_a(int k) {
  require_order(k, 2);
  return shifted_zeta_row(value_expansion_coeffs(k), k);
}

std::vector<std::vector<Rational>> derive_b_subdiffusion(int k) {
  require_order(k, 3);
  const auto delta = bdf_generating_poly(k);
  std::vector<std::vector<Rational>> rows;
  for (int ell = 1; ell <= k - 2; ++ell) {
    const LaurentSeries e =
        Rational(1) / factorial(ell) * power_sum_series(ell) -
        invert(pow(delta, ell + 1), k + 2);
    rows.push_back(derive_row(e, k, k - ell - 1, "subdiffusion correction").b);
  }
  return rows;
}

std::vector<std::vector<Rational>> derive_b_diffusion_wave(int k) {
  require_order(k, 3);
  const auto delta = bdf_generating_poly(k);
  std::vector<std::vector<Rational>> rows;
  for (int ell = 1; ell <= k - 2; ++ell) {
    const LaurentSeries e =
        Rational(1) / factorial(ell) * (delta * power_sum_series(ell)) -
        invert(pow(delta, ell), k + 2);
    rows.push_back(derive_row(e, k, k - ell, "diffusion-wave correction").b);
  }
  return rows;
}

std::vector<Rational> derive_c(int k) {
  require_order(k, 3);
  const auto delta = bdf_generating_poly(k);
  const LaurentSeries e = power_sum_series(1) - invert(pow(delta, 2), k + 2);
  const auto own = derive_row(e, k, k - 2, "velocity correction").b;
  const auto sub_row1 = derive_b_subdiffusion(k).front();
  if (own != sub_row1) {
    throw std::logic_error(
        "internal inconsistency: velocity correction disagrees with the "
        "first subdiffusion row");
  }
  return own;
}

CorrectionSet make_correction_set(int k, Regime regime) {
  if (k < 1 || k > 6) {
    throw std::invalid_argument("correction order must be in 1..6, got " +
                                std::to_string(k));
  }
  CorrectionSet set;
  set.k = k;
  set.regime = regime;
  if (k == 1) {
    return set;  // plain scheme, nothing to correct
  }
  set.value_expansion = value_expansion_coeffs(k);
  set.a = derive_a(k);
  if (k == 2) {
    return set;
  }

  const auto delta = bdf_generating_poly(k);
  for (int ell = 1; ell <= k - 2; ++ell) {
    LaurentSeries e;
    int keep = 0;
    if (regime == Regime::subdiffusion) {
      e = Rational(1) / factorial(ell) * power_sum_series(ell) -
          invert(pow(delta, ell + 1), k + 2);
      keep = k - ell - 1;
    } else {
      e = Rational(1) / factorial(ell) * (delta * power_sum_series(ell)) -
          invert(pow(delta, ell), k + 2);
      keep = k - ell;
    }
    auto row = derive_row(e, k, keep, "correction row");
    set.taylor_rows.push_back(std::move(row.g));
    set.difference_rows.push_back(std::move(row.d));
    set.b.push_back(std::move(row.b));
  }
  if (regime == Regime::diffusion_wave) {
    set.c = derive_c(k);
  }
  return set;
}

namespace {

// Checks that the residual series vanishes exactly on [from, through]; scans
// past that range (up to the expansion window) for the first nonzero
// coefficient.
ResidualCertificate check_residual(const LaurentSeries& r, std::string criterion,
                                   int k, int ell, int from, int through) {
  ResidualCertificate cert;
  cert.criterion = std::move(criterion);
  cert.k = k;
  cert.ell = ell;
  cert.zero_from = from;
  cert.zero_through = through;
  for (int e = from; e <= through; ++e) {
    const Rational v = r.coeff(e);
    if (v != 0) {
      throw CertificationError(cert.criterion, k, ell, e, to_fraction_string(v));
    }
  }
  const int top = r.is_exact()
                      ? (r.is_zero() ? through : r.highest_stored())
                      : r.truncation_order();
  for (int e = through + 1; e <= top; ++e) {
    const Rational v = r.coeff(e);
    if (v != 0) {
      cert.first_nonzero = {e, v};
      break;
    }
  }
  return cert;
}

}  // namespace

std::vector<ResidualCertificate> certify(const CorrectionSet& set) {
  std::vector<ResidualCertificate> certs;
  const int k = set.k;
  if (k < 2) {
    return certs;
  }
  const auto delta = bdf_generating_poly(k);

  // mu(zeta) = delta(zeta) (zeta/(1-zeta) + sum_j a_j zeta^j) must equal
  // 1 + O(s^k).
  const LaurentSeries zeta_over_s =
      LaurentSeries::from_coefficients(-1, {Rational(1), Rational(-1)});
  const LaurentSeries mu = delta * (zeta_over_s + row_as_series(set.a));
  certs.push_back(check_residual(mu - LaurentSeries::constant(Rational(1)), "mu",
                                 k, -1, 0, k - 1));

  for (int ell = 1; ell <= k - 2; ++ell) {
    const auto& row = set.b[static_cast<std::size_t>(ell - 1)];
    if (set.regime == Regime::subdiffusion) {
      const LaurentSeries r =
          Rational(1) / factorial(ell) * power_sum_series(ell) +
          row_as_series(row) - invert(pow(delta, ell + 1), k + 2);
      certs.push_back(
          check_residual(r, "b", k, ell, -(ell + 1), k - ell - 2));
    } else {
      const LaurentSeries r =
          Rational(1) / factorial(ell) * (delta * power_sum_series(ell)) +
          row_as_series(row) - invert(pow(delta, ell), k + 2);
      certs.push_back(check_residual(r, "b-dw", k, ell, -ell, k - ell - 1));
    }
  }

  if (set.regime == Regime::diffusion_wave && k >= 3) {
    const LaurentSeries r = power_sum_series(1) + row_as_series(set.c) -
                            invert(pow(delta, 2), k + 2);
    certs.push_back(check_residual(r, "c-dw", k, -1, -2, k - 3));
  }
  return certs;
}

}  // namespace fracbdf
