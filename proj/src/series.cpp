#include "fracbdf/series.hpp"

#include <algorithm>
#include <stdexcept>

namespace fracbdf {

std::string to_fraction_string(const Rational& q) {
  std::string out = numerator(q).str();
  if (denominator(q) != 1) {
    out += "/" + denominator(q).str();
  }
  return out;
}

Rational rational_from_string(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) {
    return Rational(BigInt(text));
  }
  BigInt num(text.substr(0, slash));
  BigInt den(text.substr(slash + 1));
  if (den == 0) {
    throw std::domain_error("rational with zero denominator: " + text);
  }
  return Rational(num, den);
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

LaurentSeries LaurentSeries::constant(Rational value) {
  return monomial(std::move(value), 0);
}

LaurentSeries LaurentSeries::monomial(Rational coefficient, int exponent) {
  LaurentSeries out;
  out.low_ = exponent;
  out.coeffs_.push_back(std::move(coefficient));
  out.normalize();
  return out;
}

LaurentSeries LaurentSeries::from_coefficients(int lowest_exponent,
                                               std::vector<Rational> coefficients,
                                               int truncation_order) {
  LaurentSeries out;
  out.low_ = lowest_exponent;
  out.coeffs_ = std::move(coefficients);
  out.trunc_ = truncation_order;
  out.normalize();
  return out;
}

int LaurentSeries::lowest_exponent() const {
  if (is_zero()) {
    throw std::logic_error("lowest_exponent of the zero series");
  }
  return low_;
}

int LaurentSeries::highest_stored() const {
  if (is_zero()) {
    throw std::logic_error("highest_stored of the zero series");
  }
  return low_ + static_cast<int>(coeffs_.size()) - 1;
}

Rational LaurentSeries::coeff(int exponent) const {
  if (exponent > trunc_) {
    throw std::logic_error("coefficient of s^" + std::to_string(exponent) +
                           " is beyond the truncation order s^" +
                           std::to_string(trunc_));
  }
  if (is_zero() || exponent < low_ ||
      exponent > low_ + static_cast<int>(coeffs_.size()) - 1) {
    return Rational(0);
  }
  return coeffs_[static_cast<std::size_t>(exponent - low_)];
}

int LaurentSeries::first_unknown() const {
  if (trunc_ >= kExact) {
    return kExact + 1;
  }
  return trunc_ + 1;
}

void LaurentSeries::normalize() {
  // Drop stored coefficients past the truncation order.
  if (trunc_ < kExact && !coeffs_.empty()) {
    const long long keep = static_cast<long long>(trunc_) - low_ + 1;
    if (keep <= 0) {
      coeffs_.clear();
    } else if (keep < static_cast<long long>(coeffs_.size())) {
      coeffs_.resize(static_cast<std::size_t>(keep));
    }
  }
  std::size_t lead = 0;
  while (lead < coeffs_.size() && coeffs_[lead] == 0) {
    ++lead;
  }
  if (lead > 0) {
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(lead));
    low_ += static_cast<int>(lead);
  }
  while (!coeffs_.empty() && coeffs_.back() == 0) {
    coeffs_.pop_back();
  }
  if (coeffs_.empty()) {
    low_ = 0;
  }
  if (trunc_ > kExact) {
    trunc_ = kExact;
  }
}

LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
  LaurentSeries out;
  out.trunc_ = std::min(a.trunc_, b.trunc_);
  if (a.is_zero() && b.is_zero()) {
    out.normalize();
    return out;
  }
  const int lo = a.is_zero()   ? b.low_
                 : b.is_zero() ? a.low_
                               : std::min(a.low_, b.low_);
  const int hi_a = a.is_zero() ? lo - 1 : a.low_ + static_cast<int>(a.coeffs_.size()) - 1;
  const int hi_b = b.is_zero() ? lo - 1 : b.low_ + static_cast<int>(b.coeffs_.size()) - 1;
  const int hi = std::min(std::max(hi_a, hi_b), out.trunc_);
  out.low_ = lo;
  for (int e = lo; e <= hi; ++e) {
    out.coeffs_.push_back(a.coeff(e) + b.coeff(e));
  }
  out.normalize();
  return out;
}

LaurentSeries operator-(const LaurentSeries& a) {
  LaurentSeries out = a;
  for (auto& c : out.coeffs_) {
    c = -c;
  }
  return out;
}

LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) {
  return a + (-b);
}

LaurentSeries operator*(const Rational& c, const LaurentSeries& a) {
  if (c == 0) {
    LaurentSeries out;
    out = LaurentSeries::from_coefficients(0, {}, a.truncation_order());
    return out;
  }
  LaurentSeries out = a;
  for (auto& x : out.coeffs_) {
    x *= c;
  }
  return out;
}

LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
  // The product is valid through min(low(a) + trunc(b), low(b) + trunc(a)).
  // A series with no stored coefficients contributes its first potentially
  // nonzero exponent instead of a stored lowest exponent.
  const long long low_a = a.is_zero() ? a.first_unknown() : a.low_;
  const long long low_b = b.is_zero() ? b.first_unknown() : b.low_;
  long long trunc;
  if (a.is_exact() && b.is_exact()) {
    trunc = LaurentSeries::kExact;
  } else {
    trunc = std::min({low_a + b.trunc_, low_b + a.trunc_,
                      static_cast<long long>(LaurentSeries::kExact)});
  }

  LaurentSeries out;
  out.trunc_ = static_cast<int>(trunc);
  if (a.is_zero() || b.is_zero()) {
    out.normalize();
    return out;
  }
  const int lo = a.low_ + b.low_;
  const int hi = std::min<long long>(
      static_cast<long long>(a.highest_stored()) + b.highest_stored(), trunc);
  if (hi < lo) {
    out.normalize();
    return out;
  }
  out.low_ = lo;
  out.coeffs_.assign(static_cast<std::size_t>(hi - lo + 1), Rational(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) {
      continue;
    }
    const int ea = a.low_ + static_cast<int>(i);
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      const int e = ea + b.low_ + static_cast<int>(j);
      if (e > hi) {
        break;
      }
      out.coeffs_[static_cast<std::size_t>(e - lo)] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  out.normalize();
  return out;
}

bool operator==(const LaurentSeries& a, const LaurentSeries& b) {
  return a.low_ == b.low_ && a.trunc_ == b.trunc_ && a.coeffs_ == b.coeffs_;
}

LaurentSeries invert(const LaurentSeries& a, int order) {
  if (a.is_zero()) {
    throw std::domain_error("division by the zero series");
  }
  const int m = a.lowest_exponent();
  const long long terms = static_cast<long long>(order) + m;  // exponents -m..order
  if (terms < 0) {
    throw std::invalid_argument("inversion order below the leading exponent");
  }
  const Rational& lead = a.coeff(m);
  // Normalized tail t_i = a_{m+i} / a_m; inverse tail u from the standard
  // reciprocal recurrence u_n = -sum_{i=1..n} t_i u_{n-i}.
  std::vector<Rational> u(static_cast<std::size_t>(terms) + 1);
  u[0] = 1;
  for (long long n = 1; n <= terms; ++n) {
    Rational acc(0);
    for (long long i = 1; i <= n; ++i) {
      const Rational t = a.coeff(m + static_cast<int>(i)) / lead;
      if (t != 0) {
        acc += t * u[static_cast<std::size_t>(n - i)];
      }
    }
    u[static_cast<std::size_t>(n)] = -acc;
  }
  for (auto& x : u) {
    x /= lead;
  }
  return LaurentSeries::from_coefficients(-m, std::move(u), order);
}

LaurentSeries pow(const LaurentSeries& a, int exponent) {
  if (exponent < 0) {
    throw std::invalid_argument("pow expects a non-negative exponent");
  }
  LaurentSeries out = LaurentSeries::constant(Rational(1));
  for (int i = 0; i < exponent; ++i) {
    out = out * a;
  }
  return out;
}

LaurentSeries derivative(const LaurentSeries& a) {
  if (a.is_zero()) {
    LaurentSeries out;
    if (a.truncation_order() < LaurentSeries::kExact) {
      out = LaurentSeries::from_coefficients(0, {}, a.truncation_order() - 1);
    }
    return out;
  }
  const int lo = a.lowest_exponent();
  const int hi = a.highest_stored();
  std::vector<Rational> c;
  c.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (int e = lo; e <= hi; ++e) {
    c.push_back(Rational(e) * a.coeff(e));
  }
  const int trunc = a.is_exact() ? LaurentSeries::kExact : a.truncation_order() - 1;
  return LaurentSeries::from_coefficients(lo - 1, std::move(c), trunc);
}

LaurentSeries bdf_generating_poly(int k) {
  if (k < 1 || k > 6) {
    throw std::invalid_argument("BDF order must be in 1..6, got " +
                                std::to_string(k));
  }
  std::vector<Rational> c(static_cast<std::size_t>(k));
  for (int j = 1; j <= k; ++j) {
    c[static_cast<std::size_t>(j - 1)] = Rational(1, j);
  }
  return LaurentSeries::from_coefficients(1, std::move(c));
}

LaurentSeries power_sum_series(int ell) {
  if (ell < 0) {
    throw std::invalid_argument("power_sum_series expects ell >= 0");
  }
  // 1/(1-zeta) = 1/s; zeta d/dzeta = (s - 1) d/ds.
  LaurentSeries g = LaurentSeries::monomial(Rational(1), -1);
  const LaurentSeries s_minus_one = LaurentSeries::from_coefficients(
      0, {Rational(-1), Rational(1)});
  for (int i = 0; i < ell; ++i) {
    g = s_minus_one * derivative(g);
  }
  return g;
}

namespace {

// binomial(j, i) for 0 <= i <= j <= n as exact integers.
std::vector<std::vector<BigInt>> pascal_triangle(int n) {
  std::vector<std::vector<BigInt>> rows(static_cast<std::size_t>(n) + 1);
  for (int j = 0; j <= n; ++j) {
    auto& row = rows[static_cast<std::size_t>(j)];
    row.assign(static_cast<std::size_t>(j) + 1, BigInt(1));
    for (int i = 1; i < j; ++i) {
      row[static_cast<std::size_t>(i)] =
          rows[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(i - 1)] +
          rows[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(i)];
    }
  }
  return rows;
}

// Shared by both directions: substituting x -> 1 - y is an involution on
// dense polynomial coefficients.
std::vector<Rational> one_minus_substitution(std::span<const Rational> in) {
  if (in.empty()) {
    return {};
  }
  const int deg = static_cast<int>(in.size()) - 1;
  const auto binom = pascal_triangle(deg);
  std::vector<Rational> out(in.size(), Rational(0));
  for (int i = 0; i <= deg; ++i) {
    Rational acc(0);
    for (int j = i; j <= deg; ++j) {
      acc += Rational(binom[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]) *
             in[static_cast<std::size_t>(j)];
    }
    if (i % 2 != 0) {
      acc = -acc;
    }
    out[static_cast<std::size_t>(i)] = acc;
  }
  return out;
}

}  // namespace

std::vector<Rational> to_zeta_coeffs(const LaurentSeries& poly) {
  if (poly.is_zero()) {
    if (!poly.is_exact()) {
      throw std::domain_error("series with unknown tail is not a polynomial");
    }
    return {};
  }
  if (poly.lowest_exponent() < 0) {
    throw std::domain_error("series with negative exponents is not a polynomial");
  }
  if (!poly.is_exact()) {
    throw std::domain_error("series with unknown tail is not a polynomial");
  }
  std::vector<Rational> dense(static_cast<std::size_t>(poly.highest_stored()) + 1,
                              Rational(0));
  for (int e = 0; e <= poly.highest_stored(); ++e) {
    dense[static_cast<std::size_t>(e)] = poly.coeff(e);
  }
  return one_minus_substitution(dense);
}

LaurentSeries from_zeta_coeffs(std::span<const Rational> zeta_coeffs) {
  auto dense = one_minus_substitution(zeta_coeffs);
  return LaurentSeries::from_coefficients(0, std::move(dense));
}

}  // namespace fracbdf
