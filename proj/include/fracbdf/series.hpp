#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <limits>
#include <span>
#include <string>
#include <vector>

namespace fracbdf {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// "num/den" in lowest terms, or just "num" when the denominator is 1.
std::string to_fraction_string(const Rational& q);
Rational rational_from_string(const std::string& text);
double to_double(const Rational& q);

/// Truncated Laurent series in the variable s = 1 - zeta with exact rational
/// coefficients.
///
/// Coefficients with exponent above truncation_order() are unknown, not zero;
/// reading one throws. Series whose higher coefficients are identically zero
/// (polynomials, finite Laurent expansions) carry truncation_order() ==
/// kExact. Arithmetic propagates the validity window, so a computation that
/// would depend on unknown coefficients fails loudly instead of zero-filling.
class LaurentSeries {
 public:
  static constexpr int kExact = std::numeric_limits<int>::max() / 4;

  LaurentSeries() = default;  // zero, exactly known

  static LaurentSeries constant(Rational value);
  static LaurentSeries monomial(Rational coefficient, int exponent);
  static LaurentSeries from_coefficients(int lowest_exponent,
                                         std::vector<Rational> coefficients,
                                         int truncation_order = kExact);

  bool is_zero() const { return coeffs_.empty(); }
  bool is_exact() const { return trunc_ == kExact; }
  /// First stored exponent; meaningful only for nonzero series.
  int lowest_exponent() const;
  /// Exponent of the last stored (possibly zero-free) coefficient.
  int highest_stored() const;
  int truncation_order() const { return trunc_; }

  /// Coefficient of s^exponent. Zero inside the known window, throws
  /// std::logic_error past the truncation order.
  Rational coeff(int exponent) const;

  friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b);
  friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b);
  friend LaurentSeries operator-(const LaurentSeries& a);
  friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b);
  friend LaurentSeries operator*(const Rational& c, const LaurentSeries& a);
  friend bool operator==(const LaurentSeries& a, const LaurentSeries& b);

 private:
  void normalize();
  // First exponent at which a nonzero coefficient could still appear.
  int first_unknown() const;

  int low_ = 0;
  std::vector<Rational> coeffs_;  // coeffs_[i] multiplies s^(low_ + i)
  int trunc_ = kExact;
};

/// Multiplicative inverse, valid through s^order. The result's lowest
/// exponent is the negation of the input's. Throws std::domain_error on the
/// zero series.
LaurentSeries invert(const LaurentSeries& a, int order);

/// Non-negative integer power by repeated multiplication.
LaurentSeries pow(const LaurentSeries& a, int exponent);

/// Derivative with respect to s.
LaurentSeries derivative(const LaurentSeries& a);

/// The BDF-k generating polynomial sum_{j=1}^{k} s^j / j, exact in s = 1-zeta.
/// Valid for k = 1..6.
LaurentSeries bdf_generating_poly(int k);

/// Expansion in s of (zeta d/dzeta)^ell applied to 1/(1-zeta), i.e. the
/// generating series of n^ell. A finite Laurent polynomial with pole order
/// ell+1 and leading coefficient ell!.
LaurentSeries power_sum_series(int ell);

/// Re-expresses an exact polynomial in s as dense coefficients in powers of
/// zeta (index = power). Requires lowest_exponent() >= 0 and an exact series;
/// otherwise throws std::domain_error. The coefficient transform is an
/// involution with from_zeta_coeffs.
std::vector<Rational> to_zeta_coeffs(const LaurentSeries& poly);

/// Polynomial given by zeta-power coefficients, re-expanded exactly in s.
LaurentSeries from_zeta_coeffs(std::span<const Rational> zeta_coeffs);

}  // namespace fracbdf
