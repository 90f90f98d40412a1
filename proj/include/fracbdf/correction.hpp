#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fracbdf/series.hpp"

namespace fracbdf {

enum class Regime { subdiffusion, diffusion_wave };

std::string to_string(Regime regime);

/// Starting-step correction coefficients for the BDF-k convolution-quadrature
/// schemes, derived over exact rationals.
///
/// a[j-1]  multiplies the initial-value defect at step j (both regimes),
/// b[l-1][j-1]  multiplies the l-th source-derivative defect at step j,
/// c[j-1]  multiplies the initial-velocity defect (diffusion-wave only).
/// k = 1 carries no corrections at all and k = 2 only the single a entry.
/// Intermediate expansion data are retained for audit.
struct CorrectionSet {
  int k = 1;
  Regime regime = Regime::subdiffusion;
  std::vector<Rational> a;                   // a_1 .. a_{k-1}
  std::vector<std::vector<Rational>> b;      // rows l = 1..k-2, columns j = 1..k-1
  std::vector<Rational> c;                   // c_1 .. c_{k-1} (diffusion-wave)

  // Audit trail of the derivation.
  std::vector<Rational> value_expansion;                 // c_0..c_{k-2} behind a
  std::vector<std::vector<Rational>> taylor_rows;        // g_{l,j}
  std::vector<std::vector<Rational>> difference_rows;    // d_{l,j}
};

/// Residual-order certificate for one algebraic criterion: the residual
/// series was expanded over exact rationals and its coefficients proven zero
/// on [zero_from, zero_through]; the first nonzero coefficient beyond that
/// range (the leading error constant) is recorded when one exists within the
/// expansion window.
struct ResidualCertificate {
  std::string criterion;  // "mu", "b", "c-dw", "b-dw"
  int k = 0;
  int ell = -1;  // -1 when the criterion has no derivative index
  int zero_from = 0;
  int zero_through = 0;
  std::optional<std::pair<int, Rational>> first_nonzero;
};

/// a_1..a_{k-1} from the lower-triangular value-correction system. k = 2..6.
std::vector<Rational> derive_a(int k);

/// b_{l,j} rows for the subdiffusion scheme, l = 1..k-2, j = 1..k-1. k = 3..6.
std::vector<std::vector<Rational>> derive_b_subdiffusion(int k);

/// b_{l,j} rows for the diffusion-wave scheme. k = 3..6.
std::vector<std::vector<Rational>> derive_b_diffusion_wave(int k);

/// c_1..c_{k-1} for the diffusion-wave scheme; equals the subdiffusion
/// b_{1,j} row and is cross-checked against an independent derivation from
/// its own residual criterion. k = 3..6.
std::vector<Rational> derive_c(int k);

/// Full coefficient set for order k in the given regime. k = 1..6; k = 1
/// yields an empty (valid) set.
CorrectionSet make_correction_set(int k, Regime regime);

/// Certifies every residual criterion the set must satisfy, over exact
/// rationals. Throws CertificationError on the first violated coefficient.
std::vector<ResidualCertificate> certify(const CorrectionSet& set);

}  // namespace fracbdf
