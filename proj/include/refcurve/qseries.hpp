// Named q-series: refined Eisenstein derivative and discriminant, classical
// forms, eta products, and the substitution y -> y(1+q)^3.
#pragma once

#include "refcurve/series.hpp"

namespace refcurve {

/// sum_{m<=T} m q^m sum_{d|m} [d]_y^2 / d
SeriesQ dg2_tilde(int T);
/// q prod_n (1-q^n)^20 (1-y q^n)^2 (1-q^n/y)^2 through q^T
SeriesQ delta_tilde(int T);
/// 1/24 + sum sigma_1(m) q^m (constant as in the source convention)
SeriesQ g2(int T);
/// sum_n (sum_{d|n, d odd} n/d) q^n
SeriesQ g2bar(int T);
/// q prod_n (1-q^n)^24
SeriesQ delta(int T);

/// prod_n (1-q^n)^{e1} (1-q^{2n})^{e2}; the full eta quotient is
/// q^{prefix} times this series.
struct EtaProduct {
  int e1 = 0, e2 = 0;
  Rational prefix;
  SeriesQ series;
};
EtaProduct eta_product(int e1, int e2, int T);

/// Replace every y^{k} by y^{k} (1+q)^{3k}, result through q^T.
SeriesQ substitute_y_shift(const SeriesQ& f, int T);

/// Check of the divisor-sum identity for (y-2+1/y) * dg2_tilde. `plus_sign`
/// selects e(y^d + y^-d) in the double sum, `g2_offset` the rational c in
/// -2(G2 + c). A nonzero `perturb_at` adds 1 to the left side at that order.
struct IdentityReport {
  bool pass = true;
  int first_failure = -1;
  LaurentY lhs, rhs;  // coefficients at the first failure
};
IdentityReport dg2_footnote_identity_check(int T, bool plus_sign, const Rational& g2_offset,
                                           int perturb_at = -1);

}  // namespace refcurve
