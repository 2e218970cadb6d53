// Checks of the generating-function statements against computed and
// tabulated data. Two data routes are kept apart: the node recursion
// (fast, relies on recursion values agreeing with universal ones) and
// localization (slow, assumption-free).
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "refcurve/chrec.hpp"
#include "refcurve/hilbloc.hpp"
#include "refcurve/io.hpp"

namespace refcurve::verify {

enum class Route { Recursion, Localization };
const char* route_name(Route r);

struct FitReport {
  std::string target;
  int order = 0;  // coefficients 0..order-1 compared
  bool pass = true;
  std::vector<LaurentY> fitted, reference;
  int first_mismatch = -1;
  std::string note;
};

/// Coefficientwise comparison of q^0..q^{order-1}.
FitReport compare(const std::string& target, const SeriesQ& fitted, const SeriesQ& reference, int order);
/// A check without a series comparison.
FitReport flag(const std::string& target, bool pass, const std::string& note);
Json to_json(const FitReport& r);
bool all_pass(const std::vector<FitReport>& rs);

/// Weighting of one (S, L) in the deepest-stratum formula.
struct GformSample {
  std::string label;
  Rational chi_L, chi_O, K2, LK;
  std::vector<LaurentY> nbar;  // normalized N^delta_delta for delta = 0..
};

/// Which specialization of the formula is fitted.
enum class Denominator {
  Generic,        // indeterminate y with D~G2 and Delta~
  MinusOne,       // y = -1: Delta~(-1, q) = q prod (1-q^n)^16 (1-q^{2n})^4
  MinusOneEta2,   // y = -1 with the exponent 2 on (1-q^{2n})
};
const char* denominator_name(Denominator d);

struct BFit {
  SeriesQ b1, b2;
};

/// Solves for B1, B2 mod q^T from the first two samples. Additional samples
/// are checked against the fit; mismatches land in `consistency`.
BFit solve_B(const std::vector<GformSample>& samples, int T, Denominator den,
             std::vector<FitReport>* consistency = nullptr);

/// Normalized recursion values N^{L,delta} (y generic) or W^{L,delta}_trop
/// (at_minus_one), delta < T.
GformSample recursion_sample(const SurfaceLB& s, int T, bool at_minus_one, MemoCache& cache);
/// y^{-delta} N^delta_delta from the universal series, delta <= order.
GformSample localization_sample(const UniversalSeries& u, const CobordismClass& c, const std::string& label,
                                int order);

/// B fits against the tabulated B1, B2 mod q^T (recursion route) with the
/// two-family overdetermination check.
std::vector<FitReport> gconj_checks(int T, MemoCache& cache);
/// y = -1 fits mod q^T with both denominators, and the comparison with the
/// y = -1 specialization of the generic fit mod q^{min(T, 11)}.
std::vector<FitReport> gsconj_checks(int T, MemoCache& cache);

/// K3 and abelian classes: 1/Delta~ against the diagonal, A1 and A4
/// derived from the closed forms against the localized ones.
std::vector<FitReport> k3_abelian_checks(const UniversalSeries& u, int order);
/// (y - 2 + 1/y)^{k-1} D~G2^k / Delta~ through q^T.
SeriesQ mpt_series(int k, int T);
/// A1 from the abelian series, A4 from 1/Delta~ and A1, both through s^order.
SeriesQ a1_from_abelian(int order);
SeriesQ a4_from_k3(const SeriesQ& a1, int order);

/// y = 0: recursion limit vs closed form on sampled keys; chi_0 closed form,
/// exterior-power identity and N^l(0) by localization at y = 0.
std::vector<FitReport> chi0_checks(int d_max, int delta_max, int n_max, MemoCache& cache);
std::vector<FitReport> chi01_checks(const UniversalSeries& u, int order);

/// A1..A4 through s^T from recursion values on P2 and P1 x P1.
std::array<SeriesQ, 4> a_series_from_recursion(int T, MemoCache& cache);
std::array<SeriesQ, 4> a_series_from_localization(const UniversalSeries& u, int order);

/// Repackaging of A into F. `derived` uses the exponents that follow from
/// Riemann-Roch, otherwise the literal alternative F4 = A4^12 / A1,
/// F3 = A3 / (A1^{1/12} A4).
std::array<SeriesQ, 4> f_series(const std::array<SeriesQ, 4>& A, bool derived);
std::array<SeriesQ, 4> c_series(const std::array<SeriesQ, 4>& F, int T);
/// The tabulated C_i as series through q^T.
std::array<SeriesQ, 4> c_reference(int T);
/// Keeps only y-powers below y_ord.
SeriesQ truncate_y(const SeriesQ& s, int y_ord);

std::vector<FitReport> ciconj_checks(int T, Route route, MemoCache& cache, const UniversalSeries* u = nullptr);
std::vector<FitReport> yconj_checks(int T, MemoCache& cache);

/// Recursion N^{L,delta} against localization N^delta_delta.
std::vector<FitReport> refsev_checks(const UniversalSeries& u, MemoCache& cache);
/// W^{d,delta}_trop against the universal normalized value at y = -1.
std::vector<FitReport> welam_checks(const UniversalSeries& u, MemoCache& cache);
/// Degree bound on D~ in (x, Q) for the basis pairs, plane classes and K3.
std::vector<FitReport> dlconj_checks(const UniversalSeries& u);

}  // namespace refcurve::verify
