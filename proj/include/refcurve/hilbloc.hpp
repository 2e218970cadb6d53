// Torus localization on Hilbert schemes of points of toric surfaces, the
// universal series D_1..D_4, and the invariants extracted from them.
#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "refcurve/series.hpp"

namespace refcurve {

/// Integer linear form a*e1 + b*e2 in the two torus parameters.
using Weight = std::array<long, 2>;

struct Partition {
  std::vector<int> parts;  // weakly decreasing, positive

  int size() const;
  /// Cells (i, j): i runs along a row (first weight), j counts rows.
  std::vector<std::array<int, 2>> cells() const;
  int arm(int i, int j) const;
  int leg(int i, int j) const;
};

/// All partitions of n, in reverse lexicographic order.
std::vector<Partition> partitions_of(int n);

struct ToricChart {
  Weight w1{}, w2{};  // tangent weights at the fixed point
  Weight m{};         // weight of the bundle fibre
};

/// (L^2, L.K, K^2, c_2); everything else follows by Riemann-Roch.
struct CobordismClass {
  Rational L2, LK, K2, c2;

  Rational chi_O() const { return (K2 + c2) / 12; }
  Rational chi_L() const { return chi_O() + (L2 - LK) / 2; }
  Rational chi_L_dual() const { return chi_O() + (L2 + LK) / 2; }
  Rational genus() const { return 1 + (L2 + LK) / 2; }
  std::array<Rational, 4> vec() const { return {L2, LK, K2, c2}; }
  bool operator==(const CobordismClass& o) const { return vec() == o.vec(); }
};

struct ToricSurfaceModel {
  std::string name;  // "p2" or "p1xp1"
  std::vector<int> bundle;
  std::vector<ToricChart> charts;

  static ToricSurfaceModel p2(int d);
  static ToricSurfaceModel p1xp1(int a, int b);
  /// The four numbers computed by localization on the charts.
  CobordismClass cobordism() const;
  /// Same numbers from the standard intersection theory of the surface.
  CobordismClass expected_cobordism() const;
  std::string key() const;
};

using FixedPoint = std::vector<Partition>;  // one partition per chart

std::vector<FixedPoint> fixed_points(const ToricSurfaceModel& s, int n);

struct LocalWeights {
  std::vector<Weight> tangent;  // 2|lambda| entries
  std::vector<Weight> bundle;   // |lambda| entries
};

LocalWeights local_weights(const Partition& p, const ToricChart& c);

struct LocalizationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LocalizationOptions {
  int n_max = 5;
  int x_ord = 6;
  bool pure_genus = false;  // drop the bundle factors
  /// Directions along which the torus weights are scaled to zero; the first
  /// gives the result, the second is a recomputation that must agree.
  std::array<long, 2> direction{2, 3};
  std::array<long, 2> check_direction{5, 7};
  bool check_independence = true;
  int threads = 1;
};

/// Sum_n q^n D_n(y, x) through (x^x_ord, q^n_max); coefficients are
/// polynomials in y. In pure-genus mode only the x^0 row is filled and it
/// holds chi_{-y} of the Hilbert schemes.
SeriesXQ d_series(const ToricSurfaceModel& s, const LocalizationOptions& opt);

/// The same series with y specialized to y0 (a single evaluation point).
SeriesXQ d_series_at(const ToricSurfaceModel& s, const LocalizationOptions& opt, const Rational& y0);

/// rows[n][k] = chi(S^[n], Lambda^k (L^[n])^dual) for n <= opt.n_max, by
/// localization of the Todd genus (opt.x_ord and opt.pure_genus are unused).
std::vector<std::vector<Rational>> scala_series(const ToricSurfaceModel& s, const LocalizationOptions& opt);

/// f(x) = x (1 - y e^{-x(1-y)}) / (1 - e^{-x(1-y)}), through x^ord.
SeriesQ hirzebruch_f(int ord);
/// The same with y = y0.
SeriesQ hirzebruch_f_at(int ord, const Rational& y0);

/// The four basis pairs (P2, O), (P1xP1, O), (P1xP1, O(1,0)), (P1xP1, O(1,-1)).
std::array<ToricSurfaceModel, 4> basis_models();

struct UniversalSeries {
  int x_ord = 0, q_ord = 0;
  std::array<SeriesXQ, 4> log_d;        // log D_i
  std::array<SeriesXQ, 4> log_d_tilde;  // log D~_i
};

/// Solves log D^{S_j, L_j} = sum_i c_{j,i} log D_i on the four basis inputs.
UniversalSeries universal_solve(const std::array<SeriesXQ, 4>& basis_d,
                                const std::array<CobordismClass, 4>& basis_classes);
/// Localizes the basis pairs and solves.
UniversalSeries universal_from_localization(const LocalizationOptions& opt);

/// D^{S,L} (tilde = false) or D~^{S,L} = (Q/q)^{g-1} D^{S,L} (tilde = true).
SeriesXQ evaluate_cobordism(const UniversalSeries& u, const CobordismClass& c, bool tilde);

/// (q / Q)^e = ((1-q)(1-qy))^e through q^T.
SeriesQ q_over_Q_pow(const Rational& e, int T);

struct ChiNExtract {
  std::vector<LaurentY> chi;  // chi_{-y}(C^[n]) for n = 0..n_max
  std::vector<LaurentY> N;    // N^0..N^{n_max}
  /// Bold N^i(y, H) mod H^{delta+1}: row i holds the H-coefficients.
  std::vector<std::vector<LaurentY>> N_bold;
};

/// From D^{S,L} (x, q) extract chi_{-y} of the relative Hilbert schemes over a
/// P^delta and the invariants N^i. Needs x_ord >= delta.
ChiNExtract chi_and_N_extract(const SeriesXQ& d, int delta, const Rational& genus);
/// The same for a series specialized at y = y0 (uses the matching f).
ChiNExtract chi_and_N_extract_at(const SeriesXQ& d, int delta, const Rational& genus, const Rational& y0);

/// Substitute q = q(Q) in every x-row.
SeriesXQ to_Q_coordinates(const SeriesXQ& d_tilde);

struct DiagonalResult {
  std::array<SeriesQ, 4> A;  // diagonals of D~_i in s = xQ
};

/// A_i = x^k Q^k diagonal of D~_i, through s^order.
DiagonalResult diagonal_a_series(const UniversalSeries& u, int order);
/// sum_d N^d_{d,[S,L]} s^d through s^order, from D~^{S,L} in (x, Q) coordinates.
SeriesQ diagonal_of(const SeriesXQ& d_tilde_Q, int order);

struct DlconjReport {
  bool pass = true;
  std::vector<std::array<int, 2>> violations;  // (k, Q-degree)
};

/// deg_Q Coeff_{x^k} <= k for every k, on a series in (x, Q).
DlconjReport dlconj_check(const SeriesXQ& d_tilde_Q);

}  // namespace refcurve
