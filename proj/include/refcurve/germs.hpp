// Refined invariants of a single planar curve singularity.
//
// Classes in the Grothendieck ring are polynomials in L, the class of the
// affine line, stored as LaurentY with L = y.
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "refcurve/series.hpp"

namespace refcurve {

using LPoly = LaurentY;

/// L^k with coefficient c.
inline LPoly l_pow(int k, long c = 1) { return LaurentY::y_pow(k, Rational(c)); }
/// Polynomial in L from ascending integer coefficients.
LPoly l_poly(const std::vector<long>& ascending);
/// Ascending integer coefficients; throws unless the input lies in Z[L].
std::vector<long> l_coeffs(const LPoly& p);

enum class InfiniteFamily { A, D, E };

char family_letter(InfiniteFamily f);

struct GermError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A germ, described through the infinite-type series whose initial terms it
/// shares, its branch count and its delta invariant.
struct GermClass {
  InfiniteFamily family = InfiniteFamily::A;
  int branches = 1;
  int delta = 1;
  std::string label;

  int milnor() const { return 2 * delta - branches + 1; }

  /// A_mu (mu >= 1), D_mu (mu >= 4), E6, E7, E8, and "A9-as-printed"
  /// (the table printed under A9, which is the mu = 8 germ).
  static GermClass from_label(const std::string& label);
  /// Checks the branch/delta data against the ADE rules for this family.
  void validate() const;
};

/// Series sum [X_inf^[n]] q^n through q^T.
SeriesQ infinite_germ_series(InfiniteFamily family, int T);

/// f(q) = (1-q)^b Gamma(q) through q^delta, completed by
/// f_{2 delta - n} = L^{delta - n} f_n. Degree at most 2 delta.
/// Throws GermError when the data cannot come from a germ (the completed f
/// does not produce vanishing invariants above delta).
std::vector<LPoly> f_polynomial(const GermClass& g);

/// The N~^0..N~^delta with f(q) = sum_i N~^i q^i ((1-q)(1-qL))^{delta-i}.
/// Throws GermError if a residual survives past q^delta.
std::vector<LPoly> extract_tilde_N(const std::vector<LPoly>& f, int delta);

/// N~^i of a germ.
std::vector<LPoly> tilde_N(const GermClass& g);

/// Simply laced graph with a set of filled vertices (0-based indices).
struct DynkinDiagram {
  int n = 0;
  std::vector<std::vector<int>> adj;
  std::vector<int> filled;  // sorted

  void add_edge(int a, int b);
  bool is_filled(int v) const;
  int valence(int v) const { return static_cast<int>(adj[static_cast<std::size_t>(v)].size()); }

  static DynkinDiagram path(int n);
  /// The ADE tree with mu vertices for the family letter.
  static DynkinDiagram ade(InfiniteFamily f, int mu);
};

/// Entry h is sum_{w + b = h} n_{w,b} L^b, where n_{w,b} counts independent
/// vertex sets with w unfilled and b filled vertices. Runs up to the
/// independence number.
std::vector<LPoly> independent_set_poly(const DynkinDiagram& d);

/// First filling of size delta (lexicographic in vertex order) whose
/// independent-set polynomials equal the target at every h.
std::optional<DynkinDiagram> search_coloring(const DynkinDiagram& graph, int delta,
                                             const std::vector<LPoly>& target, int threads = 1);

/// The stored coloring of an ADE germ, validated against the series.
DynkinDiagram catalog_coloring(const GermClass& g);

/// sum_i n^{i,R} u^i = (1+u)^{d+} (1-u)^{d-} (1+u^2)^{d0}, as a polynomial
/// in u (stored with u = y).
LaurentY real_nodal_invariants(int elliptic, int hyperbolic, int conjugate_pairs);

struct PositivityReport {
  bool pass = true;
  int first_h = -1;     // first N~^h with a negative coefficient
  int first_power = -1; // the offending power of L
  std::vector<LPoly> values;
};

PositivityReport positivity_scan(const GermClass& g);

}  // namespace refcurve
