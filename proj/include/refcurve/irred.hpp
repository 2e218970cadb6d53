// Exp/log transform between all and irreducible (refined) Severi degrees,
// graded by divisor class in a Novikov ring.
#pragma once

#include <map>
#include <vector>

#include "refcurve/chrec.hpp"
#include "refcurve/series.hpp"

namespace refcurve {

/// Divisor classes: {d} on P2, {n, m} for nF + mE on Sigma_e.
struct SurfaceFamily {
  SurfaceLB::Kind kind = SurfaceLB::Kind::P2;
  int e = 0;

  /// On Sigma_0 both rulings F and E are fixed-class lines. With this flag set
  /// (the tabulated convention) neither enters the Novikov sum; cleared, both
  /// do, which is the geometric count of irreducible curves.
  bool exclude_rulings = true;

  static SurfaceFamily p2() { return {}; }
  static SurfaceFamily ruled(int e, bool exclude_rulings = true) {
    return {SurfaceLB::Kind::Ruled, e, exclude_rulings};
  }
  SurfaceLB surface(const std::vector<int>& key) const;
  bool is_e(const std::vector<int>& key) const;
  /// Classes left out of the exp/log sum: E when negative (e > 0), and the
  /// two rulings on Sigma_0 under exclude_rulings.
  bool excluded(const std::vector<int>& key) const;
};

struct DegreeTable {
  using Key = std::vector<int>;
  SurfaceFamily family;
  Key bound;
  int max_delta = 0;
  bool irreducible = false;
  /// (L, delta) -> normalized value N-bar (or N-bar_0 when irreducible).
  std::map<std::pair<Key, int>, LaurentY> values;

  LaurentY at(const Key& k, int delta) const;
  /// All keys inside the bound, nonzero, in lexicographic order.
  std::vector<Key> keys() const;
};

/// N-bar^{L, delta} from the recursion for every L in the box and
/// delta <= min(max_delta, dim|L|).
DegreeTable full_table(SurfaceFamily fam, const DegreeTable::Key& bound, int max_delta, MemoCache& cache);

DegreeTable log_transform_irreducible(const DegreeTable& full);
DegreeTable exp_transform_reducible(const DegreeTable& irr);

/// sum_delta y^delta N-bar_0^{L,delta} t^delta as a coefficient list in t.
std::vector<LaurentY> irreducible_polynomial(const DegreeTable& irr, const DegreeTable::Key& k);

}  // namespace refcurve
