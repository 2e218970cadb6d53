#include "refcurve/irred.hpp"

#include <stdexcept>

namespace refcurve {

SurfaceLB SurfaceFamily::surface(const std::vector<int>& key) const {
  if (kind == SurfaceLB::Kind::P2) {
    if (key.size() != 1) throw std::invalid_argument("P2 divisor keys have one entry");
    return SurfaceLB::p2(key[0]);
  }
  if (key.size() != 2) throw std::invalid_argument("ruled divisor keys have two entries");
  return SurfaceLB::ruled(e, key[0], key[1]);
}

bool SurfaceFamily::is_e(const std::vector<int>& key) const {
  return kind == SurfaceLB::Kind::Ruled && key.size() == 2 && key[0] == 0 && key[1] == 1;
}

bool SurfaceFamily::excluded(const std::vector<int>& key) const {
  if (kind == SurfaceLB::Kind::P2) return false;
  if (e > 0) return is_e(key);
  return exclude_rulings && key.size() == 2 && key[0] + key[1] == 1;
}

LaurentY DegreeTable::at(const Key& k, int delta) const {
  auto it = values.find({k, delta});
  if (it == values.end()) throw std::out_of_range("DegreeTable: entry outside the table");
  return it->second;
}

std::vector<DegreeTable::Key> DegreeTable::keys() const {
  std::vector<Key> out;
  if (bound.size() == 1) {
    for (int d = 1; d <= bound[0]; ++d) out.push_back({d});
  } else {
    for (int n = 0; n <= bound[0]; ++n)
      for (int m = 0; m <= bound[1]; ++m)
        if (n + m > 0) out.push_back({n, m});
  }
  return out;
}

namespace {

Rational factorial(long n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return Rational(f);
}

bool usable(const SurfaceFamily& fam, const DegreeTable::Key& k) {
  if (fam.excluded(k)) return false;
  SurfaceLB s = fam.surface(k);
  return bundle_numerics(s).EL >= 0;
}

NovikovSeries to_novikov(const DegreeTable& t) {
  NovikovSeries nv(t.bound);
  for (const auto& [kd, v] : t.values) {
    const auto& [k, delta] = kd;
    if (!usable(t.family, k)) continue;
    long z = bundle_numerics(t.family.surface(k)).dimL - delta;
    if (z < 0) continue;
    nv.add(k, static_cast<int>(z), v * (1 / factorial(z)));
  }
  return nv;
}

DegreeTable from_novikov(const NovikovSeries& nv, const DegreeTable& shape, bool irreducible) {
  DegreeTable out = shape;
  out.irreducible = irreducible;
  out.values.clear();
  for (const auto& kd : shape.values) {
    const auto& [k, delta] = kd.first;
    if (!usable(shape.family, k)) {
      out.values[kd.first] = kd.second;
      continue;
    }
    long z = bundle_numerics(shape.family.surface(k)).dimL - delta;
    out.values[kd.first] = nv.coeff(k, static_cast<int>(z)) * factorial(z);
  }
  return out;
}

}  // namespace

DegreeTable full_table(SurfaceFamily fam, const DegreeTable::Key& bound, int max_delta, MemoCache& cache) {
  DegreeTable t;
  t.family = fam;
  t.bound = bound;
  t.max_delta = max_delta;
  for (const auto& k : t.keys()) {
    SurfaceLB s = fam.surface(k);
    BundleNumerics b = bundle_numerics(s);
    if (b.EL < 0) continue;
    for (int delta = 0; delta <= std::min<long>(max_delta, b.dimL); ++delta)
      t.values[{k, delta}] = severi_degree(s, delta, Flavor::Normalized, cache);
  }
  return t;
}

// Entries with delta <= max_delta are exact: products only raise delta.
DegreeTable log_transform_irreducible(const DegreeTable& full) {
  if (full.irreducible) throw std::invalid_argument("log transform expects a full table");
  return from_novikov(log1p(to_novikov(full)), full, true);
}

DegreeTable exp_transform_reducible(const DegreeTable& irr) {
  if (!irr.irreducible) throw std::invalid_argument("exp transform expects an irreducible table");
  return from_novikov(expm1(to_novikov(irr)), irr, false);
}

std::vector<LaurentY> irreducible_polynomial(const DegreeTable& irr, const DegreeTable::Key& k) {
  std::vector<LaurentY> out;
  for (int delta = 0;; ++delta) {
    auto it = irr.values.find({k, delta});
    if (it == irr.values.end()) break;
    out.push_back(it->second.shift(2 * delta));
  }
  while (!out.empty() && out.back().is_zero()) out.pop_back();
  return out;
}

}  // namespace refcurve
