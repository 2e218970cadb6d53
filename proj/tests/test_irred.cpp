#include "test_util.hpp"

#include "refcurve/irred.hpp"
#include "refcurve/reference_data.hpp"

using namespace refcurve;

namespace {

LaurentY Y(int k, long c = 1) { return LaurentY::y_pow(k, Rational(c)); }

// The printed polynomials stop at t^g; with `exact` nothing may follow.
void check_against(const DegreeTable& irr, const DegreeTable::Key& k, const reference::IrrTable& t,
                   bool exact = true) {
  auto got = irreducible_polynomial(irr, k);
  if (exact)
    REQUIRE(got.size() == t.size());
  else
    REQUIRE(got.size() >= t.size());
  for (std::size_t i = 0; i < t.size(); ++i) CHECK(got[i] == reference::poly_y(t[i]));
}

}  // namespace

TEST_CASE("plane tables up to degree 5") {
  MemoCache c;
  DegreeTable full = full_table(SurfaceFamily::p2(), {5}, 20, c);
  DegreeTable irr = log_transform_irreducible(full);
  for (const auto& [d, t] : reference::irreducible_p2()) check_against(irr, {d}, t);
  // lines and conics: nothing reducible at delta = 0, and only line pairs above
  for (int delta = 0; delta <= 2; ++delta) CHECK(irr.at({1}, delta) == full.at({1}, delta));
  CHECK(irr.at({2}, 0) == full.at({2}, 0));
  CHECK(irreducible_polynomial(irr, {2}).size() == 1);
  CHECK(full.at({2}, 1) == LaurentY(3L));
  CHECK(irreducible_polynomial(irr, {3})[1] == Y(2) + Y(1, 10) + LaurentY(1L));
}

TEST_CASE("P1 x P1 tables, rulings left out of the sum") {
  MemoCache c;
  DegreeTable full = full_table(SurfaceFamily::ruled(0), {3, 4}, 20, c);
  DegreeTable irr = log_transform_irreducible(full);
  for (const auto& [nm, t] : reference::irreducible_p1p1()) {
    check_against(irr, {nm.first, nm.second}, t, false);
    if (nm.first != nm.second && nm.second <= 3) check_against(irr, {nm.second, nm.first}, t, false);
  }
  // E u (2,2) through 9 points is not subtracted in this convention
  CHECK(full.at({2, 3}, 2).specialize(1) == 105);
  CHECK(irr.at({2, 3}, 2).specialize(1) == 105);
}

TEST_CASE("P1 x P1 geometric irreducible counts") {
  MemoCache c;
  DegreeTable full = full_table(SurfaceFamily::ruled(0, false), {3, 4}, 20, c);
  DegreeTable irr = log_transform_irreducible(full);
  for (int k = 0; k <= 4; ++k) {
    auto p = irreducible_polynomial(irr, {1, k});
    REQUIRE(p.size() == 1);
    CHECK(p[0] == LaurentY(1L));
  }
  // rational curves through 2n + 2m - 1 points: 12, 96, 640, 3510
  auto rational = [&](int n, int m) { return irr.at({n, m}, (n - 1) * (m - 1)).specialize(1); };
  CHECK(rational(2, 2) == 12);
  CHECK(rational(2, 3) == 96);
  CHECK(rational(3, 2) == 96);
  CHECK(rational(2, 4) == 640);
  CHECK(rational(3, 3) == 3510);
  // only one-node curves agree with the other convention
  DegreeTable printed = log_transform_irreducible(full_table(SurfaceFamily::ruled(0), {3, 4}, 20, c));
  CHECK(printed.at({2, 3}, 1) == irr.at({2, 3}, 1));
  CHECK(printed.at({2, 3}, 2) != irr.at({2, 3}, 2));
}

TEST_CASE("exp transform examples and round trip") {
  MemoCache c;
  DegreeTable full = full_table(SurfaceFamily::p2(), {5}, 20, c);
  DegreeTable irr = log_transform_irreducible(full);
  DegreeTable back = exp_transform_reducible(irr);
  CHECK(back.values == full.values);
  CHECK(back.at({3}, 2) == LaurentY(21L));
  CHECK(back.at({3}, 2).specialize(1) == 21);
  CHECK(back.at({3}, 3).specialize(1) == 15);

  // rebuild full from the printed irreducible tables
  DegreeTable printed = irr;
  for (auto& [kd, v] : printed.values) {
    const auto& t = reference::irreducible_p2().at(kd.first[0]);
    int delta = kd.second;
    v = delta < static_cast<int>(t.size()) ? reference::poly_y(t[static_cast<std::size_t>(delta)]).shift(-2 * delta)
                                           : LaurentY();
  }
  DegreeTable rebuilt = exp_transform_reducible(printed);
  CHECK(rebuilt.at({3}, 2).specialize(1) == 21);
  CHECK(rebuilt.at({3}, 3).specialize(1) == 15);
  CHECK(rebuilt.values == full.values);
}

TEST_CASE("irreducible invariants: vanishing, positivity, symmetry") {
  MemoCache c;
  for (auto fam : {SurfaceFamily::p2(), SurfaceFamily::ruled(0, false)}) {
    DegreeTable::Key bound = fam.kind == SurfaceLB::Kind::P2 ? DegreeTable::Key{6} : DegreeTable::Key{4, 4};
    DegreeTable irr = log_transform_irreducible(full_table(fam, bound, 40, c));
    for (const auto& [kd, v] : irr.values) {
      BundleNumerics b = bundle_numerics(fam.surface(kd.first));
      if (kd.second > b.g) CHECK(v.is_zero());
      CHECK(v.is_symmetric());
      CHECK(v.shift(2 * kd.second).is_nonnegative());
      CHECK(v.has_integer_coeffs());
    }
  }
}

TEST_CASE("Sigma_1 leaves out the negative section") {
  MemoCache c;
  SurfaceFamily fam = SurfaceFamily::ruled(1);
  CHECK(fam.excluded({0, 1}));
  CHECK_FALSE(fam.excluded({1, 0}));
  DegreeTable irr = log_transform_irreducible(full_table(fam, {3, 2}, 20, c));
  // an irreducible curve in |2F + E| carries no node
  for (int delta = 1; delta <= 4; ++delta) CHECK(irr.at({2, 1}, delta).is_zero());
  for (const auto& [kd, v] : irr.values) CHECK(v.shift(2 * kd.second).is_nonnegative());
}
