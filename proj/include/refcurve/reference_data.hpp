// Published reference coefficients used as acceptance oracles.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "refcurve/series.hpp"

namespace refcurve::reference {

/// Polynomial in y given by ascending integer coefficients from y^0.
LaurentY poly_y(const std::vector<long>& ascending);

/// Irreducible tables N_0(y, t): entry delta is the polynomial in y of t^delta.
using IrrTable = std::vector<std::vector<long>>;
/// Plane curves of degree 1..5.
const std::map<int, IrrTable>& irreducible_p2();
/// P1 x P1, bidegrees (2,2), (2,3), (2,4), (3,3); (1,k) is 1 for every k.
const std::map<std::pair<int, int>, IrrTable>& irreducible_p1p1();

/// B_1(y, q), B_2(y, q) modulo q^11.
SeriesQ b1();
SeriesQ b2();
/// B_1(-1, q), B_2(-1, q) modulo q^15.
SeriesQ b1_minus_one();
SeriesQ b2_minus_one();
/// C_1..C_4 modulo y^4, as series in q with polynomial-in-y coefficients.
/// Each is a list over y-degree of q-polynomials given by ascending coefficients.
const std::vector<std::vector<std::vector<long>>>& c_series();

/// Single-germ tables: h -> ascending coefficients in L.
using GermTable = std::map<int, std::vector<long>>;
const GermTable& e6_table();
const GermTable& e8_table();
/// The table printed under the label A9.
const GermTable& a9_printed_table();

}  // namespace refcurve::reference
