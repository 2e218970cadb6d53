#include "refcurve/reference_data.hpp"

namespace refcurve::reference {

LaurentY poly_y(const std::vector<long>& ascending) {
  LaurentY r;
  for (std::size_t i = 0; i < ascending.size(); ++i)
    if (ascending[i] != 0) r += LaurentY::y_pow(static_cast<int>(i), Rational(ascending[i]));
  return r;
}

const std::map<int, IrrTable>& irreducible_p2() {
  static const std::map<int, IrrTable> t = {
      {1, {{1}}},
      {2, {{1}}},
      {3, {{1}, {1, 10, 1}}},
      {4, {{1}, {3, 21, 3}, {3, 33, 153, 33, 3}, {1, 13, 94, 404, 94, 13, 1}}},
      {5,
       {{1},
        {6, 36, 6},
        {15, 156, 540, 156, 15},
        {20, 268, 1555, 4229, 1555, 268, 20},
        {15, 228, 1674, 7407, 18207, 7407, 1674, 228, 15},
        {6, 96, 792, 4398, 17190, 42228, 17190, 4398, 792, 96, 6},
        {1, 16, 139, 867, 4203, 16377, 44098, 16377, 4203, 867, 139, 16, 1}}},
  };
  return t;
}

const std::map<std::pair<int, int>, IrrTable>& irreducible_p1p1() {
  static const std::map<std::pair<int, int>, IrrTable> t = {
      {{2, 2}, {{1}, {1, 10, 1}}},
      {{2, 3}, {{1}, {2, 16, 2}, {1, 12, 79, 12, 1}}},
      {{2, 4}, {{1}, {3, 22, 3}, {3, 36, 174, 36, 3}, {1, 14, 117, 596, 117, 14, 1}}},
      {{3, 3},
       {{1},
        {4, 26, 4},
        {6, 64, 256, 64, 6},
        {4, 52, 332, 1168, 332, 52, 4},
        {1, 14, 109, 636, 2430, 636, 109, 14, 1}}},
  };
  return t;
}

namespace {

struct Row {
  int sign;
  std::vector<long> asc;  // ascending in y, divided by y^shift
  int shift;
};

SeriesQ from_rows(const std::vector<Row>& rows) {
  SeriesQ s(static_cast<int>(rows.size()) - 1, 0);
  for (std::size_t k = 0; k < rows.size(); ++k)
    s.at(static_cast<int>(k)) = poly_y(rows[k].asc).shift(-2 * rows[k].shift) * Rational(rows[k].sign);
  return s;
}

SeriesQ from_ints(const std::vector<long>& c) {
  SeriesQ s(static_cast<int>(c.size()) - 1, 0);
  for (std::size_t k = 0; k < c.size(); ++k) s.at(static_cast<int>(k)) = LaurentY(c[k]);
  return s;
}

}  // namespace

SeriesQ b1() {
  return from_rows({
      {1, {1}, 0},
      {-1, {1}, 0},
      {-1, {1, 3, 1}, 1},
      {1, {1, 10, 17, 10, 1}, 2},
      {-1, {18, 87, 135, 87, 18}, 2},
      {1, {12, 210, 728, 1061, 728, 210, 12}, 3},
      {-1, {2, 259, 2102, 5952, 8236, 5952, 2102, 259, 2}, 4},
      {1, {162, 3606, 19668, 48317, 64253, 48317, 19668, 3606, 162}, 4},
      {-1, {47, 3789, 41999, 177800, 392361, 505678, 392361, 177800, 41999, 3789, 47}, 5},
      {1, {5, 2416, 60202, 445989, 1576410, 3197831, 4018919, 3197831, 1576410, 445989, 60202, 2416, 5}, 6},
      {-1,
       {896, 58504, 793194, 4483755, 13818256, 26192369, 32243357, 26192369, 13818256, 4483755, 793194, 58504, 896},
       6},
  });
}

SeriesQ b2() {
  // printed as 1/((1 - y q)(1 - q/y)) times this bracket
  SeriesQ bracket = from_rows({
      {1, {1}, 0},
      {1, {3}, 0},
      {-1, {3, 1, 3}, 1},
      {1, {1, 8, 18, 8, 1}, 2},
      {-1, {13, 53, 76, 53, 13}, 2},
      {1, {7, 100, 316, 455, 316, 100, 7}, 3},
      {-1, {1, 112, 779, 2076, 2819, 2076, 779, 112, 1}, 4},
      {1, {67, 1243, 6129, 14386, 18870, 14386, 6129, 1243, 67}, 4},
      {-1, {19, 1281, 12417, 48879, 104034, 132579, 104034, 48879, 12417, 1281, 19}, 5},
      {1, {2, 822, 17542, 117829, 393703, 775411, 965540, 775411, 393703, 117829, 17542, 822, 2}, 6},
      // y^2 entry as printed (2070742); its mirror at y^10 reads 207074
      {-1,
       {310, 17206, 2070742, 1085712, 3197506, 5913778, 7223539, 5913778, 3197506, 1085712, 207074, 17206, 310},
       6},
  });
  const int T = bracket.trunc();
  SeriesQ a = SeriesQ::constant(LaurentY(1L), T), b = SeriesQ::constant(LaurentY(1L), T);
  a.at(1) = -LaurentY::y_pow(1);
  b.at(1) = -LaurentY::y_pow(-1);
  return bracket * inverse(a * b);
}

SeriesQ b1_minus_one() {
  return from_ints({1, -1, -1, -1, 3, 1, -22, 67, -42, -319, 1207, -1409, -3916, 20871, -34984});
}

SeriesQ b2_minus_one() {
  return from_ints({1, 1, 2, -1, 4, 2, -11, 24, 4, -122, 313, -162, -1314, 4532, -4746});
}

const std::vector<std::vector<std::vector<long>>>& c_series() {
  static const std::vector<std::vector<std::vector<long>>> c = {
      {{1}, {0, 4, 2}, {0, 1, -7, 12, 15, 3}, {0, 0, -6, 56, -104, -112, 26, 32, 4}},
      {{1}, {0, -2, -6, -2}, {0, 0, 5, 48, 35, 6, 1}, {0, 0, 0, 14, -390, -286, 60, 52}},
      {{1}, {0, -1, -3, -1}, {0, 0, 1, 16, 2, -6, -1}, {0, 0, 0, 15, -130, 66, 199, 65}},
      {{1}, {0, 6, 18, 10}, {0, 0, 18, 64, 219, 222, 67}, {0, 0, 0, -44, 336, 72, 952, 2328, 1608, 352}},
  };
  return c;
}

const GermTable& e6_table() {
  static const GermTable t = {{0, {1}}, {1, {3, 3}}, {2, {3, 4, 3}}, {3, {1, 1, 2, 1}}};
  return t;
}

const GermTable& e8_table() {
  static const GermTable t = {{0, {1}}, {1, {4, 4}}, {2, {6, 9, 6}}, {3, {4, 6, 7, 4}}, {4, {1, 1, 2, 2, 1}}};
  return t;
}

const GermTable& a9_printed_table() {
  static const GermTable t = {{0, {1}}, {1, {4, 4}}, {2, {6, 9, 6}}, {3, {4, 6, 6, 4}}, {4, {1, 1, 1, 1, 1}}};
  return t;
}

}  // namespace refcurve::reference
