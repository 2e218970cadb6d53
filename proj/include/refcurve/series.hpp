// Truncated power series over LaurentY: one variable (q), two variables (x, q),
// and divisor-graded Novikov series.
#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "refcurve/laurent.hpp"

namespace refcurve {

/// Raised when a coefficient beyond the truncation order is requested.
struct TruncationError : std::out_of_range {
  using std::out_of_range::out_of_range;
};

/// Truncated Laurent series sum_{k >= offset} c_k q^k, valid through q^trunc.
class SeriesQ {
 public:
  SeriesQ() = default;
  /// Zero series valid through q^trunc.
  explicit SeriesQ(int trunc, int offset = 0);
  SeriesQ(std::vector<LaurentY> coeffs, int trunc, int offset = 0);

  static SeriesQ constant(const LaurentY& c, int trunc);
  /// c * q^k valid through q^trunc.
  static SeriesQ monomial(int k, const LaurentY& c, int trunc);

  int trunc() const { return trunc_; }
  int offset() const { return offset_; }
  /// Coefficient of q^k; throws TruncationError for k > trunc.
  LaurentY coeff(int k) const;
  /// Mutable access for offset <= k <= trunc.
  LaurentY& at(int k);
  void set(int k, LaurentY v) { at(k) = std::move(v); }

  /// Smallest k with nonzero coefficient, or trunc+1 if none is known.
  int valuation() const;
  bool is_zero() const { return valuation() > trunc_; }

  /// Same coefficients, lower truncation.
  SeriesQ truncated(int t) const;
  /// Multiply by q^k.
  SeriesQ shift(int k) const;
  /// Apply f coefficientwise.
  template <class F>
  SeriesQ map(F f) const {
    SeriesQ r(trunc_, offset_);
    for (int k = offset_; k <= trunc_; ++k) r.at(k) = f(coeff(k));
    return r;
  }
  /// Every coefficient specialized at y0, as a rational series (constant LaurentY).
  SeriesQ specialize_y(const Rational& y0) const;

  SeriesQ& operator+=(const SeriesQ& o);
  SeriesQ& operator-=(const SeriesQ& o);
  friend SeriesQ operator+(SeriesQ a, const SeriesQ& b) { return a += b; }
  friend SeriesQ operator-(SeriesQ a, const SeriesQ& b) { return a -= b; }
  friend SeriesQ operator*(const SeriesQ& a, const SeriesQ& b);
  friend SeriesQ operator*(SeriesQ a, const LaurentY& c);
  friend SeriesQ operator*(const LaurentY& c, SeriesQ a) { return std::move(a) * c; }
  SeriesQ operator-() const;

  /// Agreement of coefficients on the common range of validity.
  bool equal_through(const SeriesQ& o, int t) const;
  /// First k <= t where the coefficients differ, or t+1.
  int first_difference(const SeriesQ& o, int t) const;

 private:
  std::vector<LaurentY> c_;  // c_[k - offset_]
  int trunc_ = -1;
  int offset_ = 0;
};

/// Multiplicative inverse; the leading coefficient has to be a monomial in y.
SeriesQ inverse(const SeriesQ& f);
SeriesQ operator/(const SeriesQ& a, const SeriesQ& b);
/// D = q d/dq.
SeriesQ qderiv(const SeriesQ& f);
/// f^e for an integer e (negative needs an invertible f).
SeriesQ pow_int(const SeriesQ& f, long e);
/// f^r for f with constant term 1 and offset 0.
SeriesQ pow_rational(const SeriesQ& f, const Rational& r);
/// log f for f = 1 + O(q).
SeriesQ log(const SeriesQ& f);
/// exp f for f = O(q).
SeriesQ exp(const SeriesQ& f);
/// f(g) with g = O(q). Negative powers of f need a monomial leading term in g.
SeriesQ compose(const SeriesQ& f, const SeriesQ& g);
/// The g with f(g(Q)) = Q, for f = q * (unit with monomial leading coefficient).
SeriesQ reversion(const SeriesQ& f);
/// Coefficients c_0..c_K with f = sum c_l g^l + O(g^{K+1}); g must have valuation 1.
std::vector<LaurentY> expand_in_basis(const SeriesQ& f, const SeriesQ& g, int K);
/// sum_l c_l g^l valid through the truncation of g.
SeriesQ resubstitute(const std::vector<LaurentY>& c, const SeriesQ& g);

/// Q = q / ((1-q)(1-qy)) through q^T.
SeriesQ Q_of_q(int T);
/// The compositional inverse q(Q), through Q^T.
SeriesQ q_of_Q(int T);

/// Rectangular series in x and q with LaurentY coefficients, valid through
/// x^xord q^qord in each variable.
class SeriesXQ {
 public:
  SeriesXQ() = default;
  SeriesXQ(int xord, int qord);
  static SeriesXQ one(int xord, int qord);

  int xord() const { return xord_; }
  int qord() const { return qord_; }
  LaurentY coeff(int i, int j) const;  // x^i q^j
  LaurentY& at(int i, int j);

  /// Row of fixed x-power as a q-series.
  SeriesQ x_coeff(int i) const;
  void set_x_coeff(int i, const SeriesQ& s);
  SeriesXQ truncated(int xord, int qord) const;

  SeriesXQ& operator+=(const SeriesXQ& o);
  friend SeriesXQ operator+(SeriesXQ a, const SeriesXQ& b) { return a += b; }
  friend SeriesXQ operator-(const SeriesXQ& a, const SeriesXQ& b);
  friend SeriesXQ operator*(const SeriesXQ& a, const SeriesXQ& b);
  friend SeriesXQ operator*(SeriesXQ a, const Rational& c);
  friend bool operator==(const SeriesXQ& a, const SeriesXQ& b);

  /// Highest q-power with a nonzero coefficient in the x^i row, or -1.
  int q_degree_of_x_coeff(int i) const;

 private:
  int xord_ = -1, qord_ = -1;
  std::vector<LaurentY> c_;  // row-major in x
  std::size_t idx(int i, int j) const;
};

/// Multiply every q-series row by a q-series (x-independent factor).
SeriesXQ mul_q(const SeriesXQ& a, const SeriesQ& s);
/// log for a(0,0) = 1.
SeriesXQ log(const SeriesXQ& a);
/// exp for a(0,0) = 0.
SeriesXQ exp(const SeriesXQ& a);
/// a^r via exp(r log a) for a(0,0) = 1.
SeriesXQ pow_rational(const SeriesXQ& a, const Rational& r);
/// Substitute q -> g(Q) row by row (g = O(q)).
SeriesXQ compose_q(const SeriesXQ& a, const SeriesQ& g);

/// Divisor-graded series: key L -> polynomial in z with LaurentY coefficients.
/// Keys are integer vectors (degree d, or bidegree (n, m)) with componentwise
/// addition. Products whose key leaves the box `bound` are dropped.
class NovikovSeries {
 public:
  using Key = std::vector<int>;
  using ZPoly = std::vector<LaurentY>;  // index = z-power

  explicit NovikovSeries(Key bound) : bound_(std::move(bound)) {}

  const Key& bound() const { return bound_; }
  const std::map<Key, ZPoly>& terms() const { return terms_; }
  bool within(const Key& k) const;
  void add(const Key& k, int zpow, const LaurentY& c);
  LaurentY coeff(const Key& k, int zpow) const;

  NovikovSeries& operator+=(const NovikovSeries& o);
  friend NovikovSeries operator*(const NovikovSeries& a, const NovikovSeries& b);
  NovikovSeries scaled(const Rational& c) const;

 private:
  Key bound_;
  std::map<Key, ZPoly> terms_;
};

/// log(1 + a) for a with no zero-key term.
NovikovSeries log1p(const NovikovSeries& a);
/// exp(a) - 1 for a with no zero-key term.
NovikovSeries expm1(const NovikovSeries& a);

}  // namespace refcurve
