// Exact Laurent polynomials in y^{1/2} over the rationals.
#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

namespace refcurve {

using Rational = mpq_class;

/// a/b in canonical form (mpq_class(a, b) alone does not reduce).
inline Rational frac(long a, long b) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}

/// Finitely supported map from exponents (in units of y^{1/2}) to nonzero
/// rationals. Terms are kept sorted by exponent.
///
/// With nonnegative even exponents the same type serves as Z[L], the ring
/// generated by the class of the affine line.
class LaurentY {
 public:
  using Term = std::pair<int, Rational>;

  LaurentY() = default;
  LaurentY(long c);  // NOLINT(google-explicit-constructor)
  LaurentY(const Rational& c);  // NOLINT(google-explicit-constructor)

  /// c * y^{half/2}
  static LaurentY monomial(int half, const Rational& c = 1);
  /// c * y^k with k an integer exponent
  static LaurentY y_pow(int k, const Rational& c = 1);
  /// [n]_y = (y^{n/2} - y^{-n/2}) / (y^{1/2} - y^{-1/2}); [0]_y = 0, [-n]_y = -[n]_y.
  static LaurentY quantum_int(int n);
  /// (1 - y^k) / (1 - y) = 1 + y + ... + y^{k-1} for k >= 0.
  static LaurentY geometric(int k);
  /// Build from unsorted (half, coeff) pairs; duplicates are summed.
  static LaurentY from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Coefficient of y^{half/2}.
  Rational coeff(int half) const;
  /// Smallest and largest exponents (half-units). Undefined on zero.
  int min_half() const { return terms_.front().first; }
  int max_half() const { return terms_.back().first; }

  /// All exponents even, i.e. a Laurent polynomial in y.
  bool is_integral() const;
  /// Invariant under y -> 1/y.
  bool is_symmetric() const;
  /// All coefficients are integers.
  bool has_integer_coeffs() const;
  /// All coefficients are >= 0.
  bool is_nonnegative() const;
  bool is_constant() const;
  /// Single term c*y^{h/2} with c != 0.
  bool is_monomial() const { return terms_.size() == 1; }

  LaurentY negate_exponents() const;
  LaurentY pow(unsigned e) const;
  /// Multiply by y^{half/2}.
  LaurentY shift(int half) const;
  /// Substitute y -> y^k (k > 0) in integral-exponent units.
  LaurentY scale_exponents(int k) const;
  /// Inverse of a monomial. Throws otherwise.
  LaurentY monomial_inverse() const;

  /// Exact value at y = y0. Half-integer exponents need y0 to be a rational
  /// square; y0 = 0 is only allowed without negative exponents.
  Rational specialize(const Rational& y0) const;

  LaurentY& operator+=(const LaurentY& o);
  LaurentY& operator-=(const LaurentY& o);
  LaurentY& operator*=(const LaurentY& o);
  LaurentY& operator*=(const Rational& c);
  /// this += a * b, without a temporary for the product.
  void add_product(const LaurentY& a, const LaurentY& b);

  friend LaurentY operator+(LaurentY a, const LaurentY& b) { return a += b; }
  friend LaurentY operator-(LaurentY a, const LaurentY& b) { return a -= b; }
  friend LaurentY operator*(const LaurentY& a, const LaurentY& b);
  friend LaurentY operator*(LaurentY a, const Rational& c) { return a *= c; }
  friend LaurentY operator*(const Rational& c, LaurentY a) { return a *= c; }
  LaurentY operator-() const;
  friend bool operator==(const LaurentY& a, const LaurentY& b);
  friend bool operator!=(const LaurentY& a, const LaurentY& b) { return !(a == b); }

  /// Human form in descending exponent order, e.g. "3*y + 21 + 3*y^-1".
  /// Half-integer exponents print as y^(k/2).
  std::string to_text(const std::string& var = "y") const;

 private:
  std::vector<Term> terms_;
  void prune();
};

/// Rational square root if one exists.
bool rational_sqrt(const Rational& a, Rational& out);

std::string rational_to_string(const Rational& q);

}  // namespace refcurve
