// Caporaso-Harris / Vakil recursion for relative Severi degrees on P2 and on
// the ruled surfaces Sigma_e, with refined, normalized and tropical
// Welschinger variants and a shared memo cache.
#pragma once

#include <atomic>
#include <functional>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "refcurve/laurent.hpp"

namespace refcurve {

/// Finitely supported sequence alpha_1, alpha_2, ... stored 0-based
/// (entry i-1 holds alpha_i) with trailing zeros trimmed.
class TangencySeq {
 public:
  TangencySeq() = default;
  explicit TangencySeq(std::vector<int> entries);
  /// k * e_1, the sequence written as a bare integer k.
  static TangencySeq single(int k);
  /// e_k scaled by c.
  static TangencySeq unit(int k, int c = 1);

  const std::vector<int>& entries() const { return v_; }
  int operator[](int i) const;  // alpha_i, 1-based, zero past the end
  int length() const { return static_cast<int>(v_.size()); }
  int norm() const;      // |alpha|
  int weighted() const;  // I alpha
  bool is_odd() const;
  bool is_zero() const { return v_.empty(); }
  bool leq(const TangencySeq& o) const;

  TangencySeq plus(const TangencySeq& o) const;
  TangencySeq minus(const TangencySeq& o) const;  // requires o <= this
  TangencySeq add_at(int i, int c) const;
  /// prod_i C(alpha_i, o_i)
  Rational binom(const TangencySeq& o) const;
  std::string to_string() const;
  friend bool operator==(const TangencySeq& a, const TangencySeq& b) { return a.v_ == b.v_; }

 private:
  std::vector<int> v_;
  void trim();
};

/// P2 with L = dH, or Sigma_e with L = nF + mE (E^2 = -e, F a fibre).
struct SurfaceLB {
  enum class Kind { P2, Ruled };
  Kind kind = Kind::P2;
  int d = 0;
  int e = 0, n = 0, m = 0;

  static SurfaceLB p2(int d);
  static SurfaceLB ruled(int e, int n, int m);
  /// L - E
  SurfaceLB minus_e() const;
  bool effective() const;
  std::string to_string() const;
};

struct BundleNumerics {
  long EL, L2, LK, K2, c2, chiO, chiL, chiLdual, dimL, g, ELmE;
};
/// Intersection numbers, Riemann-Roch and adjunction. Throws for non-effective L.
BundleNumerics bundle_numerics(const SurfaceLB& s);
/// dim|L| - EL + |beta| - delta
long gamma(const SurfaceLB& s, const TangencySeq& beta, int delta);

enum class Flavor { Classical, Refined, Normalized, Welschinger, YZero };
const char* flavor_name(Flavor f);
std::optional<Flavor> parse_flavor(const std::string& s);

struct SeveriKey {
  SurfaceLB surface;
  int delta = 0;
  TangencySeq alpha, beta;
  Flavor flavor = Flavor::Refined;

  /// Throws std::invalid_argument if I alpha + I beta != EL or if a
  /// Welschinger key has an even-index entry.
  void validate() const;
  /// Canonical text form: flavor|surface|delta|alpha|beta.
  std::string canonical() const;
  static SeveriKey parse(const std::string& canonical);
};

/// Thread-safe memo table from canonical key text to value.
class MemoCache {
 public:
  std::optional<LaurentY> find(const std::string& key) const;
  /// Keeps the first stored value; returns whether the insert happened.
  bool insert_if_absent(const std::string& key, const LaurentY& value);
  std::size_t size() const;
  std::size_t hits() const { return hits_.load(); }
  std::size_t misses() const { return misses_.load(); }
  void clear();
  /// Snapshot sorted by key.
  std::vector<std::pair<std::string, LaurentY>> records() const;

 private:
  mutable std::shared_mutex mu_;
  std::unordered_map<std::string, LaurentY> map_;
  mutable std::atomic<std::size_t> hits_{0}, misses_{0};
};

/// Value of a relative Severi degree of the given flavor. Classical,
/// Welschinger and YZero values are constants.
LaurentY severi(const SeveriKey& key, MemoCache& cache);

/// N^{L,delta} := value at alpha = 0, beta = (EL) e_1.
SeveriKey absolute_key(const SurfaceLB& s, int delta, Flavor f);
LaurentY severi_degree(const SurfaceLB& s, int delta, Flavor f, MemoCache& cache);

/// y^{delta + (I beta - |beta|)/2}, the normalization factor between refined
/// and normalized values, in half-units.
int normalization_half_exponent(const TangencySeq& beta, int delta);

/// C(|beta|; beta) * C(g(L), delta)
Rational y_zero_closed_form(const SurfaceLB& s, const TangencySeq& beta, int delta);

/// Every pair (alpha, beta) of sequences with I alpha + I beta = total
/// (only odd sequences when odd_only).
std::vector<std::pair<TangencySeq, TangencySeq>> sequence_pairs(int total, bool odd_only);

}  // namespace refcurve
