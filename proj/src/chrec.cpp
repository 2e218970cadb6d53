#include "refcurve/chrec.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace refcurve {

// ---------------------------------------------------------------- TangencySeq

TangencySeq::TangencySeq(std::vector<int> entries) : v_(std::move(entries)) {
  for (int x : v_)
    if (x < 0) throw std::invalid_argument("TangencySeq: negative entry");
  trim();
}

void TangencySeq::trim() {
  while (!v_.empty() && v_.back() == 0) v_.pop_back();
}

TangencySeq TangencySeq::single(int k) { return unit(1, k); }

TangencySeq TangencySeq::unit(int k, int c) {
  std::vector<int> v(static_cast<std::size_t>(k), 0);
  v[static_cast<std::size_t>(k - 1)] = c;
  return TangencySeq(std::move(v));
}

int TangencySeq::operator[](int i) const {
  return i >= 1 && i <= length() ? v_[static_cast<std::size_t>(i - 1)] : 0;
}

int TangencySeq::norm() const { return std::accumulate(v_.begin(), v_.end(), 0); }

int TangencySeq::weighted() const {
  int s = 0;
  for (int i = 1; i <= length(); ++i) s += i * (*this)[i];
  return s;
}

bool TangencySeq::is_odd() const {
  for (int i = 2; i <= length(); i += 2)
    if ((*this)[i] != 0) return false;
  return true;
}

bool TangencySeq::leq(const TangencySeq& o) const {
  for (int i = 1; i <= length(); ++i)
    if ((*this)[i] > o[i]) return false;
  return true;
}

TangencySeq TangencySeq::plus(const TangencySeq& o) const {
  std::vector<int> v(static_cast<std::size_t>(std::max(length(), o.length())), 0);
  for (int i = 1; i <= static_cast<int>(v.size()); ++i) v[static_cast<std::size_t>(i - 1)] = (*this)[i] + o[i];
  return TangencySeq(std::move(v));
}

TangencySeq TangencySeq::minus(const TangencySeq& o) const {
  if (!o.leq(*this)) throw std::invalid_argument("TangencySeq::minus: not a subsequence");
  std::vector<int> v = v_;
  for (int i = 1; i <= o.length(); ++i) v[static_cast<std::size_t>(i - 1)] -= o[i];
  return TangencySeq(std::move(v));
}

TangencySeq TangencySeq::add_at(int i, int c) const {
  std::vector<int> v = v_;
  if (static_cast<int>(v.size()) < i) v.resize(static_cast<std::size_t>(i), 0);
  v[static_cast<std::size_t>(i - 1)] += c;
  return TangencySeq(std::move(v));
}

namespace {

Rational binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rational(r);
}

}  // namespace

Rational TangencySeq::binom(const TangencySeq& o) const {
  Rational r = 1;
  for (int i = 1; i <= std::max(length(), o.length()); ++i) r *= binomial((*this)[i], o[i]);
  return r;
}

std::string TangencySeq::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < v_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v_[i]);
  }
  return s;
}

// ---------------------------------------------------------------- surfaces

SurfaceLB SurfaceLB::p2(int d) {
  SurfaceLB s;
  s.kind = Kind::P2;
  s.d = d;
  return s;
}

SurfaceLB SurfaceLB::ruled(int e, int n, int m) {
  SurfaceLB s;
  s.kind = Kind::Ruled;
  s.e = e;
  s.n = n;
  s.m = m;
  return s;
}

SurfaceLB SurfaceLB::minus_e() const {
  SurfaceLB s = *this;
  if (kind == Kind::P2)
    s.d -= 1;
  else
    s.m -= 1;
  return s;
}

bool SurfaceLB::effective() const {
  if (kind == Kind::P2) return d >= 0;
  return e >= 0 && n >= 0 && m >= 0;
}

std::string SurfaceLB::to_string() const {
  if (kind == Kind::P2) return "p2:" + std::to_string(d);
  return "ruled:" + std::to_string(e) + ":" + std::to_string(n) + "," + std::to_string(m);
}

BundleNumerics bundle_numerics(const SurfaceLB& s) {
  if (!s.effective()) throw std::invalid_argument("bundle_numerics: non-effective line bundle " + s.to_string());
  BundleNumerics b{};
  if (s.kind == SurfaceLB::Kind::P2) {
    long d = s.d;
    b.EL = d;
    b.L2 = d * d;
    b.LK = -3 * d;
    b.K2 = 9;
    b.c2 = 3;
    b.ELmE = d - 1;
  } else {
    long e = s.e, n = s.n, m = s.m;
    b.EL = n - e * m;
    b.L2 = 2 * n * m - e * m * m;
    b.LK = -2 * n + e * m - 2 * m;
    b.K2 = 8;
    b.c2 = 4;
    b.ELmE = n - e * (m - 1);
  }
  b.chiO = (b.K2 + b.c2) / 12;
  b.chiL = b.chiO + (b.L2 - b.LK) / 2;
  b.chiLdual = b.chiO + (b.L2 + b.LK) / 2;
  b.dimL = b.chiL - 1;
  b.g = 1 + (b.L2 + b.LK) / 2;
  return b;
}

long gamma(const SurfaceLB& s, const TangencySeq& beta, int delta) {
  BundleNumerics b = bundle_numerics(s);
  return b.dimL - b.EL + beta.norm() - delta;
}

const char* flavor_name(Flavor f) {
  switch (f) {
    case Flavor::Classical: return "classical";
    case Flavor::Refined: return "refined";
    case Flavor::Normalized: return "normalized";
    case Flavor::Welschinger: return "welschinger";
    case Flavor::YZero: return "yzero";
  }
  return "?";
}

std::optional<Flavor> parse_flavor(const std::string& s) {
  for (Flavor f : {Flavor::Classical, Flavor::Refined, Flavor::Normalized, Flavor::Welschinger, Flavor::YZero})
    if (s == flavor_name(f)) return f;
  return std::nullopt;
}

// ---------------------------------------------------------------- keys

void SeveriKey::validate() const {
  BundleNumerics b = bundle_numerics(surface);
  if (b.EL < 0) throw std::invalid_argument("SeveriKey: E is a fixed component of " + surface.to_string());
  if (alpha.weighted() + beta.weighted() != b.EL)
    throw std::invalid_argument("SeveriKey: I alpha + I beta must equal EL = " + std::to_string(b.EL));
  if (delta < 0) throw std::invalid_argument("SeveriKey: negative delta");
  if (flavor == Flavor::Welschinger && (!alpha.is_odd() || !beta.is_odd()))
    throw std::invalid_argument("SeveriKey: Welschinger keys need odd sequences");
}

std::string SeveriKey::canonical() const {
  std::string s = flavor_name(flavor);
  s += '|';
  s += surface.to_string();
  s += '|';
  s += std::to_string(delta);
  s += '|';
  s += alpha.to_string();
  s += '|';
  s += beta.to_string();
  return s;
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

TangencySeq parse_seq(const std::string& s) {
  std::vector<int> v;
  if (!s.empty())
    for (const auto& t : split(s, ',')) v.push_back(std::stoi(t));
  return TangencySeq(std::move(v));
}

}  // namespace

SeveriKey SeveriKey::parse(const std::string& text) {
  auto parts = split(text, '|');
  if (parts.size() != 5) throw std::invalid_argument("SeveriKey::parse: " + text);
  SeveriKey k;
  auto f = parse_flavor(parts[0]);
  if (!f) throw std::invalid_argument("SeveriKey::parse: flavor " + parts[0]);
  k.flavor = *f;
  auto sp = split(parts[1], ':');
  if (sp.size() == 2 && sp[0] == "p2") {
    k.surface = SurfaceLB::p2(std::stoi(sp[1]));
  } else if (sp.size() == 3 && sp[0] == "ruled") {
    auto nm = split(sp[2], ',');
    if (nm.size() != 2) throw std::invalid_argument("SeveriKey::parse: bundle " + sp[2]);
    k.surface = SurfaceLB::ruled(std::stoi(sp[1]), std::stoi(nm[0]), std::stoi(nm[1]));
  } else {
    throw std::invalid_argument("SeveriKey::parse: surface " + parts[1]);
  }
  k.delta = std::stoi(parts[2]);
  k.alpha = parse_seq(parts[3]);
  k.beta = parse_seq(parts[4]);
  return k;
}

// ---------------------------------------------------------------- cache

std::optional<LaurentY> MemoCache::find(const std::string& key) const {
  std::shared_lock lock(mu_);
  auto it = map_.find(key);
  if (it == map_.end()) {
    misses_.fetch_add(1, std::memory_order_relaxed);
    return std::nullopt;
  }
  hits_.fetch_add(1, std::memory_order_relaxed);
  return it->second;
}

bool MemoCache::insert_if_absent(const std::string& key, const LaurentY& value) {
  std::unique_lock lock(mu_);
  return map_.emplace(key, value).second;
}

std::size_t MemoCache::size() const {
  std::shared_lock lock(mu_);
  return map_.size();
}

void MemoCache::clear() {
  std::unique_lock lock(mu_);
  map_.clear();
  hits_ = 0;
  misses_ = 0;
}

std::vector<std::pair<std::string, LaurentY>> MemoCache::records() const {
  std::vector<std::pair<std::string, LaurentY>> r;
  {
    std::shared_lock lock(mu_);
    r.assign(map_.begin(), map_.end());
  }
  std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return r;
}

// ---------------------------------------------------------------- recursion

namespace {

// Sequences gamma with I gamma = n (odd parts only if requested).
const std::vector<TangencySeq>& partitions(int n, bool odd) {
  static std::mutex mu;
  static std::map<std::pair<int, bool>, std::vector<TangencySeq>> memo;
  std::lock_guard lock(mu);
  auto key = std::make_pair(n, odd);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  std::vector<TangencySeq> out;
  std::vector<int> counts(static_cast<std::size_t>(std::max(n, 0)), 0);
  // parts in decreasing size
  std::function<void(int, int)> rec = [&](int remaining, int maxpart) {
    if (remaining == 0) {
      out.emplace_back(counts);
      return;
    }
    for (int p = std::min(remaining, maxpart); p >= 1; --p) {
      if (odd && p % 2 == 0) continue;
      ++counts[static_cast<std::size_t>(p - 1)];
      rec(remaining - p, p);
      --counts[static_cast<std::size_t>(p - 1)];
    }
  };
  if (n >= 0) rec(n, n);
  return memo.emplace(key, std::move(out)).first->second;
}

// All alpha' <= alpha.
void subsequences(const TangencySeq& a, std::vector<TangencySeq>& out) {
  std::vector<int> cur(static_cast<std::size_t>(a.length()), 0);
  std::function<void(int)> rec = [&](int i) {
    if (i == a.length()) {
      out.emplace_back(cur);
      return;
    }
    for (int c = 0; c <= a[i + 1]; ++c) {
      cur[static_cast<std::size_t>(i)] = c;
      rec(i + 1);
    }
    cur[static_cast<std::size_t>(i)] = 0;
  };
  rec(0);
}

LaurentY first_weight(Flavor f, int k) {
  switch (f) {
    case Flavor::Classical: return LaurentY(static_cast<long>(k));
    case Flavor::Refined: return LaurentY::geometric(k);
    case Flavor::Normalized: return LaurentY::quantum_int(k);
    case Flavor::Welschinger: return LaurentY(((k - 1) / 2) % 2 == 0 ? 1L : -1L);
    case Flavor::YZero: return LaurentY(1L);
  }
  return {};
}

// Weight of the second-sum term without the binomials.
LaurentY second_weight(Flavor f, const TangencySeq& alpha_p, const TangencySeq& beta, const TangencySeq& gam) {
  LaurentY w(1L);
  if (f == Flavor::YZero) return alpha_p.weighted() + beta.weighted() == 0 ? w : LaurentY();
  if (f == Flavor::Refined) w = LaurentY::y_pow(alpha_p.weighted() + beta.weighted());
  for (int i = 1; i <= gam.length(); ++i) {
    int c = gam[i];
    if (c == 0) continue;
    LaurentY base = first_weight(f, i);
    w *= base.pow(static_cast<unsigned>(c));
  }
  return w;
}

bool supported_on_first(const TangencySeq& s) { return s.length() <= 1; }

LaurentY compute(const SeveriKey& key, MemoCache& cache);

LaurentY lookup(const SeveriKey& key, MemoCache& cache) {
  std::string ck = key.canonical();
  if (auto v = cache.find(ck)) return *v;
  LaurentY v = compute(key, cache);
  cache.insert_if_absent(ck, v);
  return v;
}

LaurentY compute(const SeveriKey& key, MemoCache& cache) {
  const SurfaceLB& s = key.surface;
  BundleNumerics b = bundle_numerics(s);
  long gam = b.dimL - b.EL + key.beta.norm() - key.delta;
  if (gam < 0) return {};

  // Floor: lines in P2, unions of fibres on Sigma_e.
  bool floor = s.kind == SurfaceLB::Kind::P2 ? s.d <= 1 : s.m == 0;
  if (floor) {
    bool one = key.delta == 0 && supported_on_first(key.alpha) && supported_on_first(key.beta);
    return one ? LaurentY(1L) : LaurentY();
  }
  if (gam == 0) return {};

  const Flavor f = key.flavor;
  const bool odd = f == Flavor::Welschinger;
  LaurentY total;

  for (int k = 1; k <= key.beta.length(); ++k) {
    if (key.beta[k] == 0 || (odd && k % 2 == 0)) continue;
    SeveriKey sub = key;
    sub.alpha = key.alpha.add_at(k, 1);
    sub.beta = key.beta.add_at(k, -1);
    LaurentY v = lookup(sub, cache);
    if (!v.is_zero()) total.add_product(first_weight(f, k), v);
  }

  SurfaceLB lower = s.minus_e();
  if (!lower.effective() || b.ELmE < 0) return total;
  BundleNumerics bl = bundle_numerics(lower);
  const int Ibeta = key.beta.weighted();
  std::vector<TangencySeq> subs;
  subsequences(key.alpha, subs);
  for (const TangencySeq& ap : subs) {
    if (odd && !ap.is_odd()) continue;
    long rem = b.ELmE - ap.weighted() - Ibeta;
    if (rem < 0) continue;
    if (f == Flavor::YZero && ap.weighted() + Ibeta != 0) continue;
    Rational ca = key.alpha.binom(ap);
    for (const TangencySeq& g : partitions(static_cast<int>(rem), odd)) {
      long dp = key.delta - b.ELmE + g.norm();
      if (dp < 0) continue;
      // genus form of the same count (adjunction: g(L) - g(L-E) = E(L-E) - 1)
      if (dp != key.delta + bl.g - b.g + g.norm() - 1)
        throw std::logic_error("chrec: the two delta' formulas disagree for " + key.canonical());
      TangencySeq bp = key.beta.plus(g);
      SeveriKey sub;
      sub.surface = lower;
      sub.delta = static_cast<int>(dp);
      sub.alpha = ap;
      sub.beta = bp;
      sub.flavor = f;
      LaurentY v = lookup(sub, cache);
      if (v.is_zero()) continue;
      LaurentY w = second_weight(f, ap, key.beta, g);
      if (w.is_zero()) continue;
      w *= ca * bp.binom(key.beta);
      total.add_product(w, v);
    }
  }
  return total;
}

}  // namespace

LaurentY severi(const SeveriKey& key, MemoCache& cache) {
  key.validate();
  return lookup(key, cache);
}

SeveriKey absolute_key(const SurfaceLB& s, int delta, Flavor f) {
  BundleNumerics b = bundle_numerics(s);
  SeveriKey k;
  k.surface = s;
  k.delta = delta;
  k.flavor = f;
  if (b.EL > 0) k.beta = TangencySeq::single(static_cast<int>(b.EL));
  return k;
}

LaurentY severi_degree(const SurfaceLB& s, int delta, Flavor f, MemoCache& cache) {
  return severi(absolute_key(s, delta, f), cache);
}

int normalization_half_exponent(const TangencySeq& beta, int delta) {
  return 2 * delta + beta.weighted() - beta.norm();
}

Rational y_zero_closed_form(const SurfaceLB& s, const TangencySeq& beta, int delta) {
  BundleNumerics b = bundle_numerics(s);
  // multinomial |beta|! / prod beta_i!
  Rational multi = 1;
  int acc = 0;
  for (int i = 1; i <= beta.length(); ++i) {
    acc += beta[i];
    multi *= binomial(acc, beta[i]);
  }
  return multi * binomial(b.g, delta);
}

std::vector<std::pair<TangencySeq, TangencySeq>> sequence_pairs(int total, bool odd_only) {
  std::vector<std::pair<TangencySeq, TangencySeq>> out;
  for (int ia = 0; ia <= total; ++ia)
    for (const auto& a : partitions(ia, odd_only))
      for (const auto& bb : partitions(total - ia, odd_only)) out.emplace_back(a, bb);
  return out;
}

}  // namespace refcurve
