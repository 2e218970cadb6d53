#include "refcurve/series.hpp"

#include <algorithm>
#include <string>

namespace refcurve {

namespace {

[[noreturn]] void trunc_fail(int k, int t) {
  throw TruncationError("series coefficient q^" + std::to_string(k) + " beyond truncation q^" +
                        std::to_string(t));
}

}  // namespace

// ---------------------------------------------------------------- SeriesQ

SeriesQ::SeriesQ(int trunc, int offset) : trunc_(trunc), offset_(offset) {
  if (trunc >= offset) c_.resize(static_cast<std::size_t>(trunc - offset + 1));
}

SeriesQ::SeriesQ(std::vector<LaurentY> coeffs, int trunc, int offset) : SeriesQ(trunc, offset) {
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    int k = offset + static_cast<int>(i);
    if (k > trunc) {
      if (!coeffs[i].is_zero()) trunc_fail(k, trunc);
      continue;
    }
    c_[i] = std::move(coeffs[i]);
  }
}

SeriesQ SeriesQ::constant(const LaurentY& c, int trunc) {
  SeriesQ s(trunc, 0);
  if (trunc >= 0) s.at(0) = c;
  return s;
}

SeriesQ SeriesQ::monomial(int k, const LaurentY& c, int trunc) {
  SeriesQ s(trunc, std::min(k, trunc + 1));
  if (k <= trunc) s.at(k) = c;
  return s;
}

LaurentY SeriesQ::coeff(int k) const {
  if (k > trunc_) trunc_fail(k, trunc_);
  if (k < offset_) return {};
  return c_[static_cast<std::size_t>(k - offset_)];
}

LaurentY& SeriesQ::at(int k) {
  if (k > trunc_) trunc_fail(k, trunc_);
  if (k < offset_) throw std::out_of_range("SeriesQ::at below offset");
  return c_[static_cast<std::size_t>(k - offset_)];
}

int SeriesQ::valuation() const {
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (!c_[i].is_zero()) return offset_ + static_cast<int>(i);
  return trunc_ + 1;
}

SeriesQ SeriesQ::truncated(int t) const {
  if (t > trunc_) trunc_fail(t, trunc_);
  SeriesQ r(t, std::min(offset_, t + 1));
  for (int k = r.offset_; k <= t; ++k) r.at(k) = coeff(k);
  return r;
}

SeriesQ SeriesQ::shift(int k) const {
  SeriesQ r = *this;
  r.offset_ += k;
  r.trunc_ += k;
  return r;
}

SeriesQ SeriesQ::specialize_y(const Rational& y0) const {
  return map([&](const LaurentY& c) { return LaurentY(c.specialize(y0)); });
}

SeriesQ& SeriesQ::operator+=(const SeriesQ& o) {
  int t = std::min(trunc_, o.trunc_);
  int off = std::min(offset_, o.offset_);
  SeriesQ r(t, std::min(off, t + 1));
  for (int k = r.offset_; k <= t; ++k) {
    LaurentY v = coeff(k);
    v += o.coeff(k);
    r.at(k) = std::move(v);
  }
  *this = std::move(r);
  return *this;
}

SeriesQ SeriesQ::operator-() const {
  return map([](const LaurentY& c) { return -c; });
}

SeriesQ& SeriesQ::operator-=(const SeriesQ& o) { return *this += -o; }

SeriesQ operator*(const SeriesQ& a, const SeriesQ& b) {
  int va = a.valuation(), vb = b.valuation();
  int t = std::min(a.trunc_ + vb, b.trunc_ + va);
  int off = std::min(va + vb, t + 1);
  SeriesQ r(t, off);
  for (int i = va; i <= a.trunc_; ++i) {
    const LaurentY& x = a.c_[static_cast<std::size_t>(i - a.offset_)];
    if (x.is_zero()) continue;
    for (int j = vb; j <= b.trunc_ && i + j <= t; ++j) {
      const LaurentY& z = b.c_[static_cast<std::size_t>(j - b.offset_)];
      if (z.is_zero()) continue;
      r.at(i + j).add_product(x, z);
    }
  }
  return r;
}

SeriesQ operator*(SeriesQ a, const LaurentY& c) {
  for (auto& v : a.c_) v *= c;
  return a;
}

bool SeriesQ::equal_through(const SeriesQ& o, int t) const { return first_difference(o, t) > t; }

int SeriesQ::first_difference(const SeriesQ& o, int t) const {
  int lo = std::min(offset_, o.offset_);
  for (int k = lo; k <= t; ++k)
    if (coeff(k) != o.coeff(k)) return k;
  return t + 1;
}

SeriesQ inverse(const SeriesQ& f) {
  int v = f.valuation();
  if (v > f.trunc()) throw std::domain_error("inverse: series is zero to its truncation");
  LaurentY c = f.coeff(v);
  if (!c.is_monomial()) throw std::domain_error("inverse: leading coefficient is not a unit");
  LaurentY cinv = c.monomial_inverse();
  int n = f.trunc() - v;  // unit part known through q^n
  std::vector<LaurentY> h(static_cast<std::size_t>(n + 1));
  for (int k = 0; k <= n; ++k) h[static_cast<std::size_t>(k)] = f.coeff(v + k) * cinv;
  std::vector<LaurentY> w(static_cast<std::size_t>(n + 1));
  w[0] = LaurentY(1L);
  for (int m = 1; m <= n; ++m) {
    LaurentY s;
    for (int k = 1; k <= m; ++k) {
      const LaurentY& hk = h[static_cast<std::size_t>(k)];
      if (!hk.is_zero()) s.add_product(hk, w[static_cast<std::size_t>(m - k)]);
    }
    w[static_cast<std::size_t>(m)] = -s;
  }
  SeriesQ r(n - v, -v);
  for (int m = 0; m <= n; ++m) r.at(m - v) = w[static_cast<std::size_t>(m)] * cinv;
  return r;
}

SeriesQ operator/(const SeriesQ& a, const SeriesQ& b) { return a * inverse(b); }

SeriesQ qderiv(const SeriesQ& f) {
  SeriesQ r(f.trunc(), f.offset());
  for (int k = f.offset(); k <= f.trunc(); ++k) r.at(k) = f.coeff(k) * Rational(k);
  return r;
}

SeriesQ pow_int(const SeriesQ& f, long e) {
  if (e < 0) return pow_int(inverse(f), -e);
  if (e == 0) return SeriesQ::constant(LaurentY(1L), f.trunc());
  SeriesQ result;
  SeriesQ base = f;
  bool have = false;
  while (e > 0) {
    if (e & 1L) {
      result = have ? result * base : base;
      have = true;
    }
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

namespace {

void require_one_leading(const SeriesQ& f, const char* what) {
  if (f.valuation() < 0 || f.coeff(0) != LaurentY(1L))
    throw std::domain_error(std::string(what) + ": constant term must be 1");
}

}  // namespace

SeriesQ pow_rational(const SeriesQ& f, const Rational& r) {
  if (r.get_den() == 1 && (f.valuation() != 0 || f.coeff(0) != LaurentY(1L)))
    return pow_int(f, r.get_num().get_si());
  require_one_leading(f, "pow_rational");
  int T = f.trunc();
  SeriesQ h(T, 0);
  if (T < 0) return h;
  h.at(0) = LaurentY(1L);
  for (int n = 1; n <= T; ++n) {
    LaurentY s;
    for (int k = 1; k <= n; ++k) {
      LaurentY fk = f.coeff(k);
      if (fk.is_zero()) continue;
      Rational w = (r + 1) * k - n;
      if (sgn(w) == 0) continue;
      s.add_product(fk * w, h.coeff(n - k));
    }
    h.at(n) = s * Rational(1, n);
  }
  return h;
}

SeriesQ log(const SeriesQ& f) {
  require_one_leading(f, "log");
  int T = f.trunc();
  SeriesQ g(T, 0);
  for (int n = 1; n <= T; ++n) {
    LaurentY s;
    for (int k = 1; k < n; ++k) {
      LaurentY gk = g.coeff(k);
      if (gk.is_zero()) continue;
      s.add_product(gk * Rational(k), f.coeff(n - k));
    }
    g.at(n) = f.coeff(n) - s * Rational(1, n);
  }
  return g;
}

SeriesQ exp(const SeriesQ& f) {
  if (f.valuation() < 1) throw std::domain_error("exp: constant term must vanish");
  int T = f.trunc();
  SeriesQ h(T, 0);
  if (T < 0) return h;
  h.at(0) = LaurentY(1L);
  for (int n = 1; n <= T; ++n) {
    LaurentY s;
    for (int k = 1; k <= n; ++k) {
      LaurentY fk = f.coeff(k);
      if (fk.is_zero()) continue;
      s.add_product(fk * Rational(k), h.coeff(n - k));
    }
    h.at(n) = s * Rational(1, n);
  }
  return h;
}

SeriesQ compose(const SeriesQ& f, const SeriesQ& g) {
  int vg = g.valuation();
  if (vg < 1) throw std::domain_error("compose: inner series must have zero constant term");
  int cap = std::min(vg * (f.trunc() + 1) - 1, g.trunc());
  int fo = std::min(f.valuation(), f.trunc() + 1);
  if (fo < 0) cap = std::min(cap, g.trunc() - 2 * vg);
  SeriesQ result(cap, 0);
  if (cap < 0) return result;
  SeriesQ gt = g.truncated(cap);
  // nonnegative powers
  SeriesQ p = SeriesQ::constant(LaurentY(1L), cap);
  for (int k = 0; k <= f.trunc(); ++k) {
    if (k > 0) p = (p * gt).truncated(cap);
    if (k < fo) continue;
    LaurentY fk = f.coeff(k);
    if (!fk.is_zero()) result += p * fk;
    if (k * vg > cap) break;
  }
  if (fo < 0) {
    SeriesQ ginv = inverse(g);
    SeriesQ pn = SeriesQ::constant(LaurentY(1L), cap);
    for (int k = -1; k >= fo; --k) {
      pn = pn * ginv;
      LaurentY fk = f.coeff(k);
      if (!fk.is_zero()) result += pn * fk;
    }
  }
  return result;
}

SeriesQ reversion(const SeriesQ& f) {
  if (f.valuation() != 1) throw std::domain_error("reversion: series must have valuation exactly 1");
  int T = f.trunc();
  SeriesQ phi = inverse(f).shift(1);  // q/f, offset 0, valid through T-1
  SeriesQ g(T, 0);
  SeriesQ p = SeriesQ::constant(LaurentY(1L), T - 1);
  for (int n = 1; n <= T; ++n) {
    p = p * phi;
    g.at(n) = p.coeff(n - 1) * Rational(1, n);
  }
  return g;
}

std::vector<LaurentY> expand_in_basis(const SeriesQ& f, const SeriesQ& g, int K) {
  if (g.valuation() != 1) throw std::domain_error("expand_in_basis: basis series must have valuation 1");
  if (f.valuation() < 0) throw std::domain_error("expand_in_basis: f must be a power series");
  SeriesQ psi = inverse(g).shift(1);   // q/g
  SeriesQ dg = qderiv(g).shift(-1);    // Dg/q
  SeriesQ h = f * dg;
  std::vector<LaurentY> c;
  c.reserve(static_cast<std::size_t>(K + 1));
  for (int l = 0; l <= K; ++l) {
    h = h * psi;  // f * Dg/q * (q/g)^{l+1}
    c.push_back(h.coeff(l));
  }
  return c;
}

SeriesQ resubstitute(const std::vector<LaurentY>& c, const SeriesQ& g) {
  int K = static_cast<int>(c.size()) - 1;
  int t = std::min(g.trunc(), K);
  SeriesQ r(t, 0);
  SeriesQ p = SeriesQ::constant(LaurentY(1L), t);
  SeriesQ gt = g.truncated(t);
  for (int l = 0; l <= K; ++l) {
    if (l > 0) p = (p * gt).truncated(t);
    if (!c[static_cast<std::size_t>(l)].is_zero()) r += p * c[static_cast<std::size_t>(l)];
  }
  return r;
}

SeriesQ Q_of_q(int T) {
  SeriesQ one = SeriesQ::constant(LaurentY(1L), T);
  SeriesQ den = (one - SeriesQ::monomial(1, LaurentY(1L), T)) * (one - SeriesQ::monomial(1, LaurentY::y_pow(1), T));
  return SeriesQ::monomial(1, LaurentY(1L), T) / den;
}

SeriesQ q_of_Q(int T) { return reversion(Q_of_q(T)); }

// ---------------------------------------------------------------- SeriesXQ

SeriesXQ::SeriesXQ(int xord, int qord) : xord_(xord), qord_(qord) {
  if (xord >= 0 && qord >= 0) c_.resize(static_cast<std::size_t>((xord + 1) * (qord + 1)));
}

SeriesXQ SeriesXQ::one(int xord, int qord) {
  SeriesXQ s(xord, qord);
  s.at(0, 0) = LaurentY(1L);
  return s;
}

std::size_t SeriesXQ::idx(int i, int j) const {
  if (i < 0 || j < 0) throw std::out_of_range("SeriesXQ: negative index");
  if (i > xord_ || j > qord_)
    throw TruncationError("SeriesXQ coefficient x^" + std::to_string(i) + " q^" + std::to_string(j) +
                          " beyond truncation");
  return static_cast<std::size_t>(i * (qord_ + 1) + j);
}

LaurentY SeriesXQ::coeff(int i, int j) const { return c_[idx(i, j)]; }
LaurentY& SeriesXQ::at(int i, int j) { return c_[idx(i, j)]; }

SeriesQ SeriesXQ::x_coeff(int i) const {
  SeriesQ s(qord_, 0);
  for (int j = 0; j <= qord_; ++j) s.at(j) = coeff(i, j);
  return s;
}

void SeriesXQ::set_x_coeff(int i, const SeriesQ& s) {
  for (int j = 0; j <= qord_; ++j) at(i, j) = s.coeff(j);
}

SeriesXQ SeriesXQ::truncated(int xord, int qord) const {
  SeriesXQ r(xord, qord);
  for (int i = 0; i <= xord; ++i)
    for (int j = 0; j <= qord; ++j) r.at(i, j) = coeff(i, j);
  return r;
}

SeriesXQ& SeriesXQ::operator+=(const SeriesXQ& o) {
  SeriesXQ r(std::min(xord_, o.xord_), std::min(qord_, o.qord_));
  for (int i = 0; i <= r.xord_; ++i)
    for (int j = 0; j <= r.qord_; ++j) r.at(i, j) = coeff(i, j) + o.coeff(i, j);
  *this = std::move(r);
  return *this;
}

SeriesXQ operator-(const SeriesXQ& a, const SeriesXQ& b) { return a + b * Rational(-1); }

SeriesXQ operator*(const SeriesXQ& a, const SeriesXQ& b) {
  SeriesXQ r(std::min(a.xord_, b.xord_), std::min(a.qord_, b.qord_));
  for (int i1 = 0; i1 <= r.xord_; ++i1)
    for (int j1 = 0; j1 <= r.qord_; ++j1) {
      const LaurentY& u = a.c_[a.idx(i1, j1)];
      if (u.is_zero()) continue;
      for (int i2 = 0; i1 + i2 <= r.xord_; ++i2)
        for (int j2 = 0; j1 + j2 <= r.qord_; ++j2) {
          const LaurentY& v = b.c_[b.idx(i2, j2)];
          if (!v.is_zero()) r.at(i1 + i2, j1 + j2).add_product(u, v);
        }
    }
  return r;
}

SeriesXQ operator*(SeriesXQ a, const Rational& c) {
  for (auto& v : a.c_) v *= c;
  return a;
}

bool operator==(const SeriesXQ& a, const SeriesXQ& b) {
  return a.xord_ == b.xord_ && a.qord_ == b.qord_ && a.c_ == b.c_;
}

int SeriesXQ::q_degree_of_x_coeff(int i) const {
  for (int j = qord_; j >= 0; --j)
    if (!coeff(i, j).is_zero()) return j;
  return -1;
}

SeriesXQ mul_q(const SeriesXQ& a, const SeriesQ& s) {
  SeriesXQ r(a.xord(), std::min(a.qord(), s.trunc()));
  for (int i = 0; i <= r.xord(); ++i) {
    SeriesQ row = a.x_coeff(i).truncated(r.qord()) * s;
    for (int j = 0; j <= r.qord(); ++j) r.at(i, j) = row.coeff(j);
  }
  return r;
}

namespace {

// Iterate cells by increasing total degree.
template <class F>
void by_total_degree(int X, int Q, F f) {
  for (int t = 0; t <= X + Q; ++t)
    for (int i = std::max(0, t - Q); i <= std::min(t, X); ++i) f(i, t - i);
}

}  // namespace

SeriesXQ log(const SeriesXQ& a) {
  if (a.coeff(0, 0) != LaurentY(1L)) throw std::domain_error("log: constant term must be 1");
  int X = a.xord(), Q = a.qord();
  // b = 1/a
  SeriesXQ b(X, Q);
  by_total_degree(X, Q, [&](int i, int j) {
    if (i == 0 && j == 0) {
      b.at(0, 0) = LaurentY(1L);
      return;
    }
    LaurentY s;
    for (int k = 0; k <= i; ++k)
      for (int l = 0; l <= j; ++l) {
        if (k == 0 && l == 0) continue;
        LaurentY u = a.coeff(k, l);
        if (!u.is_zero()) s.add_product(u, b.coeff(i - k, j - l));
      }
    b.at(i, j) = -s;
  });
  SeriesXQ ea(X, Q);
  for (int i = 0; i <= X; ++i)
    for (int j = 0; j <= Q; ++j) ea.at(i, j) = a.coeff(i, j) * Rational(i + j);
  SeriesXQ p = ea * b;
  SeriesXQ g(X, Q);
  for (int i = 0; i <= X; ++i)
    for (int j = 0; j <= Q; ++j)
      if (i + j > 0) g.at(i, j) = p.coeff(i, j) * Rational(1, i + j);
  return g;
}

SeriesXQ exp(const SeriesXQ& a) {
  if (!a.coeff(0, 0).is_zero()) throw std::domain_error("exp: constant term must vanish");
  int X = a.xord(), Q = a.qord();
  SeriesXQ h(X, Q);
  by_total_degree(X, Q, [&](int i, int j) {
    if (i == 0 && j == 0) {
      h.at(0, 0) = LaurentY(1L);
      return;
    }
    LaurentY s;
    for (int k = 0; k <= i; ++k)
      for (int l = 0; l <= j; ++l) {
        if (k == 0 && l == 0) continue;
        LaurentY u = a.coeff(k, l);
        if (!u.is_zero()) s.add_product(u * Rational(k + l), h.coeff(i - k, j - l));
      }
    h.at(i, j) = s * Rational(1, i + j);
  });
  return h;
}

SeriesXQ pow_rational(const SeriesXQ& a, const Rational& r) { return exp(log(a) * r); }

SeriesXQ compose_q(const SeriesXQ& a, const SeriesQ& g) {
  std::vector<SeriesQ> rows;
  int t = a.qord();
  for (int i = 0; i <= a.xord(); ++i) {
    rows.push_back(compose(a.x_coeff(i), g));
    t = std::min(t, rows.back().trunc());
  }
  SeriesXQ r(a.xord(), t);
  for (int i = 0; i <= a.xord(); ++i)
    for (int j = 0; j <= t; ++j) r.at(i, j) = rows[static_cast<std::size_t>(i)].coeff(j);
  return r;
}

// ---------------------------------------------------------------- NovikovSeries

bool NovikovSeries::within(const Key& k) const {
  if (k.size() != bound_.size()) return false;
  for (std::size_t i = 0; i < k.size(); ++i)
    if (k[i] < 0 || k[i] > bound_[i]) return false;
  return true;
}

void NovikovSeries::add(const Key& k, int zpow, const LaurentY& c) {
  if (!within(k)) throw std::out_of_range("NovikovSeries: divisor key outside bound");
  if (c.is_zero()) return;
  ZPoly& p = terms_[k];
  if (static_cast<int>(p.size()) <= zpow) p.resize(static_cast<std::size_t>(zpow + 1));
  p[static_cast<std::size_t>(zpow)] += c;
}

LaurentY NovikovSeries::coeff(const Key& k, int zpow) const {
  auto it = terms_.find(k);
  if (it == terms_.end() || zpow >= static_cast<int>(it->second.size())) return {};
  return it->second[static_cast<std::size_t>(zpow)];
}

NovikovSeries& NovikovSeries::operator+=(const NovikovSeries& o) {
  for (const auto& [k, p] : o.terms_)
    for (std::size_t z = 0; z < p.size(); ++z) add(k, static_cast<int>(z), p[z]);
  return *this;
}

NovikovSeries operator*(const NovikovSeries& a, const NovikovSeries& b) {
  NovikovSeries r(a.bound_);
  for (const auto& [ka, pa] : a.terms_)
    for (const auto& [kb, pb] : b.terms_) {
      NovikovSeries::Key k(ka.size());
      for (std::size_t i = 0; i < k.size(); ++i) k[i] = ka[i] + kb[i];
      if (!r.within(k)) continue;
      for (std::size_t i = 0; i < pa.size(); ++i) {
        if (pa[i].is_zero()) continue;
        for (std::size_t j = 0; j < pb.size(); ++j)
          if (!pb[j].is_zero()) r.add(k, static_cast<int>(i + j), pa[i] * pb[j]);
      }
    }
  return r;
}

NovikovSeries NovikovSeries::scaled(const Rational& c) const {
  NovikovSeries r = *this;
  for (auto& [k, p] : r.terms_)
    for (auto& v : p) v *= c;
  return r;
}

namespace {

void require_no_zero_key(const NovikovSeries& a) {
  for (const auto& [k, p] : a.terms())
    if (std::all_of(k.begin(), k.end(), [](int v) { return v == 0; }))
      throw std::domain_error("NovikovSeries: zero divisor key in log/exp argument");
}

}  // namespace

NovikovSeries log1p(const NovikovSeries& a) {
  require_no_zero_key(a);
  NovikovSeries r(a.bound());
  NovikovSeries p = a;
  for (int k = 1; !p.terms().empty(); ++k) {
    r += p.scaled(Rational(k % 2 == 1 ? 1 : -1, k));
    p = p * a;
  }
  return r;
}

NovikovSeries expm1(const NovikovSeries& a) {
  require_no_zero_key(a);
  NovikovSeries r(a.bound());
  NovikovSeries p = a;
  Rational fact = 1;
  for (int k = 1; !p.terms().empty(); ++k) {
    fact *= k;
    r += p.scaled(1 / fact);
    p = p * a;
  }
  return r;
}

}  // namespace refcurve
