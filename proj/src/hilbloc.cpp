#include "refcurve/hilbloc.hpp"

#include <algorithm>
#include <functional>
#include <thread>

namespace refcurve {

// ---------------------------------------------------------------- partitions

int Partition::size() const {
  int s = 0;
  for (int p : parts) s += p;
  return s;
}

std::vector<std::array<int, 2>> Partition::cells() const {
  std::vector<std::array<int, 2>> out;
  for (std::size_t j = 0; j < parts.size(); ++j)
    for (int i = 0; i < parts[j]; ++i) out.push_back({i, static_cast<int>(j)});
  return out;
}

int Partition::arm(int i, int j) const { return parts[static_cast<std::size_t>(j)] - 1 - i; }

int Partition::leg(int i, int j) const {
  int rows = 0;
  for (int p : parts)
    if (p > i) ++rows;
  return rows - 1 - j;
}

namespace {

void partitions_rec(int n, int max_part, std::vector<int>& cur, std::vector<Partition>& out) {
  if (n == 0) {
    out.push_back({cur});
    return;
  }
  for (int p = std::min(n, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions_rec(n - p, p, cur, out);
    cur.pop_back();
  }
}

Weight operator+(Weight a, Weight b) { return {a[0] + b[0], a[1] + b[1]}; }
Weight operator-(Weight a, Weight b) { return {a[0] - b[0], a[1] - b[1]}; }
Weight operator*(long k, Weight a) { return {k * a[0], k * a[1]}; }
long dot(Weight a, const std::array<long, 2>& v) { return a[0] * v[0] + a[1] * v[1]; }

}  // namespace

std::vector<Partition> partitions_of(int n) {
  std::vector<Partition> out;
  if (n < 0) return out;
  std::vector<int> cur;
  partitions_rec(n, n, cur, out);
  return out;
}

LocalWeights local_weights(const Partition& p, const ToricChart& c) {
  LocalWeights lw;
  for (const auto& [i, j] : p.cells()) {
    long a = p.arm(i, j), l = p.leg(i, j);
    lw.tangent.push_back((a + 1) * c.w1 - l * c.w2);
    lw.tangent.push_back((-a) * c.w1 + (l + 1) * c.w2);
    lw.bundle.push_back(c.m - static_cast<long>(i) * c.w1 - static_cast<long>(j) * c.w2);
  }
  return lw;
}

// ---------------------------------------------------------------- surfaces

ToricSurfaceModel ToricSurfaceModel::p2(int d) {
  ToricSurfaceModel s;
  s.name = "p2";
  s.bundle = {d};
  const Weight lam[3] = {{0, 0}, {1, 0}, {0, 1}};
  for (int i = 0; i < 3; ++i) {
    int j = i == 0 ? 1 : 0;
    int k = i == 2 ? 1 : 2;
    s.charts.push_back({lam[j] - lam[i], lam[k] - lam[i], static_cast<long>(-d) * lam[i]});
  }
  return s;
}

ToricSurfaceModel ToricSurfaceModel::p1xp1(int a, int b) {
  ToricSurfaceModel s;
  s.name = "p1xp1";
  s.bundle = {a, b};
  for (int p = 0; p < 2; ++p)
    for (int q = 0; q < 2; ++q) {
      Weight w1 = p == 0 ? Weight{1, 0} : Weight{-1, 0};
      Weight w2 = q == 0 ? Weight{0, 1} : Weight{0, -1};
      s.charts.push_back({w1, w2, Weight{-static_cast<long>(a) * p, -static_cast<long>(b) * q}});
    }
  return s;
}

std::string ToricSurfaceModel::key() const {
  std::string k = name;
  for (int b : bundle) k += ":" + std::to_string(b);
  return k;
}

CobordismClass ToricSurfaceModel::cobordism() const {
  auto at = [&](const std::array<long, 2>& v) {
    CobordismClass c{0, 0, 0, 0};
    for (const auto& ch : charts) {
      Rational w1 = dot(ch.w1, v), w2 = dot(ch.w2, v), m = dot(ch.m, v);
      if (w1 == 0 || w2 == 0) throw LocalizationError("cobordism: resonant direction");
      Rational e = w1 * w2;
      Rational k = -(w1 + w2);
      c.L2 += m * m / e;
      c.LK += m * k / e;
      c.K2 += k * k / e;
      c.c2 += 1;
    }
    return c;
  };
  CobordismClass a = at({2, 3}), b = at({5, 7});
  if (!(a == b)) throw LocalizationError("cobordism: localization depends on the direction");
  return a;
}

CobordismClass ToricSurfaceModel::expected_cobordism() const {
  if (name == "p2") {
    long d = bundle[0];
    return {Rational(d * d), Rational(-3 * d), 9, 3};
  }
  long a = bundle[0], b = bundle[1];
  return {Rational(2 * a * b), Rational(-2 * a - 2 * b), 8, 4};
}

std::vector<FixedPoint> fixed_points(const ToricSurfaceModel& s, int n) {
  std::vector<FixedPoint> out;
  FixedPoint cur(s.charts.size());
  std::function<void(std::size_t, int)> rec = [&](std::size_t c, int left) {
    if (c + 1 == s.charts.size()) {
      for (const auto& p : partitions_of(left)) {
        cur[c] = p;
        out.push_back(cur);
      }
      return;
    }
    for (int k = left; k >= 0; --k)
      for (const auto& p : partitions_of(k)) {
        cur[c] = p;
        rec(c + 1, left - k);
      }
  };
  if (n >= 0 && !s.charts.empty()) rec(0, n);
  return out;
}

std::array<ToricSurfaceModel, 4> basis_models() {
  return {ToricSurfaceModel::p2(0), ToricSurfaceModel::p1xp1(0, 0), ToricSurfaceModel::p1xp1(1, 0),
          ToricSurfaceModel::p1xp1(1, -1)};
}

// ---------------------------------------------------------------- genus series

namespace {

using RVec = std::vector<Rational>;

RVec mul_trunc(const RVec& a, const RVec& b, std::size_t len) {
  RVec r(len);
  for (std::size_t i = 0; i < a.size() && i < len; ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < b.size() && i + j < len; ++j)
      if (sgn(b[j]) != 0) r[i + j] += a[i] * b[j];
  }
  return r;
}

// B_k^+ / k! for k < len: coefficients of z / (1 - e^{-z}).
RVec todd_coefficients(std::size_t len) {
  RVec g(len);  // (1 - e^{-z}) / z
  mpz_class fact = 1;
  for (std::size_t k = 0; k < len; ++k) {
    fact *= static_cast<unsigned long>(k + 1);
    g[k] = Rational(k % 2 == 0 ? 1 : -1) / Rational(fact);
  }
  RVec inv(len);
  inv[0] = 1;
  for (std::size_t k = 1; k < len; ++k) {
    Rational s = 0;
    for (std::size_t j = 1; j <= k; ++j) s += g[j] * inv[k - j];
    inv[k] = -s;
  }
  return inv;
}

// log of a series with constant term 1
RVec log1(const RVec& a) {
  std::size_t len = a.size();
  RVec l(len);
  for (std::size_t k = 1; k < len; ++k) {
    Rational s = Rational(static_cast<long>(k)) * a[k];
    for (std::size_t j = 1; j < k; ++j) s -= Rational(static_cast<long>(j)) * l[j] * a[k - j];
    l[k] = s / static_cast<long>(k);
  }
  return l;
}

// exp of a series with zero constant term
RVec exp0(const RVec& a) {
  std::size_t len = a.size();
  RVec e(len);
  if (len == 0) return e;
  e[0] = 1;
  for (std::size_t k = 1; k < len; ++k) {
    Rational s = 0;
    for (std::size_t j = 1; j <= k; ++j)
      if (sgn(a[j]) != 0) s += Rational(static_cast<long>(j)) * a[j] * e[k - j];
    e[k] = s / static_cast<long>(k);
  }
  return e;
}

// coefficients of f(v) = y v + sum B_k^+ (1-y)^k v^k / k! at y = y0
RVec f_coefficients_at(std::size_t len, const Rational& y0) {
  RVec t = todd_coefficients(len);
  RVec f(len);
  Rational p = 1;
  for (std::size_t k = 0; k < len; ++k) {
    f[k] = t[k] * p;
    p *= (1 - y0);
  }
  if (len > 1) f[1] += y0;
  return f;
}

LaurentY poly_from_rvec(const RVec& c) {
  LaurentY p;
  for (std::size_t k = 0; k < c.size(); ++k) p += LaurentY::y_pow(static_cast<int>(k), c[k]);
  return p;
}

}  // namespace

SeriesQ hirzebruch_f_at(int ord, const Rational& y0) {
  RVec f = f_coefficients_at(static_cast<std::size_t>(ord + 1), y0);
  SeriesQ s(ord, 0);
  for (int k = 0; k <= ord; ++k) s.at(k) = LaurentY(f[static_cast<std::size_t>(k)]);
  return s;
}

SeriesQ hirzebruch_f(int ord) {
  RVec t = todd_coefficients(static_cast<std::size_t>(ord + 1));
  const LaurentY one_minus_y = LaurentY(1L) - LaurentY::y_pow(1);
  SeriesQ s(ord, 0);
  LaurentY p(1L);
  for (int k = 0; k <= ord; ++k) {
    s.at(k) = p * t[static_cast<std::size_t>(k)];
    p *= one_minus_y;
  }
  if (ord >= 1) s.at(1) += LaurentY::y_pow(1);
  return s;
}

// ---------------------------------------------------------------- localization

namespace {

struct TermData {
  Rational inv_weight;             // 1 / prod of tangent weights
  std::vector<mpz_class> T;        // power sums of tangent weights, k <= 2n
  std::vector<mpz_class> M;        // power sums of bundle weights, j <= 2n
  std::vector<mpz_class> sigma;    // elementary symmetric functions of bundle weights
  std::vector<mpz_class> bundle;   // the bundle weights themselves
};

bool resonant(const std::vector<FixedPoint>& fps, const ToricSurfaceModel& s, const std::array<long, 2>& v) {
  for (const auto& fp : fps)
    for (std::size_t c = 0; c < fp.size(); ++c)
      for (const auto& w : local_weights(fp[c], s.charts[c]).tangent)
        if (dot(w, v) == 0) return true;
  return false;
}

std::vector<TermData> term_data(const std::vector<FixedPoint>& fps, const ToricSurfaceModel& s, int n,
                                const std::array<long, 2>& v) {
  std::vector<TermData> out;
  out.reserve(fps.size());
  const auto K = static_cast<std::size_t>(2 * n + 1);
  for (const auto& fp : fps) {
    TermData td;
    td.T.assign(K, 0);
    td.M.assign(K, 0);
    td.sigma.assign(static_cast<std::size_t>(n + 1), 0);
    td.sigma[0] = 1;
    mpz_class prod = 1;
    for (std::size_t c = 0; c < fp.size(); ++c) {
      LocalWeights lw = local_weights(fp[c], s.charts[c]);
      for (const auto& w : lw.tangent) {
        mpz_class t = dot(w, v);
        prod *= t;
        mpz_class p = 1;
        for (std::size_t k = 0; k < K; ++k, p *= t) td.T[k] += p;
      }
      for (const auto& w : lw.bundle) {
        mpz_class m = dot(w, v);
        td.bundle.push_back(m);
        mpz_class p = 1;
        for (std::size_t k = 0; k < K; ++k, p *= m) td.M[k] += p;
        for (std::size_t b = td.sigma.size() - 1; b >= 1; --b) td.sigma[b] += m * td.sigma[b - 1];
      }
    }
    td.inv_weight = Rational(1) / Rational(prod);
    out.push_back(std::move(td));
  }
  return out;
}

// acc[p][a]: coefficient of s^{p - 2n} x^a of the summed fixed-point terms.
using Grid = std::vector<RVec>;

Grid localize_at(const std::vector<TermData>& data, int n, int X, bool pure, const Rational& y0, int threads) {
  const auto P = static_cast<std::size_t>(2 * n + 1);
  const auto XL = static_cast<std::size_t>(X + 1);
  const std::size_t K = P + XL;
  RVec e = log1(f_coefficients_at(K, y0));  // log f

  // binomials up to K
  std::vector<std::vector<mpz_class>> binom(K, std::vector<mpz_class>(K, 0));
  for (std::size_t i = 0; i < K; ++i) {
    binom[i][0] = 1;
    for (std::size_t j = 1; j <= i; ++j) binom[i][j] = binom[i - 1][j - 1] + (j < i ? binom[i - 1][j] : mpz_class(0));
  }

  // F0 = f(x)^{-n}
  RVec F0(XL);
  if (!pure) {
    RVec le(XL);
    for (std::size_t i = 1; i < XL; ++i) le[i] = -Rational(n) * e[i];
    F0 = exp0(le);
  }

  auto worker = [&](std::size_t begin, std::size_t stride, Grid& acc) {
    acc.assign(P, RVec(pure ? 1 : XL));
    for (std::size_t t = begin; t < data.size(); t += stride) {
      const TermData& td = data[t];
      if (pure) {
        RVec E(P);
        for (std::size_t j = 1; j < P; ++j) E[j] = e[j] * Rational(td.T[j]);
        RVec F = exp0(E);
        for (std::size_t p = 0; p < P; ++p) acc[p][0] += F[p] * td.inv_weight;
        continue;
      }
      // E[j][i] for j >= 1
      Grid E(P, RVec(XL));
      for (std::size_t j = 1; j < P; ++j)
        for (std::size_t i = 0; i < XL; ++i) {
          Rational c = -Rational(binom[i + j][j]) * Rational(td.M[j]);
          if (i == 0) c += Rational(td.T[j]);
          E[j][i] = e[i + j] * c;
        }
      Grid F(P);
      F[0] = F0;
      for (std::size_t j = 1; j < P; ++j) {
        RVec s(XL);
        for (std::size_t k = 1; k <= j; ++k) {
          RVec prod = mul_trunc(E[k], F[j - k], XL);
          for (std::size_t i = 0; i < XL; ++i) s[i] += Rational(static_cast<long>(k)) * prod[i];
        }
        for (auto& v : s) v /= static_cast<long>(j);
        F[j] = std::move(s);
      }
      // multiply by prod_l (s m_l + x) = sum_b sigma_b s^b x^{n-b}
      for (std::size_t p = 0; p < P; ++p)
        for (std::size_t b = 0; b <= static_cast<std::size_t>(n) && b <= p; ++b) {
          if (td.sigma[b] == 0) continue;
          std::size_t shift = static_cast<std::size_t>(n) - b;
          Rational w = Rational(td.sigma[b]) * td.inv_weight;
          for (std::size_t a = shift; a < XL; ++a) acc[p][a] += w * F[p - b][a - shift];
        }
    }
  };

  int nt = std::max(1, std::min<int>(threads, static_cast<int>(data.size())));
  std::vector<Grid> parts(static_cast<std::size_t>(nt));
  std::vector<std::thread> pool;
  for (int t = 1; t < nt; ++t)
    pool.emplace_back(worker, static_cast<std::size_t>(t), static_cast<std::size_t>(nt), std::ref(parts[static_cast<std::size_t>(t)]));
  worker(0, static_cast<std::size_t>(nt), parts[0]);
  for (auto& th : pool) th.join();
  Grid acc = parts[0];
  for (std::size_t t = 1; t < parts.size(); ++t)
    for (std::size_t p = 0; p < P; ++p)
      for (std::size_t a = 0; a < acc[p].size(); ++a) acc[p][a] += parts[t][p][a];
  return acc;
}

const std::vector<std::array<long, 2>> kFallbackDirections = {{3, 11}, {7, 19}, {13, 29}, {17, 41}, {23, 53}};

// Two non-resonant directions for this n: the requested ones if possible.
std::array<std::array<long, 2>, 2> choose_directions(const std::vector<FixedPoint>& fps, const ToricSurfaceModel& s,
                                                     const LocalizationOptions& opt) {
  std::vector<std::array<long, 2>> cand = {opt.direction, opt.check_direction};
  cand.insert(cand.end(), kFallbackDirections.begin(), kFallbackDirections.end());
  std::vector<std::array<long, 2>> ok;
  for (const auto& v : cand) {
    if (std::find(ok.begin(), ok.end(), v) != ok.end()) continue;
    if (!resonant(fps, s, v)) ok.push_back(v);
    if (ok.size() == 2) break;
  }
  if (ok.size() < 2) throw LocalizationError("no non-resonant direction found");
  return {ok[0], ok[1]};
}

RVec scala_at(const std::vector<TermData>& data, int n) {
  const auto P = static_cast<std::size_t>(2 * n + 1);
  const auto N = static_cast<std::size_t>(n + 1);
  RVec e = log1(f_coefficients_at(P, 0));
  RVec fact_inv(P);
  mpz_class f = 1;
  for (std::size_t r = 0; r < P; ++r) {
    if (r > 0) f *= static_cast<unsigned long>(r);
    fact_inv[r] = Rational(1) / Rational(f);
  }
  Grid total(P, RVec(N));  // [s-power][x-power]
  for (const auto& td : data) {
    RVec E(P);
    for (std::size_t j = 1; j < P; ++j) E[j] = e[j] * Rational(td.T[j]);
    RVec F = exp0(E);
    // prod over bundle weights of 1 + x e^{-s m}
    Grid B(N, RVec(P));
    B[0][0] = 1;
    for (const auto& m : td.bundle) {
      RVec ex(P);
      mpz_class pw = 1;
      for (std::size_t r = 0; r < P; ++r, pw *= -m) ex[r] = Rational(pw) * fact_inv[r];
      for (std::size_t k = N - 1; k >= 1; --k) {
        RVec add = mul_trunc(B[k - 1], ex, P);
        for (std::size_t p = 0; p < P; ++p) B[k][p] += add[p];
      }
    }
    for (std::size_t k = 0; k < N; ++k) {
      RVec prod = mul_trunc(F, B[k], P);
      for (std::size_t p = 0; p < P; ++p) total[p][k] += prod[p] * td.inv_weight;
    }
  }
  for (std::size_t p = 0; p + 1 < P; ++p)
    for (const auto& c : total[p])
      if (sgn(c) != 0) throw LocalizationError("fixed-point sum keeps a pole in the torus parameter");
  return total[P - 1];
}

RVec localize_n(const ToricSurfaceModel& s, const LocalizationOptions& opt, int n, const Rational& y0) {
  const bool pure = opt.pure_genus;
  const int X = pure ? 0 : opt.x_ord;
  std::vector<FixedPoint> fps = fixed_points(s, n);
  auto dirs = choose_directions(fps, s, opt);
  auto run = [&](const std::array<long, 2>& v) {
    Grid acc = localize_at(term_data(fps, s, n, v), n, X, pure, y0, opt.threads);
    for (int p = 0; p < 2 * n; ++p)
      for (const auto& c : acc[static_cast<std::size_t>(p)])
        if (sgn(c) != 0) throw LocalizationError("fixed-point sum keeps a pole in the torus parameter");
    return acc[static_cast<std::size_t>(2 * n)];
  };
  RVec r = run(dirs[0]);
  if (opt.check_independence && n > 0 && run(dirs[1]) != r)
    throw LocalizationError("localized series depends on the direction");
  return r;
}

}  // namespace

std::vector<std::vector<Rational>> scala_series(const ToricSurfaceModel& s, const LocalizationOptions& opt) {
  if (opt.n_max < 0) throw std::invalid_argument("scala_series: n_max must be >= 0");
  std::vector<std::vector<Rational>> rows;
  for (int n = 0; n <= opt.n_max; ++n) {
    std::vector<FixedPoint> fps = fixed_points(s, n);
    auto dirs = choose_directions(fps, s, opt);
    RVec r = scala_at(term_data(fps, s, n, dirs[0]), n);
    if (opt.check_independence && n > 0 && scala_at(term_data(fps, s, n, dirs[1]), n) != r)
      throw LocalizationError("localized series depends on the direction");
    rows.push_back(r);
  }
  return rows;
}

SeriesXQ d_series_at(const ToricSurfaceModel& s, const LocalizationOptions& opt, const Rational& y0) {
  if (opt.n_max < 0 || opt.x_ord < 0) throw std::invalid_argument("d_series: orders must be >= 0");
  SeriesXQ d(opt.x_ord, opt.n_max);
  for (int n = 0; n <= opt.n_max; ++n) {
    RVec r = localize_n(s, opt, n, y0);
    for (std::size_t a = 0; a < r.size(); ++a) d.at(static_cast<int>(a), n) = LaurentY(r[a]);
  }
  return d;
}

SeriesXQ d_series(const ToricSurfaceModel& s, const LocalizationOptions& opt) {
  // y-degree of the x^a q^n coefficient is at most 2n (pure genus) or n + a
  auto bound = [&](int n, int a) { return opt.pure_genus ? 2 * n : n + a; };
  int maxb = 0;
  for (int n = 0; n <= opt.n_max; ++n) maxb = std::max(maxb, bound(n, opt.pure_genus ? 0 : opt.x_ord));
  const int margin = 2;
  const int npts = maxb + 1 + margin;
  std::vector<SeriesXQ> vals;
  for (int k = 0; k < npts; ++k) vals.push_back(d_series_at(s, opt, Rational(k)));

  // Lagrange basis on the nodes 0..npts-1
  std::vector<RVec> basis;
  for (int j = 0; j < npts; ++j) {
    RVec b = {1};
    for (int k = 0; k < npts; ++k) {
      if (k == j) continue;
      RVec lin = {Rational(-k) / (j - k), Rational(1) / (j - k)};
      b = mul_trunc(b, lin, b.size() + 1);
    }
    basis.push_back(b);
  }

  SeriesXQ d(opt.x_ord, opt.n_max);
  for (int n = 0; n <= opt.n_max; ++n)
    for (int a = 0; a <= (opt.pure_genus ? 0 : opt.x_ord); ++a) {
      RVec c(static_cast<std::size_t>(npts));
      for (int j = 0; j < npts; ++j) {
        Rational v = vals[static_cast<std::size_t>(j)].coeff(a, n).specialize(0);
        for (int k = 0; k < npts; ++k) c[static_cast<std::size_t>(k)] += v * basis[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
      }
      for (int k = bound(n, a) + 1; k < npts; ++k)
        if (sgn(c[static_cast<std::size_t>(k)]) != 0)
          throw LocalizationError("y-dependence exceeds its degree bound at x^" + std::to_string(a) + " q^" +
                                  std::to_string(n));
      d.at(a, n) = poly_from_rvec(c);
    }
  return d;
}

// ---------------------------------------------------------------- universal series

namespace {

std::array<std::array<Rational, 4>, 4> invert4(std::array<std::array<Rational, 4>, 4> m) {
  std::array<std::array<Rational, 4>, 4> inv{};
  for (int i = 0; i < 4; ++i) inv[i][i] = 1;
  for (int c = 0; c < 4; ++c) {
    int piv = c;
    while (piv < 4 && sgn(m[piv][c]) == 0) ++piv;
    if (piv == 4) throw std::domain_error("universal_solve: basis classes are linearly dependent");
    std::swap(m[c], m[piv]);
    std::swap(inv[c], inv[piv]);
    Rational d = m[c][c];
    for (int k = 0; k < 4; ++k) {
      m[c][k] /= d;
      inv[c][k] /= d;
    }
    for (int r = 0; r < 4; ++r) {
      if (r == c || sgn(m[r][c]) == 0) continue;
      Rational f = m[r][c];
      for (int k = 0; k < 4; ++k) {
        m[r][k] -= f * m[c][k];
        inv[r][k] -= f * inv[c][k];
      }
    }
  }
  return inv;
}

SeriesXQ add_to_x0(SeriesXQ a, const SeriesQ& s, const Rational& c) {
  for (int j = 0; j <= a.qord(); ++j) a.at(0, j) += s.coeff(j) * c;
  return a;
}

}  // namespace

SeriesQ q_over_Q_pow(const Rational& e, int T) {
  SeriesQ one = SeriesQ::constant(LaurentY(1L), T);
  SeriesQ base = (one - SeriesQ::monomial(1, LaurentY(1L), T)) * (one - SeriesQ::monomial(1, LaurentY::y_pow(1), T));
  return pow_rational(base, e);
}

UniversalSeries universal_solve(const std::array<SeriesXQ, 4>& basis_d,
                                const std::array<CobordismClass, 4>& basis_classes) {
  std::array<std::array<Rational, 4>, 4> m{};
  for (int j = 0; j < 4; ++j) m[j] = basis_classes[static_cast<std::size_t>(j)].vec();
  auto inv = invert4(m);
  UniversalSeries u;
  u.x_ord = basis_d[0].xord();
  u.q_ord = basis_d[0].qord();
  for (const auto& b : basis_d) {
    u.x_ord = std::min(u.x_ord, b.xord());
    u.q_ord = std::min(u.q_ord, b.qord());
  }
  std::array<SeriesXQ, 4> logs;
  for (int j = 0; j < 4; ++j) logs[static_cast<std::size_t>(j)] = log(basis_d[static_cast<std::size_t>(j)].truncated(u.x_ord, u.q_ord));
  // log D_i = sum_j inv[i][j] log D^{(j)}
  SeriesQ log_Q_over_q = log(q_over_Q_pow(-1, u.q_ord));
  for (int i = 0; i < 4; ++i) {
    SeriesXQ s(u.x_ord, u.q_ord);
    for (int j = 0; j < 4; ++j)
      if (sgn(inv[i][j]) != 0) s += logs[static_cast<std::size_t>(j)] * inv[i][j];
    u.log_d[static_cast<std::size_t>(i)] = s;
    u.log_d_tilde[static_cast<std::size_t>(i)] = i < 2 ? add_to_x0(s, log_Q_over_q, Rational(1, 2)) : s;
  }
  return u;
}

UniversalSeries universal_from_localization(const LocalizationOptions& opt) {
  auto models = basis_models();
  std::array<SeriesXQ, 4> d;
  std::array<CobordismClass, 4> c;
  for (std::size_t i = 0; i < 4; ++i) {
    d[i] = d_series(models[i], opt);
    c[i] = models[i].cobordism();
  }
  return universal_solve(d, c);
}

SeriesXQ evaluate_cobordism(const UniversalSeries& u, const CobordismClass& c, bool tilde) {
  const auto& logs = tilde ? u.log_d_tilde : u.log_d;
  auto v = c.vec();
  SeriesXQ s(u.x_ord, u.q_ord);
  for (std::size_t i = 0; i < 4; ++i)
    if (sgn(v[i]) != 0) s += logs[i] * v[i];
  return exp(s);
}

// ---------------------------------------------------------------- chi and N

namespace {

ChiNExtract extract(const SeriesXQ& d, int delta, const Rational& genus, const SeriesQ& f, const SeriesQ& Q,
                    const SeriesQ& qQ) {
  if (delta < 0) throw std::invalid_argument("chi_and_N_extract: delta must be >= 0");
  if (d.xord() < delta) throw std::invalid_argument("chi_and_N_extract: x-truncation below delta");
  const int T = d.qord();
  SeriesQ fp = pow_int(f.truncated(delta), delta + 1);
  ChiNExtract out;
  std::vector<SeriesQ> by_h;  // sum_n q^n [x^h] f^{delta+1} D_n
  for (int h = 0; h <= delta; ++h) {
    SeriesQ r(T, 0);
    for (int a = 0; a <= h; ++a) r += d.x_coeff(a) * fp.coeff(h - a);
    by_h.push_back(r);
  }
  for (int n = 0; n <= T; ++n) out.chi.push_back(by_h[static_cast<std::size_t>(delta)].coeff(n));
  out.N = expand_in_basis(by_h[static_cast<std::size_t>(delta)] * qQ, Q, T);
  out.N_bold.assign(static_cast<std::size_t>(T + 1), std::vector<LaurentY>(static_cast<std::size_t>(delta + 1)));
  for (int h = 0; h <= delta; ++h) {
    auto c = expand_in_basis(by_h[static_cast<std::size_t>(h)] * qQ, Q, T);
    for (int i = 0; i <= T; ++i) out.N_bold[static_cast<std::size_t>(i)][static_cast<std::size_t>(h)] = c[static_cast<std::size_t>(i)];
  }
  for (int i = 0; i <= T; ++i)
    if (out.N_bold[static_cast<std::size_t>(i)][static_cast<std::size_t>(delta)] != out.N[static_cast<std::size_t>(i)])
      throw LocalizationError("H-coefficient of bold N differs from N");
  (void)genus;
  return out;
}

}  // namespace

ChiNExtract chi_and_N_extract(const SeriesXQ& d, int delta, const Rational& genus) {
  const int T = d.qord();
  return extract(d, delta, genus, hirzebruch_f(delta), Q_of_q(T + 1), q_over_Q_pow(1 - genus, T));
}

ChiNExtract chi_and_N_extract_at(const SeriesXQ& d, int delta, const Rational& genus, const Rational& y0) {
  const int T = d.qord();
  return extract(d, delta, genus, hirzebruch_f_at(delta, y0), Q_of_q(T + 1).specialize_y(y0),
                 q_over_Q_pow(1 - genus, T).specialize_y(y0));
}

SeriesXQ to_Q_coordinates(const SeriesXQ& d_tilde) { return compose_q(d_tilde, q_of_Q(d_tilde.qord())); }

SeriesQ diagonal_of(const SeriesXQ& d_tilde_Q, int order) {
  int t = std::min({order, d_tilde_Q.xord(), d_tilde_Q.qord()});
  SeriesQ s(t, 0);
  for (int k = 0; k <= t; ++k) s.at(k) = d_tilde_Q.coeff(k, k);
  return s;
}

DiagonalResult diagonal_a_series(const UniversalSeries& u, int order) {
  DiagonalResult r;
  for (std::size_t i = 0; i < 4; ++i) r.A[i] = diagonal_of(to_Q_coordinates(exp(u.log_d_tilde[i])), order);
  return r;
}

DlconjReport dlconj_check(const SeriesXQ& d) {
  DlconjReport r;
  for (int k = 0; k <= d.xord(); ++k) {
    int deg = -1;
    for (int j = 0; j <= d.qord(); ++j)
      if (!d.coeff(k, j).is_zero()) deg = j;
    if (deg > k) {
      r.pass = false;
      r.violations.push_back({k, deg});
    }
  }
  return r;
}

}  // namespace refcurve
