#include "refcurve/germs.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <thread>

namespace refcurve {

LPoly l_poly(const std::vector<long>& ascending) {
  LPoly p;
  for (std::size_t k = 0; k < ascending.size(); ++k) p += l_pow(static_cast<int>(k), ascending[k]);
  return p;
}

std::vector<long> l_coeffs(const LPoly& p) {
  std::vector<long> out;
  for (const auto& [h, c] : p.terms()) {
    if (h < 0 || h % 2 != 0 || c.get_den() != 1) throw GermError("not a polynomial in L over Z: " + p.to_text("L"));
    auto k = static_cast<std::size_t>(h / 2);
    if (out.size() <= k) out.resize(k + 1, 0);
    out[k] = c.get_num().get_si();
  }
  return out;
}

char family_letter(InfiniteFamily f) {
  switch (f) {
    case InfiniteFamily::A: return 'A';
    case InfiniteFamily::D: return 'D';
    case InfiniteFamily::E: return 'E';
  }
  return '?';
}

GermClass GermClass::from_label(const std::string& label) {
  if (label == "A9-as-printed") return {InfiniteFamily::A, 1, 4, label};
  if (label.size() < 2) throw GermError("unknown germ label: " + label);
  int mu = 0;
  try {
    std::size_t used = 0;
    mu = std::stoi(label.substr(1), &used);
    if (used != label.size() - 1) throw GermError("unknown germ label: " + label);
  } catch (const std::logic_error&) {
    throw GermError("unknown germ label: " + label);
  }
  GermClass g;
  g.label = label;
  switch (label[0]) {
    case 'A':
      if (mu < 1) throw GermError("A_mu needs mu >= 1");
      g.family = InfiniteFamily::A;
      g.branches = mu % 2 == 1 ? 2 : 1;
      break;
    case 'D':
      if (mu < 4) throw GermError("D_mu needs mu >= 4");
      g.family = InfiniteFamily::D;
      g.branches = mu % 2 == 0 ? 3 : 2;
      break;
    case 'E':
      if (mu < 6 || mu > 8) throw GermError("E_mu needs mu in 6..8");
      g.family = InfiniteFamily::E;
      g.branches = mu == 7 ? 2 : 1;
      break;
    default:
      throw GermError("unknown germ label: " + label);
  }
  g.delta = (mu + g.branches - 1) / 2;
  g.validate();
  return g;
}

void GermClass::validate() const {
  if (delta < 1 || branches < 1) throw GermError("germ needs delta >= 1 and at least one branch");
  int mu = milnor();
  if (mu < 1) throw GermError("Milnor number must be positive");
  bool ok = false;
  switch (family) {
    case InfiniteFamily::A: ok = branches == (mu % 2 == 1 ? 2 : 1); break;
    case InfiniteFamily::D: ok = mu >= 4 && branches == (mu % 2 == 0 ? 3 : 2); break;
    case InfiniteFamily::E:
      ok = (mu == 6 && branches == 1) || (mu == 7 && branches == 2) || (mu == 8 && branches == 1);
      break;
  }
  if (!ok) {
    throw GermError(std::string("no ") + family_letter(family) + "-type germ with b = " + std::to_string(branches) +
                    ", delta = " + std::to_string(delta));
  }
}

namespace {

SeriesQ one_minus(int k, const LPoly& c, int T) {
  return SeriesQ::constant(LaurentY(1L), T) - SeriesQ::monomial(k, c, T);
}

using Poly = std::vector<LPoly>;  // index = power of q

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j].add_product(a[i], b[j]);
  return r;
}

void trim(Poly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

}  // namespace

SeriesQ infinite_germ_series(InfiniteFamily family, int T) {
  if (T < 0) throw std::invalid_argument("infinite_germ_series: T must be >= 0");
  SeriesQ den = one_minus(1, 1L, T) * one_minus(2, l_pow(1), T);
  SeriesQ num = SeriesQ::constant(LaurentY(1L), T);
  switch (family) {
    case InfiniteFamily::A: break;
    case InfiniteFamily::D:
      den = den * one_minus(1, 1L, T);
      num = num - SeriesQ::monomial(1, 1L, T) + SeriesQ::monomial(3, l_pow(2), T);
      break;
    case InfiniteFamily::E: den = den * one_minus(3, l_pow(2), T); break;
  }
  return num / den;
}

std::vector<LPoly> f_polynomial(const GermClass& g) {
  g.validate();
  const int d = g.delta;
  SeriesQ low = infinite_germ_series(g.family, d);
  for (int i = 0; i < g.branches; ++i) low = low * one_minus(1, 1L, d);
  Poly f(static_cast<std::size_t>(2 * d + 1));
  for (int n = 0; n <= d; ++n) f[static_cast<std::size_t>(n)] = low.coeff(n);
  for (int n = 0; n < d; ++n) f[static_cast<std::size_t>(2 * d - n)] = f[static_cast<std::size_t>(n)].shift(2 * (d - n));
  // The completed polynomial has to expand with nothing above u^delta.
  extract_tilde_N(f, d);
  trim(f);
  return f;
}

std::vector<LPoly> extract_tilde_N(const std::vector<LPoly>& f, int delta) {
  if (delta < 0) throw std::invalid_argument("extract_tilde_N: delta must be >= 0");
  if (static_cast<int>(f.size()) > 2 * delta + 1) {
    Poly high(f.begin() + 2 * delta + 1, f.end());
    trim(high);
    if (!high.empty()) throw GermError("f has degree above 2 delta");
  }
  const Poly P = {LPoly(1L), -(LPoly(1L) + l_pow(1)), l_pow(1)};
  std::vector<Poly> Ppow(static_cast<std::size_t>(delta + 1));
  Ppow[0] = {LPoly(1L)};
  for (int k = 1; k <= delta; ++k) Ppow[static_cast<std::size_t>(k)] = poly_mul(Ppow[static_cast<std::size_t>(k - 1)], P);

  Poly r = f;
  r.resize(static_cast<std::size_t>(2 * delta + 1));
  std::vector<LPoly> N(static_cast<std::size_t>(delta + 1));
  for (int i = 0; i <= delta; ++i) {
    const LPoly c = r[static_cast<std::size_t>(i)];
    N[static_cast<std::size_t>(i)] = c;
    if (c.is_zero()) continue;
    const Poly& pp = Ppow[static_cast<std::size_t>(delta - i)];
    for (std::size_t j = 0; j < pp.size(); ++j) r[static_cast<std::size_t>(i) + j] -= c * pp[j];
  }
  trim(r);
  if (!r.empty()) throw GermError("residual above u^delta: the f-polynomial does not come from a germ");
  return N;
}

std::vector<LPoly> tilde_N(const GermClass& g) { return extract_tilde_N(f_polynomial(g), g.delta); }

void DynkinDiagram::add_edge(int a, int b) {
  adj[static_cast<std::size_t>(a)].push_back(b);
  adj[static_cast<std::size_t>(b)].push_back(a);
}

bool DynkinDiagram::is_filled(int v) const { return std::binary_search(filled.begin(), filled.end(), v); }

DynkinDiagram DynkinDiagram::path(int n) {
  DynkinDiagram d;
  d.n = n;
  d.adj.resize(static_cast<std::size_t>(n));
  for (int i = 0; i + 1 < n; ++i) d.add_edge(i, i + 1);
  return d;
}

DynkinDiagram DynkinDiagram::ade(InfiniteFamily f, int mu) {
  if (f == InfiniteFamily::A) return path(mu);
  if (f == InfiniteFamily::D && mu < 4) throw GermError("D_mu needs mu >= 4");
  if (f == InfiniteFamily::E && (mu < 6 || mu > 8)) throw GermError("E_mu needs mu in 6..8");
  // chain of mu - 1 vertices, the last vertex hangs off the second (D) or third (E)
  DynkinDiagram d = path(mu - 1);
  d.n = mu;
  d.adj.emplace_back();
  d.add_edge(f == InfiniteFamily::D ? 1 : 2, mu - 1);
  return d;
}

namespace {

constexpr int kMaxVertices = 24;

using Mask = std::uint32_t;

std::vector<Mask> independent_sets(const DynkinDiagram& d) {
  if (d.n > kMaxVertices) throw GermError("diagram too large");
  std::vector<Mask> nb(static_cast<std::size_t>(d.n), 0);
  for (int v = 0; v < d.n; ++v)
    for (int w : d.adj[static_cast<std::size_t>(v)]) nb[static_cast<std::size_t>(v)] |= Mask{1} << w;
  std::vector<Mask> out;
  // grow sets vertex by vertex, keeping only independent ones
  out.push_back(0);
  for (int v = 0; v < d.n; ++v) {
    std::size_t m = out.size();
    for (std::size_t i = 0; i < m; ++i)
      if ((out[i] & nb[static_cast<std::size_t>(v)]) == 0) out.push_back(out[i] | (Mask{1} << v));
  }
  return out;
}

Mask filled_mask(const std::vector<int>& filled) {
  Mask m = 0;
  for (int v : filled) m |= Mask{1} << v;
  return m;
}

std::vector<LPoly> count_by_colour(const std::vector<Mask>& sets, Mask filled) {
  std::vector<std::vector<long>> n;
  for (Mask s : sets) {
    auto h = static_cast<std::size_t>(std::popcount(s));
    auto b = static_cast<std::size_t>(std::popcount(s & filled));
    if (n.size() <= h) n.resize(h + 1);
    if (n[h].size() <= b) n[h].resize(b + 1, 0);
    ++n[h][b];
  }
  std::vector<LPoly> out;
  out.reserve(n.size());
  for (const auto& row : n) out.push_back(l_poly(row));
  return out;
}

bool same_table(std::vector<LPoly> a, std::vector<LPoly> b) {
  trim(a);
  trim(b);
  return a == b;
}

}  // namespace

std::vector<LPoly> independent_set_poly(const DynkinDiagram& d) {
  return count_by_colour(independent_sets(d), filled_mask(d.filled));
}

std::optional<DynkinDiagram> search_coloring(const DynkinDiagram& graph, int delta,
                                             const std::vector<LPoly>& target, int threads) {
  if (delta < 0 || delta > graph.n) return std::nullopt;
  const std::vector<Mask> sets = independent_sets(graph);

  // all delta-subsets in lexicographic order of their sorted vertex lists
  std::vector<std::vector<int>> candidates;
  std::vector<int> pick(static_cast<std::size_t>(delta));
  for (int i = 0; i < delta; ++i) pick[static_cast<std::size_t>(i)] = i;
  while (true) {
    candidates.push_back(pick);
    int i = delta - 1;
    while (i >= 0 && pick[static_cast<std::size_t>(i)] == graph.n - delta + i) --i;
    if (i < 0) break;
    ++pick[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < delta; ++j) pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
  }

  std::atomic<std::size_t> best{candidates.size()};
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < candidates.size(); i = next++) {
      if (i >= best.load()) break;
      if (!same_table(count_by_colour(sets, filled_mask(candidates[i])), target)) continue;
      std::size_t cur = best.load();
      while (i < cur && !best.compare_exchange_weak(cur, i)) {
      }
    }
  };
  int nt = std::max(1, threads);
  std::vector<std::thread> pool;
  for (int t = 1; t < nt; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  if (best.load() == candidates.size()) return std::nullopt;
  DynkinDiagram out = graph;
  out.filled = candidates[best.load()];
  return out;
}

namespace {

// Fillings found by search_coloring, checked in the tests against the series.
std::vector<int> stored_filling(InfiniteFamily f, int mu) {
  std::vector<int> v;
  switch (f) {
    case InfiniteFamily::A:
      // even positions for even mu, odd positions for odd mu (1-based)
      for (int i = mu % 2 == 0 ? 1 : 0; i < mu; i += 2) v.push_back(i);
      break;
    case InfiniteFamily::D:
      // the two short legs and every other vertex of the long arm
      v = {0, mu - 1};
      for (int i = mu - 2 - (mu % 2 == 0 ? 0 : 1); i >= 2; i -= 2) v.push_back(i);
      break;
    case InfiniteFamily::E:
      // odd chain positions and the branch leaf; for E7 also the far chain end
      for (int i = 1; i < mu - 1; i += 2) v.push_back(i);
      v.push_back(mu - 1);
      break;
  }
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

DynkinDiagram catalog_coloring(const GermClass& g) {
  g.validate();
  DynkinDiagram d = DynkinDiagram::ade(g.family, g.milnor());
  d.filled = stored_filling(g.family, g.milnor());
  return d;
}

LaurentY real_nodal_invariants(int elliptic, int hyperbolic, int conjugate_pairs) {
  if (elliptic < 0 || hyperbolic < 0 || conjugate_pairs < 0)
    throw std::invalid_argument("real_nodal_invariants: counts must be nonnegative");
  const LaurentY u = LaurentY::y_pow(1);
  const LaurentY one(1L);
  return (one + u).pow(static_cast<unsigned>(elliptic)) * (one - u).pow(static_cast<unsigned>(hyperbolic)) *
         (one + u * u).pow(static_cast<unsigned>(conjugate_pairs));
}

PositivityReport positivity_scan(const GermClass& g) {
  PositivityReport r;
  r.values = tilde_N(g);
  for (std::size_t h = 0; h < r.values.size() && r.pass; ++h) {
    for (const auto& [e, c] : r.values[h].terms()) {
      if (sgn(c) < 0 || e < 0 || e % 2 != 0 || c.get_den() != 1) {
        r.pass = false;
        r.first_h = static_cast<int>(h);
        r.first_power = e / 2;
        break;
      }
    }
  }
  return r;
}

}  // namespace refcurve
