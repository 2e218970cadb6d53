// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "refcurve/chrec.hpp"
#include "refcurve/cli.hpp"
#include "refcurve/germs.hpp"
#include "refcurve/hilbloc.hpp"
#include "refcurve/irred.hpp"
#include "refcurve/qseries.hpp"
#include "refcurve/reference_data.hpp"
#include "refcurve/verify.hpp"

using namespace refcurve;
namespace fs = std::filesystem;

namespace {

// Collects failures of one criterion; the first few are reported.
struct Crit {
  int failures = 0;
  int checks = 0;
  std::vector<std::string> where;
  std::vector<std::string> notes;

  void check(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    ++failures;
    if (where.size() < 3) where.push_back(what);
  }
  void reports(const std::vector<verify::FitReport>& rs, bool keep_notes = false) {
    for (const auto& r : rs) {
      std::string w = r.target;
      if (r.first_mismatch >= 0) w += " at q^" + std::to_string(r.first_mismatch);
      check(r.pass, w);
      if (keep_notes && r.pass && !r.note.empty()) notes.push_back(r.target + ": " + r.note);
    }
  }
};

int g_failed = 0;

void run(int id, const std::string& title, const std::function<void(Crit&)>& body) {
  Crit c;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    ++c.failures;
    c.where.push_back(std::string("exception: ") + e.what());
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool ok = c.failures == 0 && c.checks > 0;
  if (!ok) ++g_failed;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f s", secs);
  std::cout << (ok ? "PASS" : "FAIL") << " [" << id << "] " << title << " (" << c.checks << " checks, " << buf << ")";
  if (!ok) {
    std::cout << ":";
    for (const auto& w : c.where) std::cout << " {" << w << "}";
    if (c.checks == 0) std::cout << " no checks ran";
  }
  for (const auto& n : c.notes) std::cout << "\n    note: " << n;
  std::cout << std::endl;
}

LaurentY Y(int k, long c = 1) { return LaurentY::y_pow(k, Rational(c)); }

std::vector<LPoly> germ_table(const reference::GermTable& t) {
  std::vector<LPoly> out;
  for (const auto& [h, c] : t) {
    if (static_cast<int>(out.size()) <= h) out.resize(static_cast<std::size_t>(h) + 1);
    out[static_cast<std::size_t>(h)] = l_poly(c);
  }
  return out;
}

// prod_k prod_p (1 - y^{p+k-1} q^k)^{-h^{p,p}}
SeriesQ hodge_oracle(const std::vector<int>& hpp, int T) {
  SeriesQ r = SeriesQ::constant(LaurentY(1L), T);
  for (int k = 1; k <= T; ++k)
    for (std::size_t p = 0; p < hpp.size(); ++p) {
      SeriesQ f = SeriesQ::constant(LaurentY(1L), T);
      f.at(k) = -Y(static_cast<int>(p) + k - 1);
      for (int i = 0; i < hpp[p]; ++i) r = r * inverse(f);
    }
  return r;
}

SeriesQ random_series(std::mt19937& rng, int T) {
  std::uniform_int_distribution<int> c(-4, 4), e(-3, 3);
  SeriesQ s(T, 0);
  for (int k = 0; k <= T; ++k)
    for (int t = 0; t < 2; ++t) s.at(k) += LaurentY::monomial(e(rng), Rational(c(rng), 1 + (k % 3)));
  return s;
}

std::string run_cli(const std::vector<std::string>& args, int* code = nullptr) {
  std::ostringstream o, e;
  int c = cli::run_command(args, o, e);
  if (code) *code = c;
  return o.str();
}

}  // namespace

int main() {
  MemoCache cache;  // shared by the recursion criteria

  run(1, "irreducible tables after the log transform", [&](Crit& c) {
    DegreeTable p2 = log_transform_irreducible(full_table(SurfaceFamily::p2(), {5}, 20, cache));
    for (const auto& [d, t] : reference::irreducible_p2()) {
      auto got = irreducible_polynomial(p2, {d});
      c.check(got.size() == t.size(), "P2 d=" + std::to_string(d) + " length");
      for (std::size_t i = 0; i < std::min(got.size(), t.size()); ++i)
        c.check(got[i] == reference::poly_y(t[i]), "P2 d=" + std::to_string(d) + " t^" + std::to_string(i));
    }
    DegreeTable q = log_transform_irreducible(full_table(SurfaceFamily::ruled(0, true), {3, 4}, 20, cache));
    for (const auto& [nm, t] : reference::irreducible_p1p1()) {
      for (const auto& key : {DegreeTable::Key{nm.first, nm.second}, DegreeTable::Key{nm.second, nm.first}}) {
        if (key[0] > 3) continue;
        auto got = irreducible_polynomial(q, key);
        std::string tag = "P1xP1 (" + std::to_string(key[0]) + "," + std::to_string(key[1]) + ")";
        c.check(got.size() >= t.size(), tag + " length");
        for (std::size_t i = 0; i < std::min(got.size(), t.size()); ++i)
          c.check(got[i] == reference::poly_y(t[i]), tag + " t^" + std::to_string(i));
      }
    }
  });

  run(2, "specializations y=1 and y=-1 on every visited key", [&](Crit& c) {
    for (int d = 1; d <= 7; ++d)
      for (int delta = 0; delta <= d * (d + 3) / 2; ++delta)
        for (Flavor f : {Flavor::Refined, Flavor::Welschinger}) severi_degree(SurfaceLB::p2(d), delta, f, cache);
    for (int e : {0, 1})
      for (int n = 0; n <= 5; ++n)
        for (int m = 0; m <= 5; ++m) {
          SurfaceLB s = SurfaceLB::ruled(e, n, m);
          if ((n == 0 && m == 0) || !s.effective() || bundle_numerics(s).EL < 0) continue;
          long dim = bundle_numerics(s).dimL;
          for (int delta = 0; delta <= dim; ++delta)
            for (Flavor f : {Flavor::Refined, Flavor::Welschinger}) severi_degree(s, delta, f, cache);
        }
    for (const auto& [ck, v] : cache.records()) {
      SeveriKey k = SeveriKey::parse(ck);
      if (k.flavor == Flavor::Refined) {
        k.flavor = Flavor::Classical;
        LaurentY cl = severi(k, cache);
        c.check(LaurentY(v.specialize(1)) == cl, "y=1 " + ck);
      } else if (k.flavor == Flavor::Welschinger) {
        k.flavor = Flavor::Normalized;
        c.check(LaurentY(severi(k, cache).specialize(-1)) == v, "y=-1 " + ck);
      }
    }
  });

  run(3, "y=0 closed form on 500 sampled keys, d <= 8", [&](Crit& c) {
    std::vector<std::tuple<int, TangencySeq, int>> keys;
    for (int d = 1; d <= 8; ++d) {
      SurfaceLB s = SurfaceLB::p2(d);
      for (const auto& [a, b] : sequence_pairs(d, false)) {
        if (!a.is_zero()) continue;
        for (int delta = 0; gamma(s, b, delta) >= 0; ++delta) keys.emplace_back(d, b, delta);
      }
    }
    std::mt19937 rng(20260);
    std::shuffle(keys.begin(), keys.end(), rng);
    keys.resize(std::min<std::size_t>(500, keys.size()));
    c.check(keys.size() == 500, "fewer than 500 eligible keys");
    for (const auto& [d, b, delta] : keys) {
      SeveriKey k;
      k.surface = SurfaceLB::p2(d);
      k.delta = delta;
      k.beta = b;
      k.flavor = Flavor::YZero;
      Rational expect = y_zero_closed_form(k.surface, b, delta);
      std::string tag = k.canonical();
      c.check(severi(k, cache) == LaurentY(expect), tag);
      if (d <= 6) {
        k.flavor = Flavor::Refined;
        c.check(severi(k, cache).coeff(0) == expect, "refined y^0 " + tag);
      }
    }
  });

  run(4, "symmetry of normalized values, positivity of refined values", [&](Crit& c) {
    for (const auto& [ck, v] : cache.records()) {
      SeveriKey k = SeveriKey::parse(ck);
      if (k.flavor == Flavor::Refined) {
        c.check(v.has_integer_coeffs() && v.is_nonnegative(), ck);
        k.flavor = Flavor::Normalized;
        c.check(severi(k, cache).is_symmetric(), "normalized " + ck);
      } else if (k.flavor == Flavor::Normalized) {
        c.check(v.is_symmetric(), ck);
      }
    }
    DegreeTable p2 = log_transform_irreducible(full_table(SurfaceFamily::p2(), {5}, 20, cache));
    for (const auto& [kd, v] : p2.values) c.check(v.is_symmetric(), "irreducible " + std::to_string(kd.first[0]));
  });

  run(5, "B-series fits against the tabulated B1, B2 and their y=-1 forms", [&](Crit& c) {
    c.reports(verify::gconj_checks(11, cache), true);
    c.reports(verify::gsconj_checks(15, cache), true);
  });

  run(6, "ADE germs: tables, colorings, first invariant", [&](Crit& c) {
    c.check(tilde_N(GermClass::from_label("E6")) == germ_table(reference::e6_table()), "E6 table");
    c.check(tilde_N(GermClass::from_label("E8")) == germ_table(reference::e8_table()), "E8 table");
    GermClass printed = GermClass::from_label("A9-as-printed");
    c.check(printed.milnor() == 8 && tilde_N(printed) == germ_table(reference::a9_printed_table()), "A9 as printed");
    c.check(tilde_N(GermClass::from_label("A9")) != germ_table(reference::a9_printed_table()), "genuine A9 differs");
    c.notes.push_back("the table labelled A9 is reproduced by the mu = 8 germ A8");
    std::vector<std::string> small;
    for (int mu = 1; mu <= 8; ++mu) small.push_back("A" + std::to_string(mu));
    for (int mu = 4; mu <= 8; ++mu) small.push_back("D" + std::to_string(mu));
    for (const char* e : {"E6", "E7", "E8"}) small.push_back(e);
    for (const auto& lab : small) {
      GermClass g = GermClass::from_label(lab);
      auto target = tilde_N(g);
      auto found = search_coloring(DynkinDiagram::ade(g.family, g.milnor()), g.delta, target, 2);
      c.check(found && independent_set_poly(*found) == target, "coloring " + lab);
    }
    std::vector<std::string> catalog = small;
    for (int mu = 9; mu <= 12; ++mu) catalog.push_back("A" + std::to_string(mu));
    for (int mu = 9; mu <= 12; ++mu) catalog.push_back("D" + std::to_string(mu));
    for (const auto& lab : catalog) {
      GermClass g = GermClass::from_label(lab);
      LPoly expect = l_pow(1) + LaurentY(static_cast<long>(2 - g.branches)) +
                     (LaurentY(1L) + l_pow(1)) * Rational(g.delta - 1);
      c.check(tilde_N(g)[1] == expect, "first invariant " + lab);
    }
  });

  LocalizationOptions big;
  big.n_max = 5;
  big.x_ord = 6;
  std::optional<UniversalSeries> u56;

  run(7, "localization: Hodge oracle, direction independence, polynomial tails", [&](Crit& c) {
    LocalizationOptions p = big;
    p.pure_genus = true;
    SeriesQ hp2 = hodge_oracle({1, 1, 1}, 5), hq = hodge_oracle({1, 2, 1}, 5);
    SeriesXQ a = d_series(ToricSurfaceModel::p2(0), p), b = d_series(ToricSurfaceModel::p1xp1(0, 0), p);
    for (int n = 0; n <= 5; ++n) {
      c.check(a.coeff(0, n) == hp2.coeff(n), "P2 n=" + std::to_string(n));
      c.check(b.coeff(0, n) == hq.coeff(n), "P1xP1 n=" + std::to_string(n));
    }
    // (2,3) meets a zero weight at n = 5, so the explicit pair comparison runs to n = 4
    LocalizationOptions o = big;
    o.n_max = 4;
    o.x_ord = 4;
    o.check_independence = false;
    LocalizationOptions first = o, second = o;
    first.direction = {2, 3};
    first.check_direction = {2, 3};
    second.direction = {5, 7};
    second.check_direction = {5, 7};
    for (const auto& m : {ToricSurfaceModel::p2(1), ToricSurfaceModel::p1xp1(1, -1)})
      c.check(d_series(m, first) == d_series(m, second), "directions " + m.key());
    // the full run checks every direction pair and every y-tail internally
    u56 = universal_from_localization(big);
    c.check(true, "universal solve at n <= 5, x^6");
  });

  run(8, "degree bound mod (x^5, q^5) for the basis pairs and K3", [&](Crit& c) {
    if (!u56) throw std::runtime_error("universal series unavailable");
    c.reports(verify::dlconj_checks(*u56));
  });

  run(9, "K3 classes against q/Delta~, g <= 3", [&](Crit& c) {
    if (!u56) throw std::runtime_error("universal series unavailable");
    c.reports(verify::k3_abelian_checks(*u56, 3));
    auto k3 = verify::localization_sample(*u56, CobordismClass{0, 0, 0, 24}, "K3 g=1", 1);
    c.check(k3.nbar[1] == Y(1, 2) + LaurentY(20L) + Y(-1, 2), "N-bar^1 = 2y + 20 + 2/y");
    c.check(k3.nbar[1].specialize(1) == 24, "24 at y = 1");
  });

  run(10, "recursion against localization for (3,1), (4,1), (4,2)", [&](Crit& c) {
    if (!u56) throw std::runtime_error("universal series unavailable");
    for (auto [d, delta] : {std::pair{3, 1}, std::pair{4, 1}, std::pair{4, 2}}) {
      SeriesQ diag = diagonal_of(
          to_Q_coordinates(evaluate_cobordism(*u56, ToricSurfaceModel::p2(d).cobordism(), true)), 5);
      c.check(diag.coeff(delta) == severi_degree(SurfaceLB::p2(d), delta, Flavor::Refined, cache),
              "d=" + std::to_string(d) + " delta=" + std::to_string(delta));
    }
  });

  run(11, "y=0 identities for P2, d <= 4, delta <= 3, n <= 5", [&](Crit& c) {
    c.reports(verify::chi0_checks(4, 3, 5, cache));
  });

  run(12, "C-series from the recursion route through q^10", [&](Crit& c) {
    c.reports(verify::ciconj_checks(10, verify::Route::Recursion, cache));
  });

  run(13, "determinism, cache equality, round trips at order 20", [&](Crit& c) {
    std::vector<std::string> loc = {"--no-cache", "localize", "--surface", "p1xp1", "--bundle", "2,1",
                                    "--nmax", "4", "--xorder", "4"};
    std::string one = run_cli(loc);
    auto four = loc;
    four.insert(four.begin(), {"--threads", "4"});
    c.check(!one.empty() && run_cli(four) == one, "thread count changes localize output");
    std::vector<std::string> vf = {"--no-cache", "verify", "--conjecture", "yconj", "--order", "6"};
    auto vf3 = vf;
    vf3.insert(vf3.begin(), {"--threads", "3"});
    c.check(run_cli(vf) == run_cli(vf3), "thread count changes verify output");

    fs::path dir = fs::temp_directory_path() / ("refcurve_accept_" + std::to_string(::getpid()));
    fs::remove_all(dir);
    for (std::vector<std::string> cmd :
         {std::vector<std::string>{"severi", "--bundle", "6", "--delta", "5", "--flavor", "normalized"},
          std::vector<std::string>{"localize", "--surface", "p2", "--bundle", "3", "--nmax", "3", "--xorder", "3"}}) {
      auto cached = cmd;
      cached.insert(cached.begin(), {"--cache-dir", dir.string()});
      auto bare = cmd;
      bare.insert(bare.begin(), "--no-cache");
      std::string cold = run_cli(cached), warm = run_cli(cached), none = run_cli(bare);
      c.check(cold == warm && cold == none && !cold.empty(), "cache changes " + cmd[0] + " output");
    }
    fs::remove_all(dir);

    const int T = 20;
    std::mt19937 rng(4242);
    for (int trial = 0; trial < 3; ++trial) {
      SeriesQ f = random_series(rng, T);
      f.at(0) = LaurentY(1L);
      c.check(exp(log(f)).equal_through(f, T), "exp(log f)");
      SeriesQ r = random_series(rng, T);
      r.at(0) = LaurentY();
      r.at(1) = LaurentY::monomial(2 * trial, Rational(trial + 2));
      c.check(reversion(reversion(r)).equal_through(r, T), "reversion twice");
      SeriesQ g = random_series(rng, T + 1);
      g.at(0) = LaurentY();
      g.at(1) = LaurentY(1L);
      c.check(resubstitute(expand_in_basis(f, g, T), g).equal_through(f, T), "expand and resubstitute");
    }
  });

  std::cout << (g_failed == 0 ? "all criteria pass" : std::to_string(g_failed) + " criteria fail") << std::endl;
  return g_failed == 0 ? 0 : 1;
}
