#include "refcurve/cli.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include "refcurve/chrec.hpp"
#include "refcurve/germs.hpp"
#include "refcurve/hilbloc.hpp"
#include "refcurve/irred.hpp"
#include "refcurve/qseries.hpp"
#include "refcurve/verify.hpp"

namespace fs = std::filesystem;

namespace refcurve::cli {

namespace {

constexpr const char* kCodeVersion = "1";

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Holds an exclusive advisory lock on a file for the lifetime of the object.
class FileLock {
 public:
  explicit FileLock(const fs::path& p) {
    fd_ = ::open(p.c_str(), O_CREAT | O_RDWR, 0644);
    if (fd_ < 0) throw std::runtime_error("cache: cannot open lock file " + p.string());
    if (::flock(fd_, LOCK_EX) != 0) {
      ::close(fd_);
      throw std::runtime_error("cache: cannot lock " + p.string());
    }
  }
  ~FileLock() {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;

 private:
  int fd_ = -1;
};

std::optional<CacheRecord> parse_record(const std::string& line) {
  Json j = Json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return std::nullopt;
  if (!j.contains("schema") || !j["schema"].is_string()) return std::nullopt;
  if (!j.contains("key") || !j["key"].is_string() || !j.contains("value")) return std::nullopt;
  CacheRecord r;
  r.schema = j["schema"].get<std::string>();
  r.key = j["key"].get<std::string>();
  r.value = j["value"];
  if (j.contains("created")) r.created = j["created"];
  return r;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return {};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json creation_stamp() {
  return Json{{"writer", "refcurve"}, {"code_version", kCodeVersion}, {"unix_time", static_cast<long>(std::time(nullptr))}};
}

}  // namespace

std::mutex DiskCache::mu_;

DiskCache::DiskCache(fs::path dir, std::string schema) : dir_(std::move(dir)), schema_(std::move(schema)) {}

fs::path DiskCache::file(const std::string& module) const { return dir_ / (module + ".jsonl"); }

CacheLoad DiskCache::load(const std::string& module) const {
  CacheLoad r;
  std::ifstream in(file(module));
  if (!in) return r;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto rec = parse_record(line);
    if (!rec) {
      ++r.corrupted;
    } else if (rec->schema != schema_) {
      ++r.schema_mismatch;
    } else {
      r.records.push_back(std::move(*rec));
    }
  }
  return r;
}

std::size_t DiskCache::store(const std::string& module, const std::vector<CacheRecord>& records) {
  std::lock_guard<std::mutex> guard(mu_);
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) throw std::runtime_error("cache: cannot create " + dir_.string() + ": " + ec.message());
  FileLock lock(dir_ / (module + ".lock"));

  const fs::path target = file(module);
  std::string existing = read_file(target);
  std::set<std::string> known;
  {
    std::istringstream ss(existing);
    std::string line;
    while (std::getline(ss, line)) {
      auto rec = parse_record(line);
      if (rec && rec->schema == schema_) known.insert(rec->key);
    }
  }
  std::string added;
  std::size_t n = 0;
  for (const auto& r : records) {
    if (!known.insert(r.key).second) continue;
    Json j{{"schema", schema_}, {"key", r.key}, {"value", r.value},
           {"created", r.created.is_null() ? creation_stamp() : r.created}};
    added += j.dump() + "\n";
    ++n;
  }
  if (n == 0) return 0;
  // a torn last line from an interrupted foreign writer stays isolated
  if (!existing.empty() && existing.back() != '\n') existing += '\n';

  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream o(tmp, std::ios::binary | std::ios::trunc);
    o << existing << added;
    o.flush();
    if (!o) throw std::runtime_error("cache: write failed for " + tmp.string());
  }
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("cache: rename failed for " + target.string() + ": " + ec.message());
  }
  return n;
}

std::string laurent_text(const LaurentY& a) { return a.to_text(); }

namespace {

struct RunConfig {
  int threads = 1;
  std::string format = "json";
  std::string cache_dir;
  bool no_cache = false;
  std::string seed_u;
};

struct Context {
  RunConfig cfg;
  std::ostream& out;
  std::ostream& err;

  std::optional<DiskCache> disk() const {
    if (cfg.no_cache) return std::nullopt;
    std::string dir = cfg.cache_dir;
    if (dir.empty())
      if (const char* e = std::getenv(kCacheEnv)) dir = e;
    if (dir.empty()) return std::nullopt;
    return DiskCache(dir);
  }
  bool text() const { return cfg.format == "text"; }

  void warn_load(const std::string& module, const CacheLoad& l) const {
    if (l.corrupted)
      err << "warning: " << module << " cache: " << l.corrupted << " corrupted line(s) skipped\n";
    if (l.schema_mismatch)
      err << "warning: " << module << " cache: " << l.schema_mismatch << " record(s) with another schema ignored\n";
  }
};

std::vector<long> parse_list(const std::string& s, const std::string& what) {
  std::vector<long> v;
  if (s.empty()) return v;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    long x = 0;
    try {
      x = std::stol(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != tok.size()) throw UsageError("bad integer list for " + what + ": " + s);
    v.push_back(x);
  }
  return v;
}

std::vector<int> parse_ints(const std::string& s, const std::string& what) {
  std::vector<int> v;
  for (long x : parse_list(s, what)) v.push_back(static_cast<int>(x));
  return v;
}

LocalizationOptions localization_options(const Context& ctx, int n_max, int x_ord, bool pure) {
  LocalizationOptions o;
  o.n_max = n_max;
  o.x_ord = x_ord;
  o.pure_genus = pure;
  o.threads = ctx.cfg.threads;
  if (!ctx.cfg.seed_u.empty()) {
    auto u = parse_list(ctx.cfg.seed_u, "--seed-u");
    if (u.size() != 4) throw UsageError("--seed-u takes four integers u1a,u1b,u2a,u2b");
    if ((u[0] == 0 && u[1] == 0) || (u[2] == 0 && u[3] == 0)) throw UsageError("--seed-u directions must be nonzero");
    if (u[0] * u[3] == u[1] * u[2]) throw UsageError("--seed-u directions must be independent");
    o.direction = {u[0], u[1]};
    o.check_direction = {u[2], u[3]};
  }
  return o;
}

// Recursion values through the on-disk severi cache.
template <class F>
auto with_severi_cache(const Context& ctx, F&& body) {
  MemoCache cache;
  auto disk = ctx.disk();
  std::set<std::string> loaded;
  if (disk) {
    CacheLoad l = disk->load("severi");
    ctx.warn_load("severi", l);
    for (const auto& r : l.records) {
      try {
        cache.insert_if_absent(r.key, laurent_from_json(r.value));
        loaded.insert(r.key);
      } catch (const std::exception&) {
        ctx.err << "warning: severi cache: unreadable value for " << r.key << "\n";
      }
    }
  }
  auto result = body(cache);
  if (disk) {
    std::vector<CacheRecord> fresh;
    for (const auto& [k, v] : cache.records())
      if (!loaded.count(k)) fresh.push_back(CacheRecord{kSchemaVersion, k, to_json(v), {}});
    disk->store("severi", fresh);
  }
  return result;
}

std::string localization_key(const ToricSurfaceModel& m, const LocalizationOptions& o) {
  std::ostringstream k;
  k << m.key() << "|n=" << o.n_max << "|x=" << (o.pure_genus ? 0 : o.x_ord) << "|pure=" << o.pure_genus
    << "|dir=" << o.direction[0] << "," << o.direction[1] << ";" << o.check_direction[0] << ","
    << o.check_direction[1] << "|code=" << kCodeVersion;
  return k.str();
}

SeriesXQ cached_d_series(const Context& ctx, const ToricSurfaceModel& m, const LocalizationOptions& o) {
  auto disk = ctx.disk();
  const std::string key = localization_key(m, o);
  if (disk) {
    CacheLoad l = disk->load("localize");
    ctx.warn_load("localize", l);
    for (const auto& r : l.records)
      if (r.key == key) {
        try {
          return seriesxq_from_json(r.value);
        } catch (const std::exception&) {
          ctx.err << "warning: localize cache: unreadable value for " << key << "\n";
        }
      }
  }
  SeriesXQ d = d_series(m, o);
  if (disk) disk->store("localize", {CacheRecord{kSchemaVersion, key, to_json(d), {}}});
  return d;
}

UniversalSeries cached_universal(const Context& ctx, int n_max, int x_ord) {
  LocalizationOptions o = localization_options(ctx, n_max, x_ord, false);
  auto models = basis_models();
  std::array<SeriesXQ, 4> d;
  std::array<CobordismClass, 4> c;
  for (std::size_t i = 0; i < 4; ++i) {
    d[i] = cached_d_series(ctx, models[i], o);
    c[i] = models[i].cobordism();
  }
  return universal_solve(d, c);
}

// ---- rendering

std::string series_text(const SeriesQ& s, const std::string& var = "q") {
  std::ostringstream o;
  bool any = false;
  for (int k = s.offset(); k <= s.trunc(); ++k) {
    const LaurentY c = s.coeff(k);
    if (c.is_zero()) continue;
    o << var << "^" << k << ": " << laurent_text(c) << "\n";
    any = true;
  }
  if (!any) o << "0\n";
  o << "O(" << var << "^" << s.trunc() + 1 << ")\n";
  return o.str();
}

std::string seriesxq_text(const SeriesXQ& s) {
  std::ostringstream o;
  bool any = false;
  for (int i = 0; i <= s.xord(); ++i)
    for (int j = 0; j <= s.qord(); ++j) {
      const LaurentY c = s.coeff(i, j);
      if (c.is_zero()) continue;
      o << "x^" << i << " q^" << j << ": " << laurent_text(c) << "\n";
      any = true;
    }
  if (!any) o << "0\n";
  return o.str();
}

std::string report_text(const verify::FitReport& r) {
  std::ostringstream o;
  o << (r.pass ? "PASS " : "FAIL ") << r.target;
  if (r.first_mismatch >= 0) {
    auto at = [&](const std::vector<LaurentY>& v) {
      auto i = static_cast<std::size_t>(r.first_mismatch);
      return i < v.size() ? laurent_text(v[i]) : std::string("?");
    };
    o << " [first difference at q^" << r.first_mismatch << ": fitted " << at(r.fitted) << ", reference "
      << at(r.reference) << "]";
  }
  if (!r.note.empty()) o << " (" << r.note << ")";
  return o.str();
}

void emit(const Context& ctx, const Json& doc, const std::string& text) {
  if (ctx.text())
    ctx.out << text;
  else
    ctx.out << doc.dump() << "\n";
}

SurfaceLB parse_severi_surface(const std::string& surface, const std::string& bundle) {
  auto b = parse_ints(bundle, "--bundle");
  if (surface == "p2") {
    if (b.size() != 1) throw UsageError("--bundle for p2 is a single degree d");
    if (b[0] < 0) throw UsageError("degree must be nonnegative");
    return SurfaceLB::p2(b[0]);
  }
  int e = 0;
  if (surface == "p1xp1") {
    e = 0;
  } else if (surface.rfind("ruled:", 0) == 0) {
    auto ev = parse_ints(surface.substr(6), "--surface");
    if (ev.size() != 1 || ev[0] < 0) throw UsageError("ruled surface index must be a nonnegative integer");
    e = ev[0];
  } else {
    throw UsageError("unknown surface " + surface + " (p2, p1xp1, ruled:e)");
  }
  if (b.size() != 2) throw UsageError("--bundle for a ruled surface is n,m (L = nF + mE)");
  return SurfaceLB::ruled(e, b[0], b[1]);
}

ToricSurfaceModel parse_toric(const std::string& surface, const std::string& bundle) {
  auto b = parse_ints(bundle, "--bundle");
  if (surface == "p2") {
    if (b.size() != 1) throw UsageError("--bundle for p2 is a single integer d");
    return ToricSurfaceModel::p2(b[0]);
  }
  if (surface == "p1xp1") {
    if (b.size() != 2) throw UsageError("--bundle for p1xp1 is a,b");
    return ToricSurfaceModel::p1xp1(b[0], b[1]);
  }
  throw UsageError("localization supports p2 and p1xp1, got " + surface);
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Context ctx{RunConfig{}, out, err};
  bool computing = false;
  std::function<int()> action;

  CLI::App app{"Refined curve counts: recursion, localization and checks", "refcurve"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--threads", ctx.cfg.threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--format", ctx.cfg.format, "output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--cache-dir", ctx.cfg.cache_dir, std::string("cache directory (default: $") + kCacheEnv + ")");
  app.add_flag("--no-cache", ctx.cfg.no_cache, "ignore the disk cache");
  app.add_option("--seed-u", ctx.cfg.seed_u, "localization directions u1a,u1b,u2a,u2b");

  // severi
  struct {
    std::string surface = "p2", bundle, alpha, beta, flavor = "refined", y_eval;
    int delta = 0;
  } sv;
  auto* severi_cmd = app.add_subcommand("severi", "relative Severi degree from the recursion");
  severi_cmd->add_option("--surface", sv.surface, "p2, p1xp1 or ruled:e");
  severi_cmd->add_option("--bundle", sv.bundle, "d on p2, n,m for nF + mE")->required();
  severi_cmd->add_option("--delta", sv.delta, "number of nodes")->required()->check(CLI::NonNegativeNumber);
  severi_cmd->add_option("--alpha", sv.alpha, "fixed tangency sequence a1,a2,..");
  severi_cmd->add_option("--beta", sv.beta, "free tangency sequence b1,b2,..");
  severi_cmd->add_option("--flavor", sv.flavor, "refined, classical, normalized, welschinger, yzero");
  severi_cmd->add_option("--y-eval", sv.y_eval, "evaluate at y = p/q");
  severi_cmd->callback([&] {
    action = [&]() -> int {
      SurfaceLB s = parse_severi_surface(sv.surface, sv.bundle);
      auto f = parse_flavor(sv.flavor);
      if (!f) throw UsageError("unknown flavor " + sv.flavor);
      if (!s.effective()) throw UsageError("line bundle " + s.to_string() + " is not effective");
      SeveriKey key;
      if (sv.alpha.empty() && sv.beta.empty()) {
        key = absolute_key(s, sv.delta, *f);
      } else {
        key.surface = s;
        key.delta = sv.delta;
        key.flavor = *f;
        key.alpha = TangencySeq(parse_ints(sv.alpha, "--alpha"));
        if (sv.beta.empty()) {
          int rest = static_cast<int>(bundle_numerics(s).EL) - key.alpha.weighted();
          if (rest < 0) throw UsageError("I alpha exceeds E.L");
          key.beta = TangencySeq::single(rest);
        } else {
          key.beta = TangencySeq(parse_ints(sv.beta, "--beta"));
        }
      }
      key.validate();
      std::optional<Rational> y0;
      if (!sv.y_eval.empty()) y0 = parse_rational(sv.y_eval);
      computing = true;
      LaurentY v = with_severi_cache(ctx, [&](MemoCache& c) { return severi(key, c); });
      Json doc{{"key", key.canonical()}, {"value", to_json(v)}};
      std::string text = laurent_text(v) + "\n";
      if (y0) {
        Rational at = v.specialize(*y0);
        doc["y"] = rational_to_string(*y0);
        doc["value_at_y"] = rational_to_string(at);
        text = rational_to_string(at) + "\n";
      }
      emit(ctx, doc, text);
      return kOk;
    };
  });

  // qseries
  struct {
    std::string kind;
    int order = 0;
  } qs;
  auto* q_cmd = app.add_subcommand("qseries", "named q-series");
  q_cmd->add_option("--kind", qs.kind, "dg2, delta, g2bar, g2, delta-classical")
      ->required()
      ->check(CLI::IsMember({"dg2", "delta", "g2bar", "g2", "delta-classical"}));
  q_cmd->add_option("--order", qs.order, "truncation order")->required()->check(CLI::PositiveNumber);
  q_cmd->callback([&] {
    action = [&]() -> int {
      computing = true;
      SeriesQ s = qs.kind == "dg2"     ? dg2_tilde(qs.order)
                  : qs.kind == "delta" ? delta_tilde(qs.order)
                  : qs.kind == "g2bar" ? g2bar(qs.order)
                  : qs.kind == "g2"    ? g2(qs.order)
                                       : refcurve::delta(qs.order);
      emit(ctx, to_json(s), series_text(s));
      return kOk;
    };
  });

  // irreducible
  struct {
    std::string surface = "p2", bound, emit_path;
    int max_degree = 0, max_delta = 0;
    bool include_rulings = false;
  } ir;
  auto* irr_cmd = app.add_subcommand("irreducible", "irreducible refined Severi degrees by the log transform");
  irr_cmd->add_option("--surface", ir.surface, "p2, p1xp1 or ruled:e");
  irr_cmd->add_option("--max-degree", ir.max_degree, "largest degree on p2")->check(CLI::NonNegativeNumber);
  irr_cmd->add_option("--bound", ir.bound, "largest class n,m on a ruled surface");
  irr_cmd->add_option("--max-delta", ir.max_delta, "largest node count")->required()->check(CLI::NonNegativeNumber);
  irr_cmd->add_option("--emit", ir.emit_path, "write the table to this file");
  irr_cmd->add_flag("--include-rulings", ir.include_rulings, "on p1xp1, keep both rulings in the sum");
  irr_cmd->callback([&] {
    action = [&]() -> int {
      SurfaceFamily fam;
      DegreeTable::Key bound;
      if (ir.surface == "p2") {
        if (ir.max_degree < 1) throw UsageError("--max-degree must be positive");
        bound = {ir.max_degree};
      } else {
        if (ir.bound.empty()) throw UsageError("--bound n,m is required on ruled surfaces");
        SurfaceLB s = parse_severi_surface(ir.surface, ir.bound);
        fam = SurfaceFamily::ruled(s.e, !ir.include_rulings);
        bound = {s.n, s.m};
      }
      computing = true;
      DegreeTable irr =
          with_severi_cache(ctx, [&](MemoCache& c) { return log_transform_irreducible(full_table(fam, bound, ir.max_delta, c)); });
      Json doc = Json::array();
      std::ostringstream text;
      for (const auto& [kd, v] : irr.values) {
        doc.push_back(Json{{"class", kd.first}, {"delta", kd.second}, {"value", to_json(v)}});
        text << "class (";
        for (std::size_t i = 0; i < kd.first.size(); ++i) text << (i ? "," : "") << kd.first[i];
        text << ") delta " << kd.second << ": " << laurent_text(v) << "\n";
      }
      if (!ir.emit_path.empty()) {
        fs::path p(ir.emit_path);
        fs::path tmp = p;
        tmp += ".tmp";
        {
          std::ofstream o(tmp);
          o << doc.dump(1) << "\n";
          if (!o) throw std::runtime_error("cannot write " + tmp.string());
        }
        fs::rename(tmp, p);
        emit(ctx, Json{{"written", p.string()}, {"entries", doc.size()}},
             "wrote " + std::to_string(doc.size()) + " entries to " + p.string() + "\n");
      } else {
        emit(ctx, doc, text.str());
      }
      return kOk;
    };
  });

  // germ
  struct {
    std::string type;
    bool diagram = false, series = false, both = false;
  } gm;
  auto* germ_cmd = app.add_subcommand("germ", "invariants of one ADE singularity");
  germ_cmd->add_option("--type", gm.type, "A<mu>, D<mu>, E6, E7, E8 or A9-as-printed")->required();
  auto* g_d = germ_cmd->add_flag("--diagram", gm.diagram, "coloring certificate only");
  auto* g_s = germ_cmd->add_flag("--series", gm.series, "N~ table only (default)");
  auto* g_b = germ_cmd->add_flag("--both", gm.both, "table and certificate");
  g_d->excludes(g_s)->excludes(g_b);
  g_s->excludes(g_b);
  germ_cmd->callback([&] {
    action = [&]() -> int {
      GermClass g = GermClass::from_label(gm.type);
      g.validate();
      bool want_series = gm.series || gm.both || !gm.diagram;
      bool want_diagram = gm.diagram || gm.both;
      computing = true;
      Json doc{{"type", g.label}, {"family", std::string(1, family_letter(g.family))}, {"branches", g.branches},
               {"delta", g.delta}, {"milnor", g.milnor()}};
      std::ostringstream text;
      text << g.label << ": delta " << g.delta << ", branches " << g.branches << ", mu " << g.milnor() << "\n";
      if (want_series) {
        Json t = Json::array();
        auto nt = tilde_N(g);
        for (std::size_t i = 0; i < nt.size(); ++i) {
          t.push_back(to_json(nt[i]));
          text << "N~^" << i << " = " << laurent_text(nt[i]) << "\n";
        }
        doc["tilde_N"] = t;
      }
      if (want_diagram) {
        DynkinDiagram d = catalog_coloring(g);
        Json edges = Json::array();
        for (int a = 0; a < d.n; ++a)
          for (int b : d.adj[static_cast<std::size_t>(a)])
            if (a < b) edges.push_back({a, b});
        Json isp = Json::array();
        for (const auto& p : independent_set_poly(d)) isp.push_back(to_json(p));
        doc["diagram"] = Json{{"vertices", d.n}, {"edges", edges}, {"filled", d.filled}, {"independent_sets", isp}};
        text << "filled vertices:";
        for (int v : d.filled) text << " " << v;
        text << "\n";
      }
      emit(ctx, doc, text.str());
      return kOk;
    };
  });

  // localize
  struct {
    std::string surface = "p2", bundle;
    int n_max = 0, x_ord = 1;
    bool pure = false;
  } lc;
  auto* loc_cmd = app.add_subcommand("localize", "D^{S,L}(x, q) by torus localization");
  loc_cmd->add_option("--surface", lc.surface, "p2 or p1xp1");
  loc_cmd->add_option("--bundle", lc.bundle, "d on p2, a,b on p1xp1")->required();
  loc_cmd->add_option("--nmax", lc.n_max, "largest number of points")->required()->check(CLI::PositiveNumber);
  loc_cmd->add_option("--xorder", lc.x_ord, "x truncation")->check(CLI::PositiveNumber);
  loc_cmd->add_flag("--pure-genus", lc.pure, "chi_{-y} of the Hilbert schemes only");
  loc_cmd->callback([&] {
    action = [&]() -> int {
      ToricSurfaceModel m = parse_toric(lc.surface, lc.bundle);
      LocalizationOptions o = localization_options(ctx, lc.n_max, lc.x_ord, lc.pure);
      computing = true;
      SeriesXQ d = cached_d_series(ctx, m, o);
      emit(ctx, to_json(d), seriesxq_text(d));
      return kOk;
    };
  });

  // universal
  struct {
    int n_max = 0, x_ord = 0;
    std::string what = "dtilde";
  } un;
  auto* uni_cmd = app.add_subcommand("universal", "the universal series from the four basis pairs");
  uni_cmd->add_option("--nmax", un.n_max, "q truncation")->required()->check(CLI::PositiveNumber);
  uni_cmd->add_option("--xorder", un.x_ord, "x truncation")->required()->check(CLI::PositiveNumber);
  uni_cmd->add_option("--emit", un.what, "d, dtilde, a, f or c")->check(CLI::IsMember({"d", "dtilde", "a", "f", "c"}));
  uni_cmd->callback([&] {
    action = [&]() -> int {
      (void)localization_options(ctx, un.n_max, un.x_ord, false);
      computing = true;
      UniversalSeries u = cached_universal(ctx, un.n_max, un.x_ord);
      Json series = Json::array();
      std::ostringstream text;
      const char* name = un.what == "d" ? "D" : un.what == "dtilde" ? "D~" : un.what == "a" ? "A" : un.what == "f" ? "F" : "C";
      if (un.what == "d" || un.what == "dtilde") {
        for (std::size_t i = 0; i < 4; ++i) {
          SeriesXQ s = exp(un.what == "d" ? u.log_d[i] : u.log_d_tilde[i]);
          series.push_back(to_json(s));
          text << name << i + 1 << ":\n" << seriesxq_text(s);
        }
      } else {
        int order = std::min(un.n_max, un.x_ord);
        auto A = verify::a_series_from_localization(u, order);
        std::array<SeriesQ, 4> out4 = A;
        if (un.what != "a") out4 = verify::f_series(A, true);
        if (un.what == "c") out4 = verify::c_series(out4, order);
        for (std::size_t i = 0; i < 4; ++i) {
          series.push_back(to_json(out4[i]));
          text << name << i + 1 << ":\n" << series_text(out4[i], un.what == "c" ? "q" : "s");
        }
      }
      emit(ctx, Json{{"emit", un.what}, {"nmax", un.n_max}, {"xorder", un.x_ord}, {"series", series}}, text.str());
      return kOk;
    };
  });

  // verify
  struct {
    std::string conjecture, route;
    int order = 0, n_max = 0, x_ord = 0;
  } vf;
  auto* ver_cmd = app.add_subcommand("verify", "check a generating-function statement");
  ver_cmd->add_option("--conjecture", vf.conjecture, "statement to check")
      ->required()
      ->check(CLI::IsMember({"gconj", "gsconj", "dlconj", "chi0", "chi01", "ciconj", "yconj", "refsev", "k3", "welam"}));
  ver_cmd->add_option("--order", vf.order, "truncation order T")->required()->check(CLI::PositiveNumber);
  ver_cmd->add_option("--route", vf.route, "recursion or localization")
      ->check(CLI::IsMember({"recursion", "localization"}));
  ver_cmd->add_option("--nmax", vf.n_max, "q order of the universal series (default T)")->check(CLI::PositiveNumber);
  ver_cmd->add_option("--xorder", vf.x_ord, "x order of the universal series (default T)")->check(CLI::PositiveNumber);
  ver_cmd->callback([&] {
    action = [&]() -> int {
      static const std::set<std::string> recursion_only = {"gconj", "gsconj", "yconj"};
      static const std::set<std::string> localization_only = {"dlconj", "chi01", "refsev", "k3", "welam"};
      const std::string& c = vf.conjecture;
      std::string route = vf.route;
      if (route.empty()) route = localization_only.count(c) ? "localization" : "recursion";
      if (route == "localization" && recursion_only.count(c))
        throw UsageError(c + " is checked on recursion data only");
      if (route == "recursion" && localization_only.count(c)) throw UsageError(c + " needs the localization route");
      int nmax = vf.n_max ? vf.n_max : vf.order;
      int xord = vf.x_ord ? vf.x_ord : vf.order;
      (void)localization_options(ctx, nmax, xord, false);
      const int T = vf.order;
      computing = true;
      auto reports = with_severi_cache(ctx, [&](MemoCache& cache) {
        std::optional<UniversalSeries> u;
        auto uni = [&]() -> const UniversalSeries& {
          if (!u) u = cached_universal(ctx, nmax, xord);
          return *u;
        };
        if (c == "gconj") return verify::gconj_checks(T, cache);
        if (c == "gsconj") return verify::gsconj_checks(T, cache);
        if (c == "yconj") return verify::yconj_checks(T, cache);
        if (c == "chi0") return verify::chi0_checks(4, 3, T, cache);
        if (c == "ciconj")
          return route == "recursion" ? verify::ciconj_checks(T, verify::Route::Recursion, cache)
                                      : verify::ciconj_checks(T, verify::Route::Localization, cache, &uni());
        if (c == "dlconj") return verify::dlconj_checks(uni());
        if (c == "chi01") return verify::chi01_checks(uni(), T);
        if (c == "refsev") return verify::refsev_checks(uni(), cache);
        if (c == "welam") return verify::welam_checks(uni(), cache);
        return verify::k3_abelian_checks(uni(), T);
      });
      Json doc = Json::array();
      std::string text;
      for (const auto& r : reports) {
        doc.push_back(verify::to_json(r));
        text += report_text(r) + "\n";
      }
      emit(ctx, doc, text);
      return verify::all_pass(reports) ? kOk : kMismatch;
    };
  });

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }
  if (!action) {
    err << "usage error: no command\n";
    return kUsage;
  }
  try {
    return action();
  } catch (const LocalizationError& e) {
    err << "internal consistency failure: " << e.what() << "\n";
    return kInternal;
  } catch (const std::invalid_argument& e) {
    if (computing) {
      err << "internal error: " << e.what() << "\n";
      return kInternal;
    }
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << (computing ? "internal error: " : "usage error: ") << e.what() << "\n";
    return computing ? kInternal : kUsage;
  }
}

}  // namespace refcurve::cli
