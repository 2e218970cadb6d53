#include "test_util.hpp"

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "refcurve/cli.hpp"

using namespace refcurve;
using namespace refcurve::cli;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream o, e;
  int c = run_command(args, o, e);
  return {c, o.str(), e.str()};
}

struct TempDir {
  fs::path p;
  explicit TempDir(const std::string& tag) {
    p = fs::temp_directory_path() / ("refcurve_" + tag + "_" + std::to_string(::getpid()));
    fs::remove_all(p);
  }
  ~TempDir() { fs::remove_all(p); }
  std::string str() const { return p.string(); }
};

std::size_t line_count(const fs::path& f) {
  std::ifstream in(f);
  std::size_t n = 0;
  std::string l;
  while (std::getline(in, l)) ++n;
  return n;
}

}  // namespace

TEST_CASE("text rendering") {
  LaurentY a = LaurentY::y_pow(1, Rational(3)) + LaurentY(21L) + LaurentY::y_pow(-1, Rational(3));
  CHECK(laurent_text(a) == "3*y + 21 + 3*y^-1");
  CHECK(laurent_text(LaurentY()) == "0");
}

TEST_CASE("severi examples") {
  Run r = run({"severi", "--surface", "p2", "--bundle", "3", "--delta", "1", "--flavor", "normalized", "--no-cache"});
  CHECK(r.code == kOk);
  CHECK(r.out == "{\"key\":\"normalized|p2:3|1||3\",\"value\":[[-2,\"1\"],[0,\"10\"],[2,\"1\"]]}\n");
  r = run({"severi", "--surface", "p2", "--bundle", "1", "--delta", "1", "--no-cache"});
  CHECK(r.code == kOk);
  CHECK(Json::parse(r.out)["value"] == Json::array());
  r = run({"--format", "text", "--no-cache", "severi", "--bundle", "4", "--delta", "1", "--flavor", "normalized"});
  CHECK(r.out == "3*y + 21 + 3*y^-1\n");
  r = run({"severi", "--bundle", "4", "--delta", "1", "--y-eval", "1", "--no-cache"});
  CHECK(Json::parse(r.out)["value_at_y"] == "27");
  r = run({"severi", "--bundle", "2", "--delta", "0", "--alpha", "2", "--no-cache", "--flavor", "classical"});
  CHECK(r.code == kOk);
  CHECK(Json::parse(r.out)["key"] == "classical|p2:2|0|2|");
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == kUsage);
  CHECK(run({"severi", "--delta", "1"}).code == kUsage);
  CHECK(run({"severi", "--bundle", "3", "--delta", "1", "--flavor", "bogus"}).code == kUsage);
  CHECK(run({"severi", "--surface", "p3", "--bundle", "3", "--delta", "1"}).code == kUsage);
  CHECK(run({"severi", "--bundle", "3", "--delta", "1", "--alpha", "1", "--beta", "1"}).code == kUsage);
  CHECK(run({"severi", "--bundle", "3", "--delta", "-1"}).code == kUsage);
  CHECK(run({"--threads", "0", "qseries", "--kind", "dg2", "--order", "3"}).code == kUsage);
  CHECK(run({"qseries", "--kind", "dg2", "--order", "0"}).code == kUsage);
  CHECK(run({"--seed-u", "1,2,3", "localize", "--bundle", "1", "--nmax", "1"}).code == kUsage);
  CHECK(run({"--seed-u", "1,2,2,4", "localize", "--bundle", "1", "--nmax", "1"}).code == kUsage);
  CHECK(run({"verify", "--conjecture", "gconj", "--order", "3", "--route", "localization"}).code == kUsage);
  CHECK(run({"germ", "--type", "Q7"}).code == kUsage);
  CHECK(run({"germ", "--type", "E6", "--diagram", "--series"}).code == kUsage);
  CHECK(run({"--help"}).code == kOk);
}

TEST_CASE("qseries and germ output") {
  Run r = run({"qseries", "--kind", "delta", "--order", "2"});
  REQUIRE(r.code == kOk);
  SeriesQ d = series_from_json(Json::parse(r.out));
  CHECK(d.coeff(0).is_zero());
  CHECK(d.coeff(1) == LaurentY(1L));
  r = run({"germ", "--type", "E6", "--both"});
  REQUIRE(r.code == kOk);
  Json g = Json::parse(r.out);
  CHECK(g["milnor"] == 6);
  CHECK(g["tilde_N"].size() == 4);
  CHECK(g["diagram"]["filled"].size() == 3);
  CHECK(laurent_from_json(g["tilde_N"][1]) == LaurentY::y_pow(1, 3) + LaurentY(3L));
}

TEST_CASE("disk cache records") {
  TempDir t("cache");
  DiskCache c(t.p);
  CHECK(c.load("severi").records.empty());
  CacheRecord r{kSchemaVersion, "k1", to_json(LaurentY(5L)), {}};
  CHECK(c.store("severi", {r}) == 1);
  CHECK(c.store("severi", {r}) == 0);
  auto l = c.load("severi");
  REQUIRE(l.records.size() == 1);
  CHECK(laurent_from_json(l.records[0].value) == LaurentY(5L));
  CHECK(l.records[0].created.contains("writer"));

  // bumped schema: nothing loads, the old records are counted
  DiskCache bumped(t.p, "refcurve-cache-2");
  auto lb = bumped.load("severi");
  CHECK(lb.records.empty());
  CHECK(lb.schema_mismatch == 1);

  // garbage and torn lines are skipped and counted
  {
    std::ofstream o(c.file("severi"), std::ios::app);
    o << "not json\n{\"schema\":\"refcurve-cache-1\"}\n{\"schema\":\"refcurve-cache-1\",\"key\":\"k";
  }
  l = c.load("severi");
  CHECK(l.records.size() == 1);
  CHECK(l.corrupted == 3);
  CHECK(c.store("severi", {CacheRecord{kSchemaVersion, "k2", to_json(LaurentY(7L)), {}}}) == 1);
  l = c.load("severi");
  CHECK(l.records.size() == 2);
  CHECK(l.corrupted == 3);

  // concurrent writers on distinct keys
  std::vector<std::thread> ws;
  for (int i = 0; i < 4; ++i)
    ws.emplace_back([&, i] {
      DiskCache w(t.p);
      for (int j = 0; j < 5; ++j)
        w.store("severi", {CacheRecord{kSchemaVersion, "w" + std::to_string(i) + "_" + std::to_string(j),
                                       to_json(LaurentY(long(j))), {}}});
    });
  for (auto& w : ws) w.join();
  CHECK(c.load("severi").records.size() == 22);
  for (const auto& e : fs::directory_iterator(t.p)) CHECK(e.path().string().find(".tmp") == std::string::npos);
}

TEST_CASE("warm and cold cache agree") {
  TempDir t("warm");
  std::vector<std::string> sev = {"--cache-dir", t.str(), "severi", "--bundle", "5", "--delta", "4"};
  Run cold = run(sev);
  REQUIRE(cold.code == kOk);
  CHECK(fs::exists(t.p / "severi.jsonl"));
  std::size_t n = line_count(t.p / "severi.jsonl");
  CHECK(n > 1);
  Run warm = run(sev);
  CHECK(warm.out == cold.out);
  CHECK(line_count(t.p / "severi.jsonl") == n);
  Run none = run({"--no-cache", "severi", "--bundle", "5", "--delta", "4"});
  CHECK(none.out == cold.out);

  std::vector<std::string> loc = {"--cache-dir", t.str(), "localize", "--surface", "p1xp1", "--bundle", "1,2",
                                  "--nmax", "2", "--xorder", "3"};
  Run lc = run(loc);
  Run lw = run(loc);
  CHECK(lc.code == kOk);
  CHECK(lc.out == lw.out);
  CHECK(line_count(t.p / "localize.jsonl") == 1);

  // a corrupted line produces a warning and changes nothing else
  { std::ofstream(t.p / "severi.jsonl", std::ios::app) << "{oops\n"; }
  Run bad = run(sev);
  CHECK(bad.out == cold.out);
  CHECK(bad.err.find("1 corrupted line") != std::string::npos);
}

TEST_CASE("output does not depend on the worker count") {
  std::vector<std::string> base = {"--no-cache", "localize", "--surface", "p2", "--bundle", "2", "--nmax", "3",
                                   "--xorder", "3"};
  Run one = run(base);
  auto three = base;
  three.insert(three.begin(), {"--threads", "3"});
  CHECK(run(three).out == one.out);
  CHECK(run(base).out == one.out);
  auto other = base;
  other.insert(other.begin(), {"--seed-u", "3,11,7,19"});
  CHECK(run(other).out == one.out);
}

TEST_CASE("universal and verify commands") {
  Run u = run({"--no-cache", "universal", "--nmax", "2", "--xorder", "2", "--emit", "a"});
  REQUIRE(u.code == kOk);
  Json j = Json::parse(u.out);
  CHECK(j["series"].size() == 4);
  CHECK(series_from_json(j["series"][0]).coeff(0) == LaurentY(1L));
  Run v = run({"--no-cache", "verify", "--conjecture", "yconj", "--order", "5"});
  CHECK(v.code == kOk);
  Json rs = Json::parse(v.out);
  REQUIRE(rs.is_array());
  CHECK(!rs.empty());
  for (const auto& r : rs) CHECK(r["pass"] == true);
  v = run({"--no-cache", "--format", "text", "verify", "--conjecture", "k3", "--order", "2"});
  CHECK(v.code == kOk);
  CHECK(v.out.rfind("PASS ", 0) == 0);
}
