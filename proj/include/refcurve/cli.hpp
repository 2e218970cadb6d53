// Command-line front end: argument handling, JSON-lines disk cache and
// report rendering. The executable in tools/ only forwards to run_command.
#pragma once

#include <filesystem>
#include <iosfwd>
#include <mutex>
#include <string>
#include <vector>

#include "refcurve/io.hpp"

namespace refcurve::cli {

inline constexpr const char* kSchemaVersion = "refcurve-cache-1";
inline constexpr const char* kCacheEnv = "REFCURVE_CACHE_DIR";

enum ExitCode { kOk = 0, kUsage = 1, kMismatch = 2, kInternal = 3 };

struct CacheRecord {
  std::string schema = kSchemaVersion;
  std::string key;
  Json value;
  Json created;  // writer metadata, never read back into results
};

struct CacheLoad {
  std::vector<CacheRecord> records;
  std::size_t corrupted = 0;        // unparsable lines
  std::size_t schema_mismatch = 0;  // well-formed, other schema version
};

/// One append-only JSON-lines file per module inside `dir`. Stores take an
/// advisory lock and replace the file by rename, so readers only ever see
/// complete records.
class DiskCache {
 public:
  explicit DiskCache(std::filesystem::path dir, std::string schema = kSchemaVersion);

  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path file(const std::string& module) const;

  CacheLoad load(const std::string& module) const;
  /// Appends records whose key is not yet present under this schema;
  /// returns how many were written.
  std::size_t store(const std::string& module, const std::vector<CacheRecord>& records);

 private:
  std::filesystem::path dir_;
  std::string schema_;
  static std::mutex mu_;
};

/// "3*y + 21 + 3*y^-1": descending exponents.
std::string laurent_text(const LaurentY& a);

/// Runs one command line (without the program name).
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace refcurve::cli
