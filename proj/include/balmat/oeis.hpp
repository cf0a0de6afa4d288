#pragma once

// OEIS b-file access: bundled fixtures first, then a local cache, then (when
// online is permitted and the build has HTTP support) oeis.org itself. All
// test traffic stays offline against the fixtures.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "balmat/bfile.hpp"
#include "balmat/bigint.hpp"
#include "balmat/errors.hpp"

#ifdef BALMAT_WITH_HTTP
#include "httplib.h"
#endif

namespace balmat::oeis {

struct OeisRef {
  std::string id;  // "A" + six digits

  explicit OeisRef(std::string s) : id(std::move(s)) {
    if (id.size() != 7 || id[0] != 'A')
      throw invalid_parameter("bad OEIS id '" + id + "' (want A followed by six digits)");
    for (std::size_t i = 1; i < id.size(); ++i)
      if (id[i] < '0' || id[i] > '9')
        throw invalid_parameter("bad OEIS id '" + id + "' (want A followed by six digits)");
  }

  std::string bfile_name() const { return "b" + id.substr(1) + ".txt"; }
  std::string url_path() const { return "/" + id + "/" + bfile_name(); }
};

enum class Source { fixture, cache, network };

struct BFile {
  OeisRef id;
  std::vector<std::pair<long, Integer>> entries;
  Source source = Source::fixture;
};

struct Config {
  std::filesystem::path fixture_dir;
  std::filesystem::path cache_dir;
  bool offline = true;
  std::string base_url = "https://oeis.org";

  static Config from_env() {
    Config cfg;
    if (const char* d = std::getenv("BALMAT_OEIS_DIR")) cfg.fixture_dir = d;
    if (const char* d = std::getenv("BALMAT_CACHE_DIR")) cfg.cache_dir = d;
    if (const char* o = std::getenv("BALMAT_OFFLINE"))
      cfg.offline = std::string(o) != "0";
    else
      cfg.offline = true;
    if (const char* u = std::getenv("BALMAT_OEIS_URL")) cfg.base_url = u;
    return cfg;
  }
};

// FNV-1a 64, used for fixture integrity.
inline std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

namespace detail {

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// checksums.txt lines: "<file> <fnv1a64 hex>"
inline void verify_checksum(const std::filesystem::path& dir, const std::string& name,
                            const std::string& content) {
  std::ifstream sums(dir / "checksums.txt");
  if (!sums) return;  // no checksum file, nothing to verify against
  std::string file, hex;
  while (sums >> file >> hex) {
    if (file != name) continue;
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(content)));
    if (hex != buf)
      throw parse_error("fixture " + name + " failed its checksum (have " + buf + ", want " + hex +
                            ")",
                        0);
    return;
  }
}

inline BFile parse_named(const OeisRef& id, const std::string& content, Source src) {
  std::istringstream in(content);
  BFileEntries parsed = parse_bfile(in);
  return BFile{id, std::move(parsed.entries), src};
}

// write-then-rename so concurrent readers never see a partial file
inline void atomic_write(const std::filesystem::path& target, const std::string& content) {
  std::filesystem::create_directories(target.parent_path());
  auto tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << content;
  }
  std::filesystem::rename(tmp, target);
}

#ifdef BALMAT_WITH_HTTP
inline std::optional<std::string> http_get(const std::string& base_url, const std::string& path) {
  httplib::Client client(base_url);
  client.set_follow_location(true);
  client.set_connection_timeout(10);
  client.set_read_timeout(30);
  auto res = client.Get(path);
  if (!res || res->status != 200) return std::nullopt;
  return res->body;
}
#endif

}  // namespace detail

inline BFile fetch_bfile(const OeisRef& id, const Config& cfg) {
  const std::string name = id.bfile_name();
  if (!cfg.fixture_dir.empty()) {
    auto p = cfg.fixture_dir / name;
    if (std::filesystem::exists(p)) {
      std::string content = detail::read_file(p);
      detail::verify_checksum(cfg.fixture_dir, name, content);
      return detail::parse_named(id, content, Source::fixture);
    }
  }
  if (!cfg.cache_dir.empty()) {
    auto p = cfg.cache_dir / name;
    if (std::filesystem::exists(p))
      return detail::parse_named(id, detail::read_file(p), Source::cache);
  }
  if (!cfg.offline) {
#ifdef BALMAT_WITH_HTTP
    if (auto body = detail::http_get(cfg.base_url, id.url_path())) {
      BFile parsed = detail::parse_named(id, *body, Source::network);  // validate before caching
      if (!cfg.cache_dir.empty()) detail::atomic_write(cfg.cache_dir / name, *body);
      return parsed;
    }
    throw data_unavailable("could not download " + id.url_path() + " from " + cfg.base_url);
#else
    throw data_unavailable("built without network support; no fixture or cache for " + id.id);
#endif
  }
  throw data_unavailable("offline and no fixture or cached copy of " + id.id);
}

inline BFile fetch_bfile(const std::string& id, const Config& cfg) {
  return fetch_bfile(OeisRef(id), cfg);
}

struct CompareReport {
  long matched = 0;          // length of the agreeing prefix
  long first_mismatch = -1;  // b-file index of the first disagreement
  long terms_count = 0;
  long bfile_count = 0;
  bool full_prefix_match() const { return first_mismatch < 0; }
};

// Compares terms[j] against the b-file value at index offset + j.
inline CompareReport compare(const std::vector<Integer>& terms, const BFile& bf, long offset) {
  CompareReport rep;
  rep.terms_count = static_cast<long>(terms.size());
  rep.bfile_count = static_cast<long>(bf.entries.size());
  std::size_t pos = 0;
  for (long j = 0; j < rep.terms_count; ++j) {
    long want = offset + j;
    while (pos < bf.entries.size() && bf.entries[pos].first < want) ++pos;
    if (pos == bf.entries.size() || bf.entries[pos].first != want) break;  // ran out of coverage
    if (bf.entries[pos].second != terms[j]) {
      rep.first_mismatch = want;
      return rep;
    }
    ++rep.matched;
  }
  return rep;
}

}  // namespace balmat::oeis
