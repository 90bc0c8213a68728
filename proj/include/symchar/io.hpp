#pragma once

// Serialization shared by the command line tool and the audit suites: exact
// integers and rationals as decimal / "p/q" strings, partition labels, and a
// small on-disk cache for growth series keyed by canonical preset. Floats
// are formatted through snprintf so output is locale independent.

#include <symchar/common.hpp>
#include <symchar/partition.hpp>

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace symchar {

inline constexpr const char* version_string = "1.0.0";
inline constexpr const char* cache_env_var = "SYMCHAR_CACHE_DIR";

inline std::string int_str(const Int& v) { return v.get_str(); }

inline std::string rat_str(const Rat& v) {
  if (v.get_den() == 1) return v.get_num().get_str();
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

inline Int parse_int(const std::string& s) {
  Int v;
  if (s.empty() || v.set_str(s, 10) != 0)
    throw std::invalid_argument("not a decimal integer: '" + s + "'");
  return v;
}

inline Rat parse_rat(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rat(parse_int(s));
  return make_rat(parse_int(s.substr(0, slash)), parse_int(s.substr(slash + 1)));
}

// "3+1+1" for CSV fields (commas would need quoting), "3,1,1" on the command
// line. The empty partition prints as "-".
inline std::string partition_plus(const Partition& lam) {
  if (lam.norm() == 0) return "-";
  std::string out;
  for (int i = 0; i < lam.norm(); ++i) {
    if (i) out += '+';
    out += std::to_string(lam.part(i));
  }
  return out;
}

inline Partition parse_partition(const std::string& text) {
  std::vector<int> parts;
  std::string tok;
  std::istringstream in(text);
  while (std::getline(in, tok, ',')) {
    size_t pos = 0;
    int v = std::stoi(tok, &pos);
    while (pos < tok.size() && std::isspace((unsigned char)tok[pos])) ++pos;
    if (pos != tok.size() || v <= 0)
      throw std::invalid_argument("bad partition part: '" + tok + "'");
    parts.push_back(v);
  }
  if (parts.empty()) throw std::invalid_argument("empty partition: '" + text + "'");
  std::sort(parts.rbegin(), parts.rend());
  return Partition(parts);
}

// "1:2,2:1" -> {1: 2, 2: 1}, the cycle-length exponent map for moments.
inline std::map<int, int> parse_exponents(const std::string& text) {
  std::map<int, int> e;
  std::string tok;
  std::istringstream in(text);
  while (std::getline(in, tok, ',')) {
    auto colon = tok.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("want t:e_t pairs: '" + tok + "'");
    int t = std::stoi(tok.substr(0, colon));
    int et = std::stoi(tok.substr(colon + 1));
    if (t < 1 || et < 0 || e.count(t))
      throw std::invalid_argument("bad exponent pair: '" + tok + "'");
    e[t] = et;
  }
  return e;
}

inline std::string fmt_double(double x, int digits = 12) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return std::string(buf);
}

inline std::optional<std::filesystem::path> cache_directory() {
  const char* dir = std::getenv(cache_env_var);
  if (!dir || !*dir) return std::nullopt;
  return std::filesystem::path(dir);
}

namespace detail {
inline std::filesystem::path cache_file(const std::filesystem::path& dir,
                                        const std::string& preset) {
  std::string key;
  for (char ch : preset) key += std::isalnum((unsigned char)ch) ? ch : '_';
  return dir / (key + ".h.txt");
}
}  // namespace detail

// The cache stores exact h_n values, one "n p/q" line per n, so a cached run
// reproduces the uncached output byte for byte.
inline std::vector<Rat> load_h_cache(const std::string& preset, int n_max) {
  auto dir = cache_directory();
  std::vector<Rat> h;
  if (!dir) return h;
  std::ifstream in(detail::cache_file(*dir, preset));
  if (!in) return h;
  std::string ns, hs;
  while (in >> ns >> hs) {
    if (parse_int(ns) != (long)h.size() + 1) return {};  // gap: ignore the file
    h.push_back(parse_rat(hs));
    if ((int)h.size() == n_max) break;
  }
  return h;
}

inline void store_h_cache(const std::string& preset, const std::vector<Rat>& h) {
  auto dir = cache_directory();
  if (!dir) return;
  std::error_code ec;
  std::filesystem::create_directories(*dir, ec);
  if (ec) return;  // caching is best effort
  auto path = detail::cache_file(*dir, preset);
  if (std::ifstream probe(path); probe) {
    int have = 0;
    std::string ns, hs;
    while (probe >> ns >> hs) ++have;
    if (have >= (int)h.size()) return;
  }
  std::ofstream out(path, std::ios::trunc);
  for (size_t k = 0; k < h.size(); ++k)
    out << (k + 1) << " " << rat_str(h[k]) << "\n";
}

}  // namespace symchar
