#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "semtrade/common.hpp"

namespace semtrade {

// Flat "key = value" text grouped into [section] blocks, '#' comments.
// Every key must be consumed through one of the typed getters; leftover keys
// are hard errors so typos cannot silently fall back to defaults.
class Config {
 public:
  Config() = default;

  static Config parse_text(const std::string& text, const std::string& origin);
  static Config load(const std::string& path);

  double get_double(const std::string& section, const std::string& key, double fallback);
  int get_int(const std::string& section, const std::string& key, int fallback);
  long get_long(const std::string& section, const std::string& key, long fallback);
  bool get_bool(const std::string& section, const std::string& key, bool fallback);
  std::string get_string(const std::string& section, const std::string& key,
                         const std::string& fallback);
  std::vector<int> get_int_list(const std::string& section, const std::string& key,
                                const std::vector<int>& fallback);

  // Throws ConfigError naming any key that was present but never consumed.
  void reject_unknown() const;

  // FNV-1a over a canonical rendering of the raw key/value pairs.
  uint64_t content_hash() const;

 private:
  std::string* find(const std::string& section, const std::string& key);

  std::map<std::string, std::map<std::string, std::string>> values_;
  std::set<std::string> consumed_;  // "section.key"
  std::string origin_;
};

}  // namespace semtrade
