#include "semtrade/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <climits>
#include <fstream>
#include <sstream>

namespace semtrade {

namespace {

std::string trim(std::string_view s) {
  size_t begin = 0, end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
  return std::string(s.substr(begin, end - begin));
}

}  // namespace

Config Config::parse_text(const std::string& text, const std::string& origin) {
  Config cfg;
  cfg.origin_ = origin;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string trimmed = trim(line);
    if (trimmed.empty()) continue;
    if (trimmed.front() == '[') {
      if (trimmed.back() != ']' || trimmed.size() < 3) {
        throw ConfigError(origin + ":" + std::to_string(line_no) + ": malformed section header");
      }
      section = trim(std::string_view(trimmed).substr(1, trimmed.size() - 2));
      continue;
    }
    const size_t eq = trimmed.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(origin + ":" + std::to_string(line_no) + ": expected 'key = value'");
    }
    if (section.empty()) {
      throw ConfigError(origin + ":" + std::to_string(line_no) + ": key outside any [section]");
    }
    const std::string key = trim(std::string_view(trimmed).substr(0, eq));
    const std::string value = trim(std::string_view(trimmed).substr(eq + 1));
    if (key.empty()) {
      throw ConfigError(origin + ":" + std::to_string(line_no) + ": empty key");
    }
    auto [it, inserted] = cfg.values_[section].emplace(key, value);
    if (!inserted) {
      throw ConfigError(origin + ":" + std::to_string(line_no) + ": duplicate key '" +
                        section + "." + key + "'");
    }
  }
  return cfg;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_text(buffer.str(), path);
}

std::string* Config::find(const std::string& section, const std::string& key) {
  auto sit = values_.find(section);
  if (sit == values_.end()) return nullptr;
  auto kit = sit->second.find(key);
  if (kit == sit->second.end()) return nullptr;
  consumed_.insert(section + "." + key);
  return &kit->second;
}

double Config::get_double(const std::string& section, const std::string& key,
                          double fallback) {
  const std::string* raw = find(section, key);
  if (!raw) return fallback;
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(raw->data(), raw->data() + raw->size(), value);
  if (ec != std::errc{} || ptr != raw->data() + raw->size()) {
    throw ConfigError(origin_ + ": '" + section + "." + key + "' is not a number: " + *raw);
  }
  return value;
}

int Config::get_int(const std::string& section, const std::string& key, int fallback) {
  const long v = get_long(section, key, fallback);
  if (v < INT_MIN || v > INT_MAX) {
    throw ConfigError(origin_ + ": '" + section + "." + key + "' out of integer range");
  }
  return static_cast<int>(v);
}

long Config::get_long(const std::string& section, const std::string& key, long fallback) {
  const std::string* raw = find(section, key);
  if (!raw) return fallback;
  long value = 0;
  auto [ptr, ec] = std::from_chars(raw->data(), raw->data() + raw->size(), value);
  if (ec != std::errc{} || ptr != raw->data() + raw->size()) {
    throw ConfigError(origin_ + ": '" + section + "." + key + "' is not an integer: " + *raw);
  }
  return value;
}

bool Config::get_bool(const std::string& section, const std::string& key, bool fallback) {
  const std::string* raw = find(section, key);
  if (!raw) return fallback;
  if (*raw == "true" || *raw == "1") return true;
  if (*raw == "false" || *raw == "0") return false;
  throw ConfigError(origin_ + ": '" + section + "." + key + "' must be true or false");
}

std::string Config::get_string(const std::string& section, const std::string& key,
                               const std::string& fallback) {
  const std::string* raw = find(section, key);
  return raw ? *raw : fallback;
}

std::vector<int> Config::get_int_list(const std::string& section, const std::string& key,
                                      const std::vector<int>& fallback) {
  const std::string* raw = find(section, key);
  if (!raw) return fallback;
  std::vector<int> out;
  std::string_view rest(*raw);
  while (!rest.empty()) {
    const size_t comma = rest.find(',');
    const std::string item = trim(rest.substr(0, comma));
    if (item.empty()) {
      throw ConfigError(origin_ + ": '" + section + "." + key + "' has an empty list item");
    }
    int value = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (ec != std::errc{} || ptr != item.data() + item.size()) {
      throw ConfigError(origin_ + ": '" + section + "." + key + "' has a bad list item: " + item);
    }
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  if (out.empty()) {
    throw ConfigError(origin_ + ": '" + section + "." + key + "' must not be empty");
  }
  return out;
}

void Config::reject_unknown() const {
  for (const auto& [section, keys] : values_) {
    for (const auto& [key, value] : keys) {
      if (!consumed_.count(section + "." + key)) {
        throw ConfigError(origin_ + ": unknown key '" + section + "." + key + "'");
      }
    }
  }
}

uint64_t Config::content_hash() const {
  uint64_t h = 0xcbf29ce484222325ull;
  const auto feed = [&h](std::string_view s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001b3ull;
    }
  };
  for (const auto& [section, keys] : values_) {
    for (const auto& [key, value] : keys) {
      feed(section);
      feed(".");
      feed(key);
      feed("=");
      feed(value);
      feed("\n");
    }
  }
  return h;
}

}  // namespace semtrade
