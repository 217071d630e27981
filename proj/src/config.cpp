#include "catsim/config.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace catsim {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool valid_key(const std::string& key) {
  if (key.empty() || key.front() == '.' || key.back() == '.') return false;
  return std::all_of(key.begin(), key.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
  });
}

std::string where(int line, const std::string& key) {
  std::string s;
  if (line > 0) s += "line " + std::to_string(line);
  if (!key.empty()) s += (s.empty() ? "" : ", ") + std::string("key '") + key + "'";
  return s;
}

double to_double(const std::string& text, int line, const std::string& key) {
  const char* begin = text.c_str();
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0' || errno == ERANGE) {
    throw ConfigError("expected a number, got '" + text + "'", line, key);
  }
  return v;
}

}  // namespace

ConfigError::ConfigError(const std::string& message, int line, std::string key)
    : std::runtime_error(where(line, key).empty() ? message : where(line, key) + ": " + message),
      line_(line),
      key_(std::move(key)) {}

ConfigEntry parse_value(const std::string& text, int line, const std::string& key) {
  ConfigEntry e;
  e.raw = trim(text);
  e.line = line;
  if (e.raw.empty()) throw ConfigError("missing value", line, key);
  if (e.raw.front() == '[') {
    if (e.raw.back() != ']') throw ConfigError("unterminated list", line, key);
    e.is_list = true;
    const std::string body = trim(e.raw.substr(1, e.raw.size() - 2));
    if (!body.empty()) {
      std::stringstream ss(body);
      std::string item;
      while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) throw ConfigError("empty list element", line, key);
        e.items.push_back(item);
      }
      if (body.back() == ',') throw ConfigError("empty list element", line, key);
    }
  }
  return e;
}

Config Config::parse(std::istream& is) {
  Config c;
  std::string line;
  int number = 0;
  while (std::getline(is, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("expected 'key = value'", number);
    const std::string key = trim(line.substr(0, eq));
    if (!valid_key(key)) throw ConfigError("malformed key '" + key + "'", number);
    if (c.has(key)) {
      throw ConfigError("duplicate key (first set on line " + std::to_string(c.entry(key).line) + ")", number, key);
    }
    c.entries_[key] = parse_value(line.substr(eq + 1), number, key);
  }
  return c;
}

Config Config::parse_string(const std::string& text) {
  std::istringstream is(text);
  return parse(is);
}

Config Config::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file '" + path + "'");
  return parse(f);
}

const ConfigEntry& Config::entry(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) throw ConfigError("missing required key", 0, key);
  return it->second;
}

void Config::set(const std::string& key, const std::string& value) {
  if (!valid_key(key)) throw ConfigError("malformed key '" + key + "'");
  entries_[key] = parse_value(value, 0, key);
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
  if (!has(key)) return fallback;
  const ConfigEntry& e = entry(key);
  if (e.is_list) throw ConfigError("expected a scalar, got a list", e.line, key);
  return e.raw;
}

double Config::get_double(const std::string& key, double fallback) const {
  if (!has(key)) return fallback;
  const ConfigEntry& e = entry(key);
  if (e.is_list) throw ConfigError("expected a number, got a list", e.line, key);
  return to_double(e.raw, e.line, key);
}

std::optional<double> Config::get_optional_double(const std::string& key) const {
  if (!has(key)) return std::nullopt;
  return get_double(key, 0.0);
}

long Config::get_int(const std::string& key, long fallback) const {
  if (!has(key)) return fallback;
  const double v = get_double(key, 0.0);
  if (v != static_cast<double>(static_cast<long>(v))) {
    throw ConfigError("expected an integer, got '" + entry(key).raw + "'", entry(key).line, key);
  }
  return static_cast<long>(v);
}

bool Config::get_bool(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const std::string v = get_string(key, "");
  if (v == "true" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "no" || v == "0") return false;
  throw ConfigError("expected true or false, got '" + v + "'", entry(key).line, key);
}

std::vector<double> Config::get_doubles(const std::string& key) const {
  std::vector<double> out;
  if (!has(key)) return out;
  const ConfigEntry& e = entry(key);
  if (!e.is_list) return {to_double(e.raw, e.line, key)};
  for (const std::string& item : e.items) out.push_back(to_double(item, e.line, key));
  return out;
}

std::vector<std::string> Config::get_strings(const std::string& key) const {
  if (!has(key)) return {};
  const ConfigEntry& e = entry(key);
  if (!e.is_list) return {e.raw};
  return e.items;
}

void Config::require_known(const std::vector<std::string>& known, const std::vector<std::string>& prefixes) const {
  for (const auto& [key, e] : entries_) {
    if (std::find(known.begin(), known.end(), key) != known.end()) continue;
    const bool prefixed = std::any_of(prefixes.begin(), prefixes.end(), [&](const std::string& p) {
      return key.size() > p.size() && key.compare(0, p.size(), p) == 0;
    });
    if (!prefixed) throw ConfigError("unknown key", e.line, key);
  }
}

std::string Config::to_string() const {
  std::string s;
  for (const auto& [key, e] : entries_) s += key + " = " + e.raw + "\n";
  return s;
}

}  // namespace catsim
