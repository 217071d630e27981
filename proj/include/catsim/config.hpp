#pragma once

#include <istream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

/// Flat key/value scenario files.
///
///   # comment
///   name = fig1
///   model.g = 2.5
///   signatures.wigner_at = [0.005, 0.015]
///
/// Keys are dotted identifiers, values are scalars or bracketed,
/// comma-separated lists. Later assignments of the same key are an error.
namespace catsim {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& message, int line = 0, std::string key = {});

  int line() const { return line_; }
  const std::string& key() const { return key_; }

 private:
  int line_;
  std::string key_;
};

struct ConfigEntry {
  std::string raw;  // value text as written, trimmed
  bool is_list = false;
  std::vector<std::string> items;
  int line = 0;  // 0 for programmatic overrides
};

class Config {
 public:
  static Config parse(std::istream& is);
  static Config parse_string(const std::string& text);
  static Config load(const std::string& path);

  bool has(const std::string& key) const { return entries_.count(key) != 0; }
  const ConfigEntry& entry(const std::string& key) const;
  const std::map<std::string, ConfigEntry>& entries() const { return entries_; }

  /// Replaces or adds a key; `value` uses the file syntax.
  void set(const std::string& key, const std::string& value);
  void erase(const std::string& key) { entries_.erase(key); }

  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  std::optional<double> get_optional_double(const std::string& key) const;
  long get_int(const std::string& key, long fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<double> get_doubles(const std::string& key) const;
  std::vector<std::string> get_strings(const std::string& key) const;

  /// Throws ConfigError naming the first key not in `known` and not matching
  /// any of the prefixes (e.g. "sweep.").
  void require_known(const std::vector<std::string>& known, const std::vector<std::string>& prefixes) const;

  /// Canonical text form, one "key = value" per line in key order.
  std::string to_string() const;

 private:
  std::map<std::string, ConfigEntry> entries_;
};

ConfigEntry parse_value(const std::string& text, int line, const std::string& key);

}  // namespace catsim
