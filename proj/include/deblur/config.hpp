#pragma once

#include <map>
#include <string>
#include <vector>

namespace deblur {

// Flat key=value text format used for run configs and output sidecars.
// '#' starts a comment; blank lines are ignored. Keys keep insertion order
// when written back so sidecars stay diffable.
class KeyValueConfig {
 public:
  KeyValueConfig() = default;

  static KeyValueConfig load(const std::string& path);
  static KeyValueConfig parse(const std::string& text);

  bool has(const std::string& key) const;
  void set(const std::string& key, const std::string& value);
  void set(const std::string& key, double value);
  void set(const std::string& key, long long value);

  std::string get(const std::string& key) const;  // throws if missing
  std::string get_or(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  long long get_int(const std::string& key) const;
  bool get_bool(const std::string& key) const;

  void save(const std::string& path) const;
  std::string to_string() const;

 private:
  std::map<std::string, std::string> values_;
  std::vector<std::string> order_;
};

}  // namespace deblur
