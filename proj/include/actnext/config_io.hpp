#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace actnext {

// Minimal key-value/section text format shared by train configs, synthetic
// profiles and experiment plans:
//   # comment
//   key = value
//   [section header]
//   key = value
// Keys may repeat; order is preserved.
struct ConfigSection {
  std::string header;  // "" for the preamble
  std::vector<std::pair<std::string, std::string>> entries;

  std::optional<std::string> get(const std::string& key) const;
  std::string get_or(const std::string& key, const std::string& fallback) const;
  std::string require(const std::string& key) const;
  std::vector<std::string> all(const std::string& key) const;
  bool has(const std::string& key) const { return get(key).has_value(); }
};

std::vector<ConfigSection> parse_config_file(const std::string& path);
std::vector<ConfigSection> parse_config_text(const std::string& text,
                                             const std::string& origin);

std::int64_t to_int(const std::string& value, const std::string& what);
double to_double(const std::string& value, const std::string& what);
bool to_bool(const std::string& value, const std::string& what);

}  // namespace actnext
