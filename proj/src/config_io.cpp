#include "actnext/config_io.hpp"

#include <fstream>
#include <sstream>

#include "actnext/error.hpp"

namespace actnext {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::optional<std::string> ConfigSection::get(const std::string& key) const {
  for (const auto& [k, v] : entries)
    if (k == key) return v;
  return std::nullopt;
}

std::string ConfigSection::get_or(const std::string& key, const std::string& fallback) const {
  auto v = get(key);
  return v ? *v : fallback;
}

std::string ConfigSection::require(const std::string& key) const {
  auto v = get(key);
  if (!v)
    throw UsageError("missing key '" + key + "'" +
                     (header.empty() ? "" : " in section [" + header + "]"));
  return *v;
}

std::vector<std::string> ConfigSection::all(const std::string& key) const {
  std::vector<std::string> out;
  for (const auto& [k, v] : entries)
    if (k == key) out.push_back(v);
  return out;
}

std::vector<ConfigSection> parse_config_text(const std::string& text,
                                             const std::string& origin) {
  std::vector<ConfigSection> sections;
  sections.push_back({});
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.front() == '[') {
      if (t.back() != ']')
        throw UsageError(origin + ":" + std::to_string(line_no) + ": unterminated section header");
      sections.push_back({trim(t.substr(1, t.size() - 2)), {}});
      continue;
    }
    auto eq = t.find('=');
    if (eq == std::string::npos)
      throw UsageError(origin + ":" + std::to_string(line_no) + ": expected 'key = value'");
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (key.empty())
      throw UsageError(origin + ":" + std::to_string(line_no) + ": empty key");
    sections.back().entries.emplace_back(std::move(key), std::move(value));
  }
  return sections;
}

std::vector<ConfigSection> parse_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), path);
}

std::int64_t to_int(const std::string& value, const std::string& what) {
  try {
    std::size_t used = 0;
    auto v = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw UsageError("bad integer for " + what + ": '" + value + "'");
  }
}

double to_double(const std::string& value, const std::string& what) {
  try {
    std::size_t used = 0;
    auto v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw UsageError("bad number for " + what + ": '" + value + "'");
  }
}

bool to_bool(const std::string& value, const std::string& what) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw UsageError("bad boolean for " + what + ": '" + value + "'");
}

}  // namespace actnext
