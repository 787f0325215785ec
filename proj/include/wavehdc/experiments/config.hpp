#pragma once

// Structured key=value experiment configuration with a strict schema:
// unknown keys, duplicate keys, and type mismatches are errors naming the
// offending field. Missing keys take the experiment's defaults and are
// tracked so reports can echo the complete effective configuration.

#include <cctype>
#include <charconv>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "wavehdc/errors.hpp"

namespace wavehdc::experiments {

using ParamValue =
    std::variant<std::int64_t, double, bool, std::string, std::vector<double>>;

enum class ParamType { Int, Real, Bool, Str, RealList };

struct ParamSpec {
  ParamType type = ParamType::Real;
  ParamValue default_value;
};

// Ordered so reports echo parameters in a stable, declared order.
using Schema = std::vector<std::pair<std::string, ParamSpec>>;

class Config {
 public:
  Config() = default;

  void set(const std::string& key, ParamValue value, bool from_default) {
    for (auto& [k, v] : values_)
      if (k == key) {
        v = std::move(value);
        if (!from_default) defaulted_.erase(key);
        return;
      }
    values_.emplace_back(key, std::move(value));
    if (from_default) defaulted_.insert(key);
  }

  bool has(const std::string& key) const {
    for (const auto& [k, v] : values_)
      if (k == key) return true;
    return false;
  }

  std::int64_t get_int(const std::string& key) const {
    return std::get<std::int64_t>(find(key));
  }
  double get_real(const std::string& key) const {
    const auto& v = find(key);
    if (std::holds_alternative<std::int64_t>(v))
      return static_cast<double>(std::get<std::int64_t>(v));
    return std::get<double>(v);
  }
  bool get_bool(const std::string& key) const { return std::get<bool>(find(key)); }
  const std::string& get_str(const std::string& key) const {
    return std::get<std::string>(find(key));
  }
  const std::vector<double>& get_list(const std::string& key) const {
    return std::get<std::vector<double>>(find(key));
  }

  bool was_defaulted(const std::string& key) const {
    return defaulted_.count(key) > 0;
  }

  const std::vector<std::pair<std::string, ParamValue>>& entries() const {
    return values_;
  }

 private:
  const ParamValue& find(const std::string& key) const {
    for (const auto& [k, v] : values_)
      if (k == key) return v;
    throw ConfigError("config: no such parameter '" + key + "'");
  }

  std::vector<std::pair<std::string, ParamValue>> values_;
  std::set<std::string> defaulted_;
};

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

inline double parse_real(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size())
      throw ConfigError("config: field '" + key + "': not a number: " + text);
    return v;
  } catch (const ConfigError&) {
    throw;
  } catch (...) {
    throw ConfigError("config: field '" + key + "': not a number: " + text);
  }
}

inline ParamValue parse_value(const std::string& key, const ParamSpec& spec,
                              const std::string& text) {
  switch (spec.type) {
    case ParamType::Int: {
      try {
        std::size_t used = 0;
        const long long v = std::stoll(text, &used);
        if (used != text.size()) throw ConfigError("");
        return static_cast<std::int64_t>(v);
      } catch (...) {
        throw ConfigError("config: field '" + key + "': not an integer: " + text);
      }
    }
    case ParamType::Real:
      return parse_real(key, text);
    case ParamType::Bool: {
      if (text == "true" || text == "1") return true;
      if (text == "false" || text == "0") return false;
      throw ConfigError("config: field '" + key + "': not a boolean: " + text);
    }
    case ParamType::Str:
      return text;
    case ParamType::RealList: {
      std::vector<double> out;
      std::string item;
      std::istringstream ss(text);
      while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty())
          throw ConfigError("config: field '" + key + "': empty list element");
        out.push_back(parse_real(key, item));
      }
      if (out.empty())
        throw ConfigError("config: field '" + key + "': empty list");
      return out;
    }
  }
  throw ConfigError("config: field '" + key + "': unhandled type");
}

}  // namespace detail

// Parses key=value lines ('#' starts a comment). Strict mode: keys must be
// declared in the schema and may appear at most once.
inline Config parse_config(const std::string& text, const Schema& schema) {
  Config cfg;
  std::set<std::string> seen;
  std::istringstream lines(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: line " + std::to_string(line_no) +
                        ": expected key = value");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError("config: line " + std::to_string(line_no) + ": empty key");
    const ParamSpec* spec = nullptr;
    for (const auto& [k, s] : schema)
      if (k == key) spec = &s;
    if (!spec) throw ConfigError("config: unknown key '" + key + "'");
    if (!seen.insert(key).second)
      throw ConfigError("config: duplicate key '" + key + "'");
    cfg.set(key, detail::parse_value(key, *spec, value), false);
  }
  for (const auto& [key, spec] : schema)
    if (!seen.count(key)) cfg.set(key, spec.default_value, true);
  return cfg;
}

}  // namespace wavehdc::experiments
