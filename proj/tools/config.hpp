#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace cqed::cli {

/// Raised for malformed, unknown, or missing configuration; maps to exit 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Value = std::variant<double, std::vector<double>, std::string>;

struct Entry {
  Value value;
  int line = 0;
};

struct ScenarioConfig {
  std::string scenario;
  std::map<std::string, Entry> params;

  bool has(const std::string& key) const { return params.count(key) != 0; }
  double number(const std::string& key) const;
  double number_or(const std::string& key, double fallback) const;
  long integer(const std::string& key) const;
  long integer_or(const std::string& key, long fallback) const;
  std::vector<double> list(const std::string& key) const;
  std::string text(const std::string& key) const;
  std::string text_or(const std::string& key, const std::string& fallback) const;
};

/// Strict parse of the documented grammar: one `[scenario]` section header,
/// `key = value` lines, `#` comments, numeric lists `[a, b, c]`.
ScenarioConfig parse_config(const std::string& path);

/// Rejects unknown scenarios, unknown keys, missing required keys, and
/// type mismatches.
void validate_config(const ScenarioConfig& cfg);

/// Names of all supported scenarios, sorted.
std::vector<std::string> scenario_names();

}  // namespace cqed::cli
