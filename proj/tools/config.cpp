#include "config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace cqed::cli {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

[[noreturn]] void fail(int line, const std::string& message) {
  throw ConfigError("config error line " + std::to_string(line) + ": " + message);
}

bool parse_number(const std::string& token, double& out) {
  if (token.empty()) return false;
  char* end = nullptr;
  out = std::strtod(token.c_str(), &end);
  return end == token.c_str() + token.size();
}

Value parse_value(const std::string& raw, int line) {
  if (!raw.empty() && raw.front() == '[') {
    if (raw.back() != ']') fail(line, "unterminated list");
    std::vector<double> items;
    std::string body = raw.substr(1, raw.size() - 2);
    std::stringstream ss(body);
    std::string token;
    while (std::getline(ss, token, ',')) {
      token = trim(token);
      if (token.empty()) fail(line, "empty list element");
      double x = 0.0;
      if (!parse_number(token, x)) fail(line, "list element '" + token + "' is not a number");
      items.push_back(x);
    }
    if (items.empty() && !trim(body).empty()) fail(line, "malformed list");
    return items;
  }
  if (raw.size() >= 2 && raw.front() == '"' && raw.back() == '"')
    return raw.substr(1, raw.size() - 2);
  double x = 0.0;
  if (parse_number(raw, x)) return x;
  return raw;  // bare word
}

}  // namespace

double ScenarioConfig::number(const std::string& key) const {
  const auto it = params.find(key);
  if (it == params.end()) throw ConfigError("missing required key '" + key + "'");
  const double* x = std::get_if<double>(&it->second.value);
  if (x == nullptr)
    throw ConfigError("key '" + key + "' (line " + std::to_string(it->second.line) +
                      ") must be a number");
  return *x;
}

double ScenarioConfig::number_or(const std::string& key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

long ScenarioConfig::integer(const std::string& key) const {
  const double x = number(key);
  const long n = static_cast<long>(x);
  if (static_cast<double>(n) != x)
    throw ConfigError("key '" + key + "' must be an integer");
  return n;
}

long ScenarioConfig::integer_or(const std::string& key, long fallback) const {
  return has(key) ? integer(key) : fallback;
}

std::vector<double> ScenarioConfig::list(const std::string& key) const {
  const auto it = params.find(key);
  if (it == params.end()) throw ConfigError("missing required key '" + key + "'");
  const auto* v = std::get_if<std::vector<double>>(&it->second.value);
  if (v == nullptr)
    throw ConfigError("key '" + key + "' (line " + std::to_string(it->second.line) +
                      ") must be a list");
  return *v;
}

std::string ScenarioConfig::text(const std::string& key) const {
  const auto it = params.find(key);
  if (it == params.end()) throw ConfigError("missing required key '" + key + "'");
  const auto* s = std::get_if<std::string>(&it->second.value);
  if (s == nullptr)
    throw ConfigError("key '" + key + "' (line " + std::to_string(it->second.line) +
                      ") must be a string");
  return *s;
}

std::string ScenarioConfig::text_or(const std::string& key, const std::string& fallback) const {
  return has(key) ? text(key) : fallback;
}

ScenarioConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");

  ScenarioConfig cfg;
  std::string raw_line;
  int line_no = 0;
  bool have_section = false;
  while (std::getline(in, raw_line)) {
    ++line_no;
    std::string line = raw_line;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[' && line.back() == ']' && line.find('=') == std::string::npos) {
      if (have_section) fail(line_no, "only one scenario section per config");
      cfg.scenario = trim(line.substr(1, line.size() - 2));
      if (cfg.scenario.empty()) fail(line_no, "empty scenario name");
      have_section = true;
      continue;
    }

    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) fail(line_no, "expected 'key = value'");
    if (!have_section) fail(line_no, "keys must follow a [scenario] section header");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail(line_no, "empty key");
    if (value.empty()) fail(line_no, "empty value for key '" + key + "'");
    if (cfg.params.count(key)) fail(line_no, "duplicate key '" + key + "'");
    cfg.params[key] = {parse_value(value, line_no), line_no};
  }
  if (!have_section) throw ConfigError("config error: no [scenario] section found");
  return cfg;
}

namespace {

enum class Kind { Number, List, Text };

struct KeySpec {
  Kind kind = Kind::Number;
  bool required = false;
};

const std::map<std::string, std::map<std::string, KeySpec>>& schemas() {
  static const std::map<std::string, std::map<std::string, KeySpec>> table{
      {"budget",
       {{"finesse", {Kind::Number, true}},
        {"waist", {Kind::Number, true}},
        {"wavelength", {Kind::Number, true}},
        {"length", {Kind::Number, true}},
        {"gamma", {Kind::Number, true}},
        {"nbar", {Kind::Number, false}}}},
      {"jc_spectrum",
       {{"g", {Kind::Number, true}},
        {"n", {Kind::Number, true}},
        {"kappa", {Kind::Number, true}},
        {"gamma", {Kind::Number, true}},
        {"half_width", {Kind::Number, false}},
        {"n_points", {Kind::Number, false}}}},
      {"oat",
       {{"n", {Kind::Number, true}},
        {"chi", {Kind::Number, false}},
        {"t_max", {Kind::Number, true}},
        {"n_points", {Kind::Number, false}}}},
      {"qnd_squeeze",
       {{"n", {Kind::Number, true}},
        {"sigma2_m", {Kind::Number, true}},
        {"raman_r", {Kind::Number, false}},
        {"gamma_sc_t_max", {Kind::Number, true}},
        {"n_points", {Kind::Number, false}}}},
      {"parity_cat",
       {{"alpha", {Kind::Number, true}},
        {"phi1", {Kind::Number, false}},
        {"n_max", {Kind::Number, false}}}},
      {"fock_collapse",
       {{"alpha", {Kind::Number, true}},
        {"phi1", {Kind::Number, true}},
        {"n_atoms", {Kind::Number, true}},
        {"basis_schedule", {Kind::List, false}}}},
      {"w_state", {{"n", {Kind::Number, true}}, {"phi", {Kind::Number, true}}}},
      {"paint",
       {{"n", {Kind::Number, true}},
        {"pulse", {Kind::Text, true}},
        {"omega1", {Kind::Number, true}},
        {"kappa", {Kind::Number, true}},
        {"duration", {Kind::Number, true}},
        {"rate", {Kind::Number, false}},
        {"n_samples", {Kind::Number, false}}}},
      {"echo",
       {{"n", {Kind::Number, true}},
        {"chi", {Kind::Number, false}},
        {"t_fwd", {Kind::Number, true}},
        {"angle", {Kind::Number, false}},
        {"t_rev", {Kind::Number, false}}}},
      {"allan",
       {{"xi", {Kind::Number, true}},
        {"n", {Kind::Number, true}},
        {"omega", {Kind::Number, true}},
        {"t_ramsey", {Kind::Number, true}},
        {"t_cycle", {Kind::Number, true}},
        {"tau_min", {Kind::Number, true}},
        {"tau_max", {Kind::Number, true}},
        {"n_points", {Kind::Number, false}}}},
      {"floquet_graph",
       {{"m", {Kind::Number, true}},
        {"builder", {Kind::Text, true}},
        {"j_rail", {Kind::Number, false}},
        {"j_rung", {Kind::Number, false}},
        {"s", {Kind::Number, false}}}},
      {"quench_geometry",
       {{"m", {Kind::Number, false}},
        {"s", {Kind::Number, false}},
        {"q", {Kind::Number, false}},
        {"t", {Kind::Number, false}}}},
      {"graph_state",
       {{"m", {Kind::Number, true}},
        {"graph", {Kind::Text, true}},
        {"r", {Kind::Number, true}}}},
      {"dicke_meanfield",
       {{"n", {Kind::Number, true}},
        {"omega0", {Kind::Number, true}},
        {"omega_c", {Kind::Number, true}},
        {"g_max", {Kind::Number, true}},
        {"n_points", {Kind::Number, false}}}},
      {"sy_build",
       {{"m", {Kind::Number, true}}, {"variance", {Kind::Number, true}}}},
  };
  return table;
}

}  // namespace

std::vector<std::string> scenario_names() {
  std::vector<std::string> names;
  for (const auto& [name, keys] : schemas()) names.push_back(name);
  return names;
}

void validate_config(const ScenarioConfig& cfg) {
  const auto schema_it = schemas().find(cfg.scenario);
  if (schema_it == schemas().end())
    throw ConfigError("unknown scenario '" + cfg.scenario + "'");
  const auto& schema = schema_it->second;

  for (const auto& [key, entry] : cfg.params) {
    if (key == "seed") {
      if (!std::holds_alternative<double>(entry.value))
        throw ConfigError("key 'seed' (line " + std::to_string(entry.line) +
                          ") must be a number");
      continue;
    }
    const auto it = schema.find(key);
    if (it == schema.end())
      throw ConfigError("unknown key '" + key + "' (line " + std::to_string(entry.line) +
                        ") for scenario '" + cfg.scenario + "'");
    const Kind kind = it->second.kind;
    const bool ok = (kind == Kind::Number && std::holds_alternative<double>(entry.value)) ||
                    (kind == Kind::List && std::holds_alternative<std::vector<double>>(entry.value)) ||
                    (kind == Kind::Text && std::holds_alternative<std::string>(entry.value));
    if (!ok)
      throw ConfigError("key '" + key + "' (line " + std::to_string(entry.line) +
                        ") has the wrong type");
  }
  for (const auto& [key, spec] : schema)
    if (spec.required && !cfg.has(key))
      throw ConfigError("scenario '" + cfg.scenario + "' is missing required key '" + key + "'");
}

}  // namespace cqed::cli
