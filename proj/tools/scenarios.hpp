#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"

#include "config.hpp"

namespace cqed::cli {

struct RunOptions {
  std::uint64_t seed = 0;
  std::string out_dir = ".";
  bool write_csv = true;
  bool write_json = true;
};

/// Executes the scenario, writes per-curve CSVs into out_dir, and returns
/// the scalar results destined for results.json.
nlohmann::ordered_json run_scenario(const ScenarioConfig& cfg, const RunOptions& opt);

}  // namespace cqed::cli
