#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>

#include <Eigen/Core>

#include "CLI11.hpp"
#include "json.hpp"

#include "cqed/serialize.hpp"

#include "config.hpp"
#include "scenarios.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

void apply_thread_cap() {
  if (const char* raw = std::getenv("CQED_THREADS")) {
    const int threads = std::atoi(raw);
    if (threads > 0) Eigen::setNbThreads(threads);
  }
}

int fail(int code, const std::string& kind, const std::string& message) {
  nlohmann::ordered_json err{{"error", {{"type", kind}, {"message", message}}}};
  std::cout << err.dump() << "\n";
  return code;
}

int run_command(const std::string& config_path, std::int64_t seed_flag,
                const std::string& out_dir, const std::string& format) {
  cqed::cli::ScenarioConfig cfg;
  cqed::cli::RunOptions opt;
  try {
    cfg = cqed::cli::parse_config(config_path);
    cqed::cli::validate_config(cfg);
    opt.out_dir = out_dir;
    opt.seed = cfg.has("seed") ? static_cast<std::uint64_t>(cfg.integer("seed")) : 0;
    if (seed_flag >= 0) opt.seed = static_cast<std::uint64_t>(seed_flag);

    opt.write_csv = opt.write_json = false;
    std::stringstream ss(format);
    std::string token;
    while (std::getline(ss, token, ',')) {
      if (token == "csv") opt.write_csv = true;
      else if (token == "json") opt.write_json = true;
      else throw cqed::cli::ConfigError("unknown output format '" + token + "'");
    }
  } catch (const cqed::cli::ConfigError& e) {
    return fail(kExitConfig, "config", e.what());
  }

  try {
    std::filesystem::create_directories(opt.out_dir);
    nlohmann::ordered_json results = cqed::cli::run_scenario(cfg, opt);
    if (opt.write_json) {
      nlohmann::ordered_json doc{{"scenario", cfg.scenario},
                                 {"seed", opt.seed},
                                 {"version", "1.0.0"},
                                 {"results", results}};
      const auto path = std::filesystem::path(opt.out_dir) / "results.json";
      cqed::serialize::write_file(path.string(), doc.dump(2) + "\n");
    }
    return kExitOk;
  } catch (const cqed::cli::ConfigError& e) {
    return fail(kExitConfig, "config", e.what());
  } catch (const std::invalid_argument& e) {
    return fail(kExitConfig, "config", std::string("scenario '") + cfg.scenario + "': " + e.what());
  } catch (const std::exception& e) {
    return fail(kExitNumeric, "numeric",
                std::string("scenario '") + cfg.scenario + "': " + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  apply_thread_cap();

  CLI::App app{"Cavity-QED collective-spin scenario runner"};
  app.require_subcommand(1);

  std::string config_path, out_dir = ".", format = "csv,json";
  std::int64_t seed_flag = -1;

  CLI::App* run = app.add_subcommand("run", "Run a scenario config");
  run->add_option("config", config_path, "Path to the scenario config")->required();
  run->add_option("--seed", seed_flag, "Override the config seed");
  run->add_option("--out", out_dir, "Output directory");
  run->add_option("--format", format, "Comma-separated output formats (csv,json)");

  CLI::App* list = app.add_subcommand("list-scenarios", "List supported scenarios");

  std::string validate_path;
  CLI::App* validate = app.add_subcommand("validate", "Validate a config without running");
  validate->add_option("config", validate_path, "Path to the scenario config")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitConfig;
  }

  if (list->parsed()) {
    for (const auto& name : cqed::cli::scenario_names()) std::cout << name << "\n";
    return kExitOk;
  }
  if (validate->parsed()) {
    try {
      cqed::cli::validate_config(cqed::cli::parse_config(validate_path));
      std::cout << "ok\n";
      return kExitOk;
    } catch (const cqed::cli::ConfigError& e) {
      return fail(kExitConfig, "config", e.what());
    }
  }
  return run_command(config_path, seed_flag, out_dir, format);
}
