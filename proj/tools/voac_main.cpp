#include <CLI11.hpp>
#include <iostream>
#include <nlohmann/json.hpp>
#include <thread>

#include "voa/config.hpp"
#include "voa/runner.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"voac: exact verification suites and smearing experiments for truncated "
               "vertex-operator models"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::string format;
  int threads = 0;

  CLI::App* run = app.add_subcommand("run", "run the suites selected by a config file");
  run->add_option("--config", config_path, "path to the JSON config")->required();
  run->add_option("--out", out_dir, "output directory (overrides the config)");
  run->add_option("--format", format, "json | csv | both (overrides the config)");
  run->add_option("--threads", threads, "suite-level parallelism; 0 = auto");

  CLI::App* list = app.add_subcommand("list-models", "list supported model kinds");

  std::string validate_path;
  CLI::App* validate = app.add_subcommand("validate-config", "parse and validate a config file");
  validate->add_option("--config", validate_path, "path to the JSON config")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (list->parsed()) {
      std::cout << voa::list_models().dump(2) << "\n";
      return kExitOk;
    }
    if (validate->parsed()) {
      try {
        voa::RunConfig::parse_file(validate_path);
      } catch (const voa::ConfigError& e) {
        std::cerr << "invalid config: " << e.what() << "\n";
        return kExitUsage;
      }
      std::cout << "config ok\n";
      return kExitOk;
    }
    // run
    voa::RunConfig cfg;
    try {
      cfg = voa::RunConfig::parse_file(config_path);
    } catch (const voa::ConfigError& e) {
      std::cerr << "invalid config: " << e.what() << "\n";
      return kExitUsage;
    }
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (!format.empty()) {
      if (format == "json") {
        cfg.write_json = true;
        cfg.write_csv = false;
      } else if (format == "csv") {
        cfg.write_json = false;
        cfg.write_csv = true;
      } else if (format == "both") {
        cfg.write_json = true;
        cfg.write_csv = true;
      } else {
        std::cerr << "unknown --format '" << format << "' (json | csv | both)\n";
        return kExitUsage;
      }
    }
    if (threads < 0) {
      std::cerr << "--threads must be >= 0\n";
      return kExitUsage;
    }
    const int effective_threads =
        threads == 0 ? static_cast<int>(std::thread::hardware_concurrency()) : threads;

    const voa::RunOutcome outcome = voa::run_suites(cfg, std::max(1, effective_threads));
    voa::write_outputs(outcome, cfg);
    for (const auto& s : outcome.suites)
      std::cout << s.name << ": " << s.status << "\n";
    std::cout << "report written to " << cfg.out_dir << "\n";
    return outcome.exit_code == 0 ? kExitOk : kExitCheckFailure;
  } catch (const voa::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
