#ifndef VOA_RUNNER_HPP
#define VOA_RUNNER_HPP

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "voa/config.hpp"

namespace voa {

struct SuiteResult {
  std::string name;
  std::string status;  // pass | fail | info
  nlohmann::json payload;
  std::vector<std::pair<std::string, std::string>> csv_files;  // name -> content
  double seconds = 0.0;
};

struct RunOutcome {
  std::vector<SuiteResult> suites;
  nlohmann::json report;   // deterministic; exact suites are byte-identical across runs
  nlohmann::json run_log;  // timings and environment notes, kept out of report.json
  int exit_code = 0;       // 0 ok, 1 exact check failed
};

// Builds the model once and runs the requested suites (concurrently when
// threads != 1; results are merged in config order).
RunOutcome run_suites(const RunConfig& cfg, int threads);

// Writes report.json / CSV files / run_log.json under cfg.out_dir.
void write_outputs(const RunOutcome& outcome, const RunConfig& cfg);

// floats are serialized with 17 significant digits, as strings
std::string format_double17(double v);

}  // namespace voa

#endif
