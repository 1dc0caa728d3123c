#pragma once

/// Subcommand execution and the JSON run manifest.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "g2flow/error.hpp"
#include "g2flow_cli/config.hpp"

namespace g2flow::cli {

struct RunResult {
  nlohmann::json metrics = nlohmann::json::object();
  nlohmann::json outputs = nlohmann::json::array();  // {"file", "time"} entries
  std::vector<std::string> warnings;
};

/// Executes the subcommand, writing CSV files into `out_dir`. Throws g2flow::Error.
RunResult run(const RunConfig& config, const std::filesystem::path& out_dir, std::ostream& log);

ExitCode exit_code(ErrorCode code);

nlohmann::json tolerances_json(const RunConfig& config);

/// Parses, runs and writes `manifest.json` (also on failure once the config is
/// valid). Returns the process exit status.
int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace g2flow::cli
