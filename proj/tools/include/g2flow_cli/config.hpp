#pragma once

/// Run configuration of the g2flow tool: parsing, validation and the echo that
/// goes into every manifest.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <utility>
#include <string>
#include <vector>

#include <json.hpp>

namespace g2flow::cli {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kOutputRootEnv = "G2FLOW_OUTPUT_ROOT";

inline const std::vector<std::string> kSubcommands = {"tables",       "frame",         "simulate-curve",
                                                      "simulate-u",   "simulate-nlss", "simulate-modified",
                                                      "cross-validate", "surface"};

/// Exit statuses. Parse failures use 2..5, library failures 6 and up.
enum class ExitCode : int {
  ok = 0,
  internal = 1,
  unknown_flag = 2,
  missing_required = 3,
  invalid_value = 4,
  unreadable_path = 5,
  invalid_input = 6,
  vanishing_curvature = 7,
  non_unit_speed = 8,
  division_by_small = 9,
  blow_up = 10,
  degenerate_rotation = 11,
  cfl_violation = 12,
  io = 13,
};

class ConfigError : public std::runtime_error {
 public:
  ConfigError(ExitCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  [[nodiscard]] ExitCode code() const noexcept { return code_; }

 private:
  ExitCode code_;
};

/// Thrown by parse_config for --help; `text` is the usage message.
class HelpRequested : public std::exception {
 public:
  explicit HelpRequested(std::string text) : text_(std::move(text)) {}
  [[nodiscard]] const char* what() const noexcept override { return text_.c_str(); }

 private:
  std::string text_;
};

struct Tolerances {
  double kappa2_threshold = 1e-7;
  double k1_threshold = 1e-10;
  double speed_tolerance = 1e-3;
  double divisor_floor = 1e-8;
  double cfl = 0.2;
  double blow_up_limit = 1e6;
  double associative_tol = 1e-8;
};

struct RunConfig {
  std::string subcommand;
  std::string preset;            // empty when `input` is used
  std::filesystem::path input;   // CSV initial data
  std::string boundary = "periodic";
  std::int64_t n = 256;
  std::optional<double> ds;      // only for presets with a free domain length
  std::optional<double> dt;      // default dt_factor * ds^2
  double dt_factor = 0.1;
  std::optional<double> t_end;   // default per subcommand
  std::int64_t slices = 5;       // output times after t = 0
  std::filesystem::path output;  // resolved against the output root
  std::string scheme = "rk4";
  std::string projection = "none";
  std::string variant = "block-A";  // named matrix or CSV path
  std::string system = "standard";  // NLSS: standard or variant
  int stencil_order = 6;            // NLSS s-derivatives
  std::uint64_t seed = 7;
  double amplitude = 0.1;
  std::vector<int> modes = {2, 3};
  bool quaternionic = false;
  double helix_a = 1.0, helix_b = 1.0;
  double omega = 1.0;
  double eta = 1.0;
  double wave_re = 1.0, wave_im = 0.0, mu = 1.0;
  double width = 1.0, k0 = 0.0;
  std::vector<std::int64_t> grids = {128, 256};
  Tolerances tol;
};

/// Parses argv (argv[0] is the program name). An optional `--config FILE`
/// (TOML or INI) supplies defaults that explicit flags override.
/// Throws ConfigError with the matching exit code.
RunConfig parse_config(int argc, const char* const* argv);
RunConfig parse_config(const std::vector<std::string>& args);

/// Applies subcommand defaults and checks ranges, presets and paths.
void validate(RunConfig& config);

/// Output directory after applying G2FLOW_OUTPUT_ROOT (default ./g2flow-out).
std::filesystem::path resolve_output(const RunConfig& config);

nlohmann::json to_json(const RunConfig& config);

}  // namespace g2flow::cli
