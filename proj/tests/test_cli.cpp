#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "g2flow/csv.hpp"
#include "g2flow_cli/config.hpp"
#include "g2flow_cli/run.hpp"

using namespace g2flow::cli;
namespace fs = std::filesystem;

namespace {

ExitCode parse_code(const std::vector<std::string>& args) {
  try {
    parse_config(args);
  } catch (const ConfigError& e) {
    return e.code();
  }
  return ExitCode::ok;
}

struct Scratch {
  fs::path root = fs::temp_directory_path() / "g2flow_cli_test";
  Scratch() {
    fs::remove_all(root);
    setenv(kOutputRootEnv, root.c_str(), 1);
  }
  ~Scratch() { fs::remove_all(root); }
};

int invoke(const std::vector<std::string>& args, std::string* out = nullptr) {
  std::vector<const char*> argv{"g2flow"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream o, e;
  const int code = run_main(static_cast<int>(argv.size()), argv.data(), o, e);
  if (out) *out = o.str();
  return code;
}

nlohmann::json manifest(const fs::path& dir) {
  std::ifstream in(dir / "manifest.json");
  return nlohmann::json::parse(in);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("documented invocation parses to a resolved config") {
  const RunConfig c = parse_config({"simulate-curve", "--preset", "helix", "--N", "512", "--dt", "1e-4", "--t-end", "0.1"});
  CHECK(c.subcommand == "simulate-curve");
  CHECK(c.preset == "helix");
  CHECK(c.n == 512);
  CHECK(*c.dt == 1e-4);
  CHECK(*c.t_end == 0.1);
  CHECK(c.tol.cfl == 0.2);
  const auto j = to_json(c);
  CHECK(j.at("N") == 512);
}

TEST_CASE("parse failures have distinct exit codes") {
  CHECK(parse_code({"frame", "--preset", "helix", "--N", "4"}) == ExitCode::invalid_value);
  CHECK(parse_code({"frame", "--preset", "helix", "--bogus", "1"}) == ExitCode::unknown_flag);
  CHECK(parse_code({"frame"}) == ExitCode::missing_required);
  CHECK(parse_code({"frame", "--input", "/nonexistent/curve.csv"}) == ExitCode::unreadable_path);
  CHECK(parse_code({"frame", "--preset", "soliton"}) == ExitCode::invalid_value);
  CHECK(parse_code({"simulate-curve", "--preset", "circle", "--t-end", "-1"}) == ExitCode::invalid_value);
  CHECK(parse_code({"frame", "--preset", "helix"}) == ExitCode::ok);
}

TEST_CASE("tables prints the basis products") {
  Scratch s;
  std::string out;
  CHECK(invoke({"tables"}, &out) == 0);
  const std::string text = slurp(s.root / "tables" / "multiplication_table.csv");
  CHECK(text.find("il,l,-kl,jl,-i,-1,-k,j") != std::string::npos);
  CHECK(out.find("-k") != std::string::npos);
}

TEST_CASE("frame on the helix meets the rho constraint") {
  Scratch s;
  CHECK(invoke({"frame", "--preset", "helix", "--N", "512"}) == 0);
  const auto m = manifest(s.root / "frame");
  CHECK(m.at("schema_version") == 1);
  CHECK(m.at("status") == "ok");
  CHECK(m.at("metrics").at("rho_constraint_max").get<double>() <= 1e-6);
  CHECK(m.at("tolerances").at("divisor_floor") == 1e-8);
}

TEST_CASE("circle translates by one unit along k in unit time") {
  Scratch s;
  REQUIRE(invoke({"simulate-curve", "--preset", "circle", "--N", "128", "--t-end", "1", "--slices", "1"}) == 0);
  const auto a = g2flow::read_csv(s.root / "simulate-curve" / "curve_000.csv");
  const auto b = g2flow::read_csv(s.root / "simulate-curve" / "curve_001.csv");
  double err = 0.0;
  for (std::size_t k = 0; k < a.rows.size(); ++k) {
    for (std::size_t c = 1; c < 8; ++c) err = std::max(err, std::abs(b.rows[k][c] - a.rows[k][c] - (c == 3 ? 1.0 : 0.0)));
  }
  CHECK(err < 1e-4);
}

TEST_CASE("runs are reproducible apart from wall time") {
  Scratch s;
  const std::vector<std::string> args = {"cross-validate", "--preset", "perturbed-circle", "--seed", "7", "--grids", "64,128",
                                         "--t-end", "0.002"};
  REQUIRE(invoke(args) == 0);
  auto m1 = manifest(s.root / "cross-validate");
  const std::string csv1 = slurp(s.root / "cross-validate" / "discrepancy.csv");
  REQUIRE(invoke(args) == 0);
  auto m2 = manifest(s.root / "cross-validate");
  m1.erase("wall_time_seconds");
  m2.erase("wall_time_seconds");
  CHECK(m1 == m2);
  CHECK(csv1 == slurp(s.root / "cross-validate" / "discrepancy.csv"));
}

TEST_CASE("library failures are recorded in the manifest") {
  Scratch s;
  const int code = invoke({"simulate-curve", "--preset", "helix", "--N", "512", "--dt", "1e-4", "--t-end", "0.1"});
  CHECK(code == static_cast<int>(ExitCode::cfl_violation));
  const auto m = manifest(s.root / "simulate-curve");
  CHECK(m.at("status") == "error");
  CHECK(m.at("error").at("code") == "cfl-violation");
  CHECK(m.at("error").at("exit_code") == code);

  CHECK(invoke({"frame", "--preset", "line"}) == static_cast<int>(ExitCode::vanishing_curvature));
}

TEST_CASE("curve CSV input round-trips through the tool") {
  Scratch s;
  REQUIRE(invoke({"simulate-curve", "--preset", "circle", "--N", "64", "--t-end", "0.001", "--slices", "1"}) == 0);
  const fs::path in = s.root / "simulate-curve" / "curve_000.csv";
  const fs::path copy = s.root / "input.csv";
  fs::copy_file(in, copy);
  CHECK(invoke({"frame", "--input", copy.string()}) == 0);
  CHECK(manifest(s.root / "frame").at("metrics").at("k1_max").get<double>() == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("exit codes cover every library error") {
  CHECK(exit_code(g2flow::ErrorCode::division_by_small) == ExitCode::division_by_small);
  CHECK(exit_code(g2flow::ErrorCode::degenerate_rotation) == ExitCode::degenerate_rotation);
  CHECK(exit_code(g2flow::ErrorCode::io) == ExitCode::io);
}

TEST_CASE("config file supplies defaults that flags override") {
  Scratch s;
  fs::create_directories(s.root);
  const fs::path file = s.root / "run.toml";
  std::ofstream(file) << "[simulate-curve]\npreset = \"circle\"\nN = 64\nt-end = 0.01\n";
  const RunConfig c = parse_config({"simulate-curve", "--config", file.string(), "--N", "72"});
  CHECK(c.preset == "circle");
  CHECK(c.n == 72);
  CHECK(*c.t_end == 0.01);
  CHECK(parse_code({"frame", "--config", (s.root / "missing.toml").string()}) == ExitCode::unreadable_path);
}
