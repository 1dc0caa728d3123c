#include "g2flow_cli/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>

#include <CLI11.hpp>

namespace g2flow::cli {

namespace {

const std::set<std::string> kCurvePresets = {"line", "circle", "helix", "perturbed-circle"};
const std::set<std::string> kNlssPresets = {"soliton", "plane-wave", "gaussian"};

void add_options(CLI::App& app, RunConfig& c) {
  app.add_option("--preset", c.preset, "Named initial condition");
  app.add_option("--input", c.input, "CSV initial data (curve: s,c1..c7; NLSS: s,re1,im1,re2,im2,re3,im3)");
  app.add_option("--boundary", c.boundary, "periodic or clamped (CSV curves)");
  app.add_option("--N", c.n, "Number of samples");
  app.add_option("--ds", c.ds, "Grid spacing (line, soliton and Gaussian presets)");
  app.add_option("--dt", c.dt, "Time step (default dt-factor * ds^2)");
  app.add_option("--dt-factor", c.dt_factor, "dt / ds^2 when --dt is absent");
  app.add_option("--t-end", c.t_end, "Final time");
  app.add_option("--slices", c.slices, "Output times after t = 0, evenly spaced");
  app.add_option("--output", c.output, "Output directory (relative paths resolve against $G2FLOW_OUTPUT_ROOT)");
  app.add_option("--scheme", c.scheme, "rk4 or midpoint");
  app.add_option("--projection", c.projection, "none or renormalize (sphere maps)");
  app.add_option("--variant", c.variant, "Matrix A: block-A, identity or a 7x7 CSV path");
  app.add_option("--system", c.system, "NLSS system: standard or variant");
  app.add_option("--stencil-order", c.stencil_order, "NLSS s-derivative order: 4 or 6");
  app.add_option("--seed", c.seed, "Seed of the perturbed-circle phases");
  app.add_option("--amplitude", c.amplitude, "Perturbation amplitude");
  app.add_option("--modes", c.modes, "Perturbation modes")->delimiter(',');
  app.add_flag("--quaternionic", c.quaternionic, "Perturb only the i, j, k coordinates");
  app.add_option("--helix-a", c.helix_a, "Helix radius");
  app.add_option("--helix-b", c.helix_b, "Helix pitch / (2 pi)");
  app.add_option("--omega", c.omega, "Great-circle frequency");
  app.add_option("--eta", c.eta, "Soliton amplitude");
  app.add_option("--wave-re", c.wave_re, "Plane-wave amplitude, real part");
  app.add_option("--wave-im", c.wave_im, "Plane-wave amplitude, imaginary part");
  app.add_option("--mu", c.mu, "Plane-wave wavenumber");
  app.add_option("--width", c.width, "Gaussian width");
  app.add_option("--k0", c.k0, "Gaussian carrier wavenumber");
  app.add_option("--grids", c.grids, "Cross-validation grid sizes")->delimiter(',');
  app.add_option("--kappa2-threshold", c.tol.kappa2_threshold, "kappa2 below this uses the degenerate frame branch");
  app.add_option("--k1-threshold", c.tol.k1_threshold, "Smallest admissible curvature");
  app.add_option("--speed-tolerance", c.tol.speed_tolerance, "Admissible | |gamma_s| - 1 |");
  app.add_option("--divisor-floor", c.tol.divisor_floor, "Smallest admissible |phi1|, |phi2| divisor");
  app.add_option("--cfl", c.tol.cfl, "Require dt <= cfl * ds^2");
  app.add_option("--blow-up-limit", c.tol.blow_up_limit, "Abort when a state entry exceeds this");
  app.add_option("--associative-tol", c.tol.associative_tol, "Tolerance of the associative-plane test");
}

void require(bool ok, ExitCode code, const std::string& message) {
  if (!ok) throw ConfigError(code, message);
}

bool positive(double x) { return x > 0.0 && std::isfinite(x); }

}  // namespace

RunConfig parse_config(int argc, const char* const* argv) {
  RunConfig config;
  CLI::App app{"Curve flows in Im(O), the S^6 Schrodinger map flow and the three-field NLSS", "g2flow"};
  app.set_config("--config", "", "TOML or INI file; options go under a [subcommand] section");
  app.require_subcommand(1, 1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");
  const std::map<std::string, std::string> about = {
      {"tables", "write the basis multiplication and cross-product tables"},
      {"frame", "build the G2 frame and Hasimoto fields with their residuals"},
      {"simulate-curve", "evolve a curve by the binormal flow"},
      {"simulate-u", "evolve a map into S^6 by the Schrodinger flow"},
      {"simulate-nlss", "evolve the three-field NLSS"},
      {"simulate-modified", "evolve a curve by the flow twisted by an orthogonal matrix"},
      {"cross-validate", "compare curve-derived fields with the NLSS under refinement"},
      {"surface", "fundamental forms and the associative-plane test of the swept surface"},
  };
  for (const auto& name : kSubcommands) {
    CLI::App* sub = app.add_subcommand(name, about.at(name));
    sub->fallthrough();
    add_options(*sub, config);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::CallForAllHelp&) {
    throw HelpRequested(app.help("", CLI::AppFormatMode::All));
  } catch (const CLI::ExtrasError& e) {
    throw ConfigError(ExitCode::unknown_flag, e.what());
  } catch (const CLI::RequiredError& e) {
    throw ConfigError(ExitCode::missing_required, e.what());
  } catch (const CLI::FileError& e) {
    throw ConfigError(ExitCode::unreadable_path, e.what());
  } catch (const CLI::ParseError& e) {
    throw ConfigError(ExitCode::invalid_value, e.what());
  }
  for (const auto* sub : app.get_subcommands()) {
    config.subcommand = sub->get_name();
  }
  validate(config);
  return config;
}

RunConfig parse_config(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.push_back("g2flow");
  for (const auto& a : args) argv.push_back(a.c_str());
  return parse_config(static_cast<int>(argv.size()), argv.data());
}

void validate(RunConfig& c) {
  const std::string& sub = c.subcommand;
  require(!sub.empty(), ExitCode::missing_required, "a subcommand is required");
  require(c.n >= 8, ExitCode::invalid_value, "--N must be at least 8 (got " + std::to_string(c.n) + ")");
  require(c.slices >= 1, ExitCode::invalid_value, "--slices must be at least 1");
  require(positive(c.dt_factor), ExitCode::invalid_value, "--dt-factor must be positive");
  if (c.dt) require(positive(*c.dt), ExitCode::invalid_value, "--dt must be positive");
  if (c.ds) require(positive(*c.ds), ExitCode::invalid_value, "--ds must be positive");
  if (!c.t_end) c.t_end = sub == "cross-validate" ? 0.05 : (sub == "tables" || sub == "frame") ? 0.0 : 0.1;
  require(*c.t_end >= 0.0 && std::isfinite(*c.t_end), ExitCode::invalid_value, "--t-end must be >= 0");
  if (sub.rfind("simulate", 0) == 0 || sub == "cross-validate") {
    require(*c.t_end > 0.0, ExitCode::invalid_value, "--t-end must be positive");
  }
  require(c.scheme == "rk4" || c.scheme == "midpoint", ExitCode::invalid_value, "--scheme must be rk4 or midpoint");
  require(c.projection == "none" || c.projection == "renormalize", ExitCode::invalid_value,
          "--projection must be none or renormalize");
  require(c.boundary == "periodic" || c.boundary == "clamped", ExitCode::invalid_value,
          "--boundary must be periodic or clamped");
  require(c.system == "standard" || c.system == "variant", ExitCode::invalid_value,
          "--system must be standard or variant");
  require(c.stencil_order == 4 || c.stencil_order == 6, ExitCode::invalid_value, "--stencil-order must be 4 or 6");
  require(c.amplitude >= 0.0 && std::isfinite(c.amplitude), ExitCode::invalid_value, "--amplitude must be >= 0");
  for (int m : c.modes) require(m >= 1, ExitCode::invalid_value, "--modes entries must be >= 1");
  for (auto g : c.grids) require(g >= 8, ExitCode::invalid_value, "--grids entries must be at least 8");
  require(positive(c.tol.cfl) && positive(c.tol.divisor_floor) && positive(c.tol.blow_up_limit) &&
              positive(c.tol.speed_tolerance) && positive(c.tol.k1_threshold) && positive(c.tol.kappa2_threshold) &&
              positive(c.tol.associative_tol),
          ExitCode::invalid_value, "tolerances must be positive");

  if (sub == "tables") return;
  require(!c.preset.empty() || !c.input.empty(), ExitCode::missing_required, sub + " needs --preset or --input");
  require(c.preset.empty() || c.input.empty(), ExitCode::invalid_value, "--preset and --input are exclusive");
  if (!c.input.empty()) {
    std::ifstream probe(c.input);
    require(static_cast<bool>(probe), ExitCode::unreadable_path, "cannot read " + c.input.string());
  }
  if (!c.preset.empty()) {
    const bool curve = kCurvePresets.count(c.preset) > 0;
    bool ok = curve;
    if (sub == "simulate-u") ok = curve || c.preset == "great-circle";
    if (sub == "simulate-nlss") ok = curve || kNlssPresets.count(c.preset) > 0;
    require(ok, ExitCode::invalid_value, "preset '" + c.preset + "' is not available for " + sub);
    if (c.ds) {
      require(c.preset == "line" || c.preset == "soliton" || c.preset == "gaussian", ExitCode::invalid_value,
              "--ds is fixed by the '" + c.preset + "' preset");
    }
  }
  if (sub == "simulate-modified" && c.variant != "block-A" && c.variant != "identity") {
    std::ifstream probe(c.variant);
    require(static_cast<bool>(probe), ExitCode::unreadable_path, "cannot read variant matrix " + c.variant);
  }
}

std::filesystem::path resolve_output(const RunConfig& c) {
  std::filesystem::path root = "g2flow-out";
  if (const char* env = std::getenv(kOutputRootEnv); env != nullptr && *env != '\0') root = env;
  if (c.output.empty()) return root / (c.subcommand.empty() ? std::string("unknown") : c.subcommand);
  return c.output.is_absolute() ? c.output : root / c.output;
}

nlohmann::json to_json(const RunConfig& c) {
  nlohmann::json j;
  j["subcommand"] = c.subcommand;
  j["preset"] = c.preset;
  j["input"] = c.input.string();
  j["boundary"] = c.boundary;
  j["N"] = c.n;
  j["ds"] = c.ds ? nlohmann::json(*c.ds) : nlohmann::json(nullptr);
  j["dt"] = c.dt ? nlohmann::json(*c.dt) : nlohmann::json(nullptr);
  j["dt_factor"] = c.dt_factor;
  j["t_end"] = c.t_end ? nlohmann::json(*c.t_end) : nlohmann::json(nullptr);
  j["slices"] = c.slices;
  j["output"] = resolve_output(c).string();
  j["scheme"] = c.scheme;
  j["projection"] = c.projection;
  j["variant"] = c.variant;
  j["system"] = c.system;
  j["stencil_order"] = c.stencil_order;
  j["seed"] = c.seed;
  j["amplitude"] = c.amplitude;
  j["modes"] = c.modes;
  j["quaternionic"] = c.quaternionic;
  j["helix_a"] = c.helix_a;
  j["helix_b"] = c.helix_b;
  j["omega"] = c.omega;
  j["eta"] = c.eta;
  j["wave_re"] = c.wave_re;
  j["wave_im"] = c.wave_im;
  j["mu"] = c.mu;
  j["width"] = c.width;
  j["k0"] = c.k0;
  j["grids"] = c.grids;
  return j;
}

}  // namespace g2flow::cli
