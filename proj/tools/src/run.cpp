#include "g2flow_cli/run.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>

#include "g2flow/csv.hpp"
#include "g2flow/flow.hpp"
#include "g2flow/frame.hpp"
#include "g2flow/nlss.hpp"
#include "g2flow/octonion.hpp"
#include "g2flow/presets.hpp"
#include "g2flow/surface.hpp"
#include "g2flow/version.hpp"

namespace g2flow::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const ImOctonion kFallbackSeed = ImOctonion::unit(3);

/// NaN and infinities have no JSON literal; they are written as null.
json num(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

FrameOptions frame_options(const RunConfig& c) {
  return FrameOptions{c.tol.kappa2_threshold, c.tol.k1_threshold, c.tol.speed_tolerance};
}

NlssOptions nlss_options(const RunConfig& c) { return NlssOptions{c.tol.divisor_floor, c.stencil_order}; }

Boundary boundary_of(const RunConfig& c) { return c.boundary == "clamped" ? Boundary::clamped : Boundary::periodic; }

CurveState curve_preset(const RunConfig& c, std::size_t n) {
  if (c.preset == "line") return preset_line(n, c.ds ? *c.ds * static_cast<double>(n - 1) : 1.0);
  if (c.preset == "circle") return preset_circle(n);
  if (c.preset == "helix") return preset_helix(n, c.helix_a, c.helix_b);
  if (c.preset == "perturbed-circle") {
    PerturbedCircleParams p;
    p.amplitude = c.amplitude;
    p.seed = c.seed;
    p.modes = c.modes;
    p.quaternionic_only = c.quaternionic;
    return preset_perturbed_circle(n, p);
  }
  throw Error(ErrorCode::invalid_input, "'" + c.preset + "' is not a curve preset");
}

bool is_curve_source(const RunConfig& c) {
  return c.preset == "line" || c.preset == "circle" || c.preset == "helix" || c.preset == "perturbed-circle";
}

CurveState load_curve(const RunConfig& c) {
  if (!c.input.empty()) return curve_from_table(read_csv(c.input), boundary_of(c));
  return curve_preset(c, static_cast<std::size_t>(c.n));
}

double step_for(const RunConfig& c, double ds) { return c.dt ? *c.dt : c.dt_factor * ds * ds; }

std::vector<double> output_times(const RunConfig& c) {
  std::vector<double> t{0.0};
  for (std::int64_t j = 1; j <= c.slices; ++j) t.push_back(*c.t_end * static_cast<double>(j) / static_cast<double>(c.slices));
  return t;
}

std::string slice_name(const std::string& stem, std::size_t j) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s_%03zu.csv", stem.c_str(), j);
  return buf;
}

void emit(RunResult& r, const fs::path& dir, const std::string& name, const CsvTable& table, double time) {
  write_csv(dir / name, table);
  json entry{{"file", name}};
  entry["time"] = num(time);
  r.outputs.push_back(entry);
}

void write_text_table(const fs::path& path, const std::vector<std::vector<std::string>>& rows) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::io, "cannot write " + path.string());
  out << "x";
  for (std::size_t b = 1; b < kOctDim; ++b) out << ',' << kBasisNames[b];
  out << '\n';
  for (std::size_t a = 0; a < rows.size(); ++a) {
    out << kBasisNames[a + 1];
    for (const auto& cell : rows[a]) out << ',' << cell;
    out << '\n';
  }
}

FlowConfig flow_config(const RunConfig& c, double ds) {
  FlowConfig f;
  f.dt = step_for(c, ds);
  f.t_end = *c.t_end;
  f.scheme = c.scheme == "midpoint" ? Scheme::midpoint : Scheme::rk4;
  f.projection = c.projection == "renormalize" ? Projection::renormalize : Projection::none;
  f.cfl = c.tol.cfl;
  f.output_times = output_times(c);
  f.blow_up_limit = c.tol.blow_up_limit;
  return f;
}

Mat7 variant_matrix(const RunConfig& c) {
  if (c.variant == "block-A") return block_a_matrix();
  if (c.variant == "identity") return Mat7::Identity();
  return matrix_from_csv(c.variant);
}

void conservation_metrics(RunResult& r, const ConservationReport& rep, const fs::path& dir) {
  CsvTable t{{"time", "arclength", "arclength_drift", "speed_deviation", "energy", "energy_drift"}, {}};
  for (const auto& s : rep.samples) {
    t.rows.push_back({s.time, s.arclength, s.arclength_drift, s.speed_deviation, s.energy, s.energy_drift});
  }
  emit(r, dir, "conservation.csv", t, std::numeric_limits<double>::quiet_NaN());
  r.metrics["arclength_drift_max"] = num(rep.arclength_drift_max);
  r.metrics["speed_deviation_max"] = num(rep.speed_deviation_max);
  r.metrics["energy_drift_max"] = num(rep.energy_drift_max);
}

RunResult run_tables(const fs::path& dir, std::ostream& log) {
  RunResult r;
  const auto mul = multiplication_table_symbols();
  const auto crs = cross_table_symbols();
  write_text_table(dir / "multiplication_table.csv", mul);
  write_text_table(dir / "cross_table.csv", crs);
  r.outputs.push_back({{"file", "multiplication_table.csv"}, {"time", nullptr}});
  r.outputs.push_back({{"file", "cross_table.csv"}, {"time", nullptr}});
  bool antisymmetric = true;
  bool imaginary = true;
  for (std::size_t a = 0; a < kImDim; ++a) {
    for (std::size_t b = 0; b < kImDim; ++b) {
      const SignedIndex s = kCrossTable[a][b];
      const SignedIndex t = kCrossTable[b][a];
      if (s.sign != -t.sign || (s.sign != 0 && s.index != t.index)) antisymmetric = false;
      const Octonion x = cross_by_definition(Octonion::unit(a + 1), Octonion::unit(b + 1));
      if (x.c[0] != 0.0) imaginary = false;
    }
  }
  r.metrics["cross_antisymmetric"] = antisymmetric;
  r.metrics["cross_imaginary"] = imaginary;
  log << "e_a * e_b";
  for (std::size_t b = 1; b < kOctDim; ++b) log << '\t' << kBasisNames[b];
  log << '\n';
  for (std::size_t a = 0; a < mul.size(); ++a) {
    log << kBasisNames[a + 1];
    for (const auto& cell : mul[a]) log << '\t' << cell;
    log << '\n';
  }
  return r;
}

RunResult run_frame(const RunConfig& c, const fs::path& dir) {
  RunResult r;
  const CurveState curve = load_curve(c);
  const G2FrameField frame = build_g2_frame(curve, kFallbackSeed, frame_options(c));
  const ComplexFrameField cframe = complexify_frame(frame);
  const HasimotoFields fields = hasimoto_fields(frame, cframe);
  CsvTable t{{"s", "k1", "kappa2", "rho1", "rho2", "rho3", "alpha", "beta1", "beta2", "degenerate"}, {}};
  std::size_t degenerate = 0;
  for (std::size_t n = 0; n < frame.size(); ++n) {
    t.rows.push_back({static_cast<double>(n) * frame.ds, frame.k1[n], frame.kappa2[n], frame.rho1[n], frame.rho2[n],
                      frame.rho3[n], frame.alpha[n], frame.beta1[n], frame.beta2[n],
                      static_cast<double>(frame.degenerate[n])});
    degenerate += frame.degenerate[n];
  }
  emit(r, dir, "invariants.csv", t, curve.time);
  emit(r, dir, "fields.csv", fields_table(fields), curve.time);
  const FrenetResidual fr = frenet_residual(frame);
  r.metrics["residual_max"] = num(fr.residual_max);
  r.metrics["antisymmetry_max"] = num(fr.antisymmetry_max);
  r.metrics["rho_constraint_max"] = num(fr.rho_constraint_max);
  r.metrics["beta_constraint_max"] = num(fr.beta_constraint_max);
  r.metrics["gram_max"] = num(fr.gram_max);
  r.metrics["closure_max"] = num(fr.closure_max);
  r.metrics["degenerate_samples"] = degenerate;
  r.metrics["k1_min"] = num(*std::min_element(frame.k1.begin(), frame.k1.end()));
  r.metrics["k1_max"] = num(*std::max_element(frame.k1.begin(), frame.k1.end()));
  if (curve.boundary == Boundary::periodic) {
    const ComplexFrenetResidual cr = complex_frenet_residual(cframe, fields);
    r.metrics["complex_residual_max"] = num(cr.residual_max);
    r.metrics["complex_shape_max"] = num(cr.shape_max);
    r.metrics["complex_relations_max"] = num(cr.relations_max);
    r.metrics["complex_rqp_max"] = num(cr.rqp_max);
    r.metrics["complex_table_max"] = num(cr.table_max);
  }
  if (degenerate > 0) r.warnings.push_back("kappa2 below threshold at " + std::to_string(degenerate) + " samples");
  return r;
}

RunResult run_simulate_curve(const RunConfig& c, const fs::path& dir, bool modified) {
  RunResult r;
  const CurveState curve = load_curve(c);
  FlowConfig config = flow_config(c, curve.ds);
  if (modified) {
    const Mat7 a = variant_matrix(c);
    require_orthogonal(a);
    config.variant_a = a;
    const auto v0 = rhs_binormal(curve);
    const auto v1 = rhs_modified(curve, a);
    double diff = 0.0;
    for (std::size_t n = 0; n < v0.size(); ++n) diff = std::max(diff, norm(v0[n] - v1[n]));
    r.metrics["velocity_difference_from_binormal"] = num(diff);
    r.metrics["variant_g2_defect"] = num(g2_automorphism_defect(a));
  }
  const auto traj = evolve(curve, config);
  for (std::size_t j = 0; j < traj.size(); ++j) emit(r, dir, slice_name("curve", j), curve_table(traj[j]), traj[j].time);
  conservation_metrics(r, conservation_report(traj), dir);
  r.metrics["dt"] = num(config.dt);
  r.metrics["steps"] = plan_steps(config.t_end, config.dt).steps;
  return r;
}

RunResult run_simulate_u(const RunConfig& c, const fs::path& dir) {
  RunResult r;
  SphereMapState u;
  if (c.preset == "great-circle") {
    u = preset_great_circle(static_cast<std::size_t>(c.n), c.omega);
  } else {
    u = tangent_map(load_curve(c));
    for (auto& x : u.samples) x = x / norm(x);
  }
  const FlowConfig config = flow_config(c, u.ds);
  const auto v = rhs_schrodinger_s6(u);
  double tangency = 0.0;
  for (std::size_t n = 0; n < v.size(); ++n) tangency = std::max(tangency, std::abs(dot(v[n], u.samples[n])));
  const auto traj = evolve(u, config);
  for (std::size_t j = 0; j < traj.size(); ++j) emit(r, dir, slice_name("u", j), sphere_table(traj[j]), traj[j].time);
  conservation_metrics(r, conservation_report(traj), dir);
  double moved = 0.0;
  for (std::size_t n = 0; n < u.size(); ++n) moved = std::max(moved, norm(traj.back().samples[n] - u.samples[n]));
  r.metrics["final_minus_initial_max"] = num(moved);
  r.metrics["tangency_max"] = num(tangency);
  r.metrics["dt"] = num(config.dt);
  return r;
}

NlssState load_nlss(const RunConfig& c) {
  const auto n = static_cast<std::size_t>(c.n);
  if (!c.input.empty()) {
    NlssState st = nlss_from_table(read_csv(c.input));
    st.fields.boundary = boundary_of(c);
    return st;
  }
  const double half = c.ds ? 0.5 * *c.ds * static_cast<double>(n) : 20.0;
  if (c.preset == "soliton") return preset_soliton(n, c.eta, -half, half);
  if (c.preset == "plane-wave") return preset_plane_wave(n, Complex(c.wave_re, c.wave_im), c.mu);
  if (c.preset == "gaussian") return preset_gaussian(n, 1.0, c.width, c.k0, -half, half);
  const CurveState curve = curve_preset(c, n);
  return to_nlss_state(hasimoto_from_curve(curve, kFallbackSeed, frame_options(c)));
}

RunResult run_simulate_nlss(const RunConfig& c, const fs::path& dir) {
  RunResult r;
  const NlssState st = load_nlss(c);
  NlssConfig config;
  config.dt = step_for(c, st.fields.ds);
  config.t_end = *c.t_end;
  config.cfl = c.tol.cfl;
  config.output_times = output_times(c);
  config.system = c.system == "variant" ? NlssSystem::variant : NlssSystem::standard;
  config.blow_up_limit = c.tol.blow_up_limit;
  config.options = nlss_options(c);

  const NlssDerivative d0 =
      config.system == NlssSystem::variant ? nlss_variant_rhs(st, config.options) : nlss_rhs(st, config.options);
  r.metrics["regime"] = d0.regime == NlssRegime::reduced ? "reduced" : "full";
  if (c.preset == "soliton" || c.preset == "plane-wave") {
    // Exact i phi1_t: eta^2 phi1 for the soliton, (-mu^2 + 2|c|^2) phi1 for the plane wave.
    const double lambda = c.preset == "soliton" ? c.eta * c.eta : -c.mu * c.mu + 2.0 * std::norm(Complex(c.wave_re, c.wave_im));
    double res = 0.0;
    for (std::size_t k = 0; k < st.size(); ++k) {
      res = std::max(res, std::abs(Complex(0.0, 1.0) * d0.d1[k] - lambda * st.fields.phi1[k]));
    }
    r.metrics["rhs_residual_t0"] = num(res);
  }
  const NlssTrajectory traj = evolve_nlss(st, config);
  for (std::size_t j = 0; j < traj.states.size(); ++j) {
    emit(r, dir, slice_name("fields", j), fields_table(traj.states[j].fields), traj.states[j].time);
  }
  const NlssState& last = traj.states.back();
  double profile = 0.0;
  for (std::size_t k = 0; k < st.size(); ++k) {
    profile = std::max(profile, std::abs(std::abs(last.fields.phi1[k]) - std::abs(st.fields.phi1[k])));
  }
  const double m0 = mass(st);
  r.metrics["mass_initial"] = num(m0);
  r.metrics["mass_drift"] = num(m0 > 0.0 ? std::abs(mass(last) - m0) / m0 : std::abs(mass(last)));
  r.metrics["phi1_magnitude_change_max"] = num(profile);
  r.metrics["integrand_mean_max"] = num(traj.integrand_mean_max);
  r.metrics["final_twist"] = {num(last.fields.twist[0]), num(last.fields.twist[1]), num(last.fields.twist[2])};
  r.metrics["dt"] = num(config.dt);
  r.warnings.insert(r.warnings.end(), traj.warnings.begin(), traj.warnings.end());
  return r;
}

RunResult run_cross_validate(const RunConfig& c, const fs::path& dir) {
  RunResult r;
  if (!is_curve_source(c)) throw Error(ErrorCode::invalid_input, "cross-validate needs a curve preset (grids are resampled)");
  CrossValidationOptions o;
  o.dt_factor = c.dt_factor;
  o.slices = static_cast<std::size_t>(c.slices);
  o.fallback_seed = kFallbackSeed;
  o.options = nlss_options(c);
  std::vector<std::size_t> grids;
  for (auto g : c.grids) grids.push_back(static_cast<std::size_t>(g));
  const auto make = [&c](std::size_t n) { return curve_preset(c, n); };
  const CrossValidationReport rep = cross_validate(make, *c.t_end, grids, o);
  CsvTable t{{"N", "ds", "dt", "mag1", "mag2", "mag3", "phase1", "phase2", "phase3", "integrand_mean_max"}, {}};
  json rows = json::array();
  for (const auto& g : rep.grids) {
    t.rows.push_back({static_cast<double>(g.n), g.ds, g.dt, g.magnitude_discrepancy[0], g.magnitude_discrepancy[1],
                      g.magnitude_discrepancy[2], g.phase_discrepancy[0], g.phase_discrepancy[1], g.phase_discrepancy[2],
                      g.integrand_mean_max});
    rows.push_back({{"N", g.n},
                    {"regime", g.regime == NlssRegime::reduced ? "reduced" : "full"},
                    {"magnitude_max", num(g.magnitude_max)},
                    {"phase_max", num(g.phase_max)}});
  }
  emit(r, dir, "discrepancy.csv", t, *c.t_end);
  r.metrics["grids"] = rows;
  json mo = json::array(), po = json::array();
  for (double x : rep.magnitude_order) mo.push_back(num(x));
  for (double x : rep.phase_order) po.push_back(num(x));
  r.metrics["magnitude_order"] = mo;
  r.metrics["phase_order"] = po;
  r.metrics["finest_magnitude_discrepancy"] = num(rep.grids.back().magnitude_max);
  r.warnings.insert(r.warnings.end(), rep.warnings.begin(), rep.warnings.end());
  return r;
}

RunResult run_surface(const RunConfig& c, const fs::path& dir) {
  RunResult r;
  const CurveState curve = load_curve(c);
  std::vector<CurveState> traj{curve};
  if (*c.t_end > 0.0) traj = evolve(curve, flow_config(c, curve.ds));
  const SurfaceOptions so{c.tol.divisor_floor};
  double normal_max = 0.0, rotation_norm_defect = 0.0, g_tt_min = std::numeric_limits<double>::infinity();
  std::size_t not_applicable = 0;
  bool rotated_any = false;
  for (std::size_t j = 0; j < traj.size(); ++j) {
    const HasimotoFields f = hasimoto_from_curve(traj[j], kFallbackSeed, frame_options(c));
    const FirstFundamentalForm g = first_fundamental_form(f, so);
    g_tt_min = std::min(g_tt_min, *std::min_element(g.g_tt.begin(), g.g_tt.end()));
    const SecondFundamentalForm h = second_fundamental_form(f, so);
    const bool phi2_zero = std::all_of(f.phi2.begin(), f.phi2.end(), [](Complex z) { return z == Complex{}; });
    SecondFundamentalForm rot;
    if (!phi2_zero) {
      rot = rotate_frame(h, f, so);
      rotated_any = true;
    }
    for (std::size_t n = 0; n < h.size(); ++n) {
      not_applicable += h.not_applicable[n];
      if (h.not_applicable[n]) continue;
      for (std::size_t a = 1; a < 5; ++a) {
        for (double x : h.h[n][a]) normal_max = std::max(normal_max, std::abs(x));
      }
      if (rot.rotated) {
        const double before = squared_norm(h, n);
        rotation_norm_defect = std::max(rotation_norm_defect, std::abs(squared_norm(rot, n) - before));
      }
    }
    emit(r, dir, slice_name("surface", j), surface_table(h, rot, f.ds), traj[j].time);
  }
  const AssociativePlaneReport plane = associative_plane_check(traj, c.tol.associative_tol);
  r.metrics["h_alpha4to7_max"] = num(normal_max);
  r.metrics["rotation_applied"] = rotated_any;
  r.metrics["rotation_norm_defect"] = num(rotation_norm_defect);
  r.metrics["not_applicable_samples"] = not_applicable;
  r.metrics["g_tt_min"] = num(g_tt_min);
  r.metrics["plane_points"] = plane.points;
  r.metrics["plane_insufficient_data"] = plane.insufficient_data;
  r.metrics["plane_residual"] = num(plane.residual);
  r.metrics["plane_associativity_defect"] = num(plane.associativity_defect);
  r.metrics["plane_associative"] = plane.associative;
  if (!rotated_any) r.warnings.push_back("phi2 vanishes identically; the (E4, E7) rotation is not applicable");
  return r;
}

void write_manifest(const fs::path& dir, const json& manifest) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  std::ofstream out(dir / "manifest.json");
  if (!out) throw Error(ErrorCode::io, "cannot write manifest in " + dir.string());
  out << manifest.dump(2) << '\n';
}

}  // namespace

ExitCode exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_input: return ExitCode::invalid_input;
    case ErrorCode::vanishing_curvature: return ExitCode::vanishing_curvature;
    case ErrorCode::non_unit_speed: return ExitCode::non_unit_speed;
    case ErrorCode::division_by_small: return ExitCode::division_by_small;
    case ErrorCode::blow_up: return ExitCode::blow_up;
    case ErrorCode::degenerate_rotation: return ExitCode::degenerate_rotation;
    case ErrorCode::cfl_violation: return ExitCode::cfl_violation;
    case ErrorCode::io: return ExitCode::io;
  }
  return ExitCode::internal;
}

json tolerances_json(const RunConfig& c) {
  return {{"kappa2_threshold", c.tol.kappa2_threshold},
          {"k1_threshold", c.tol.k1_threshold},
          {"speed_tolerance", c.tol.speed_tolerance},
          {"divisor_floor", c.tol.divisor_floor},
          {"cfl", c.tol.cfl},
          {"blow_up_limit", c.tol.blow_up_limit},
          {"associative_tol", c.tol.associative_tol},
          {"orthogonality_tol", 1e-10},
          {"reparameterize_speed_tolerance", 0.5},
          {"integrand_mean_warning", 1e-10}};
}

RunResult run(const RunConfig& c, const fs::path& dir, std::ostream& log) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::io, "cannot create " + dir.string() + ": " + ec.message());
  if (c.subcommand == "tables") return run_tables(dir, log);
  if (c.subcommand == "frame") return run_frame(c, dir);
  if (c.subcommand == "simulate-curve") return run_simulate_curve(c, dir, false);
  if (c.subcommand == "simulate-modified") return run_simulate_curve(c, dir, true);
  if (c.subcommand == "simulate-u") return run_simulate_u(c, dir);
  if (c.subcommand == "simulate-nlss") return run_simulate_nlss(c, dir);
  if (c.subcommand == "cross-validate") return run_cross_validate(c, dir);
  if (c.subcommand == "surface") return run_surface(c, dir);
  throw Error(ErrorCode::invalid_input, "unknown subcommand " + c.subcommand);
}

int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig config;
  try {
    config = parse_config(argc, argv);
  } catch (const HelpRequested& h) {
    out << h.what();
    return 0;
  } catch (const ConfigError& e) {
    err << "g2flow: " << e.what() << '\n';
    return static_cast<int>(e.code());
  }

  const fs::path dir = resolve_output(config);
  const auto start = std::chrono::steady_clock::now();
  json manifest;
  manifest["schema_version"] = kSchemaVersion;
  manifest["tool"] = "g2flow";
  manifest["version"] = kVersion;
  manifest["config"] = to_json(config);
  manifest["tolerances"] = tolerances_json(config);
  ExitCode status = ExitCode::ok;
  try {
    RunResult r = run(config, dir, out);
    manifest["status"] = "ok";
    manifest["metrics"] = r.metrics;
    manifest["outputs"] = r.outputs;
    manifest["warnings"] = r.warnings;
    manifest["error"] = nullptr;
    for (const auto& w : r.warnings) err << "g2flow: warning: " << w << '\n';
  } catch (const Error& e) {
    status = exit_code(e.code());
    manifest["status"] = "error";
    manifest["error"] = {{"code", std::string(to_string(e.code()))}, {"message", e.what()}, {"exit_code", static_cast<int>(status)}};
    err << "g2flow: " << to_string(e.code()) << ": " << e.what() << '\n';
  } catch (const std::exception& e) {
    status = ExitCode::internal;
    manifest["status"] = "error";
    manifest["error"] = {{"code", "internal"}, {"message", e.what()}, {"exit_code", static_cast<int>(status)}};
    err << "g2flow: internal error: " << e.what() << '\n';
  }
  manifest["wall_time_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  try {
    write_manifest(dir, manifest);
  } catch (const Error& e) {
    err << "g2flow: " << e.what() << '\n';
    if (status == ExitCode::ok) status = ExitCode::io;
  }
  if (status == ExitCode::ok) out << "g2flow: wrote " << (dir / "manifest.json").string() << '\n';
  return static_cast<int>(status);
}

}  // namespace g2flow::cli
