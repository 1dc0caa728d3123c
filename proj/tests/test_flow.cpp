#include <doctest.h>

#include <cmath>
#include <functional>

#include "g2flow/error.hpp"
#include "g2flow/flow.hpp"
#include "g2flow/presets.hpp"

using namespace g2flow;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::io;
}

}  // namespace

TEST_CASE("binormal velocity of the unit circle is the unit k vector") {
  const auto v = rhs_binormal(preset_circle(128));
  for (const auto& x : v) {
    CHECK(x.c[2] == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(std::abs(x.c[0]) + std::abs(x.c[1]) + std::abs(x.c[3]) < 1e-12);
  }
}

TEST_CASE("binormal velocity is the cross product of the derivatives") {
  const CurveState c = preset_perturbed_circle(512);
  const auto v = rhs_binormal(c);
  const double h = c.ds;
  const std::size_t n = c.size();
  for (std::size_t k = 2; k + 2 < n; k += 31) {
    const ImOctonion d1 = (c.samples[k + 1] - c.samples[k - 1]) / (2.0 * h);
    const ImOctonion d2 = (c.samples[k + 1] - 2.0 * c.samples[k] + c.samples[k - 1]) / (h * h);
    const ImOctonion w = cross(d1, d2);
    for (std::size_t a = 0; a < 7; ++a) CHECK(v[k].c[a] == doctest::Approx(w.c[a]).epsilon(1e-3).scale(1.0));
  }
}

TEST_CASE("helix translates rigidly along its axis") {
  const CurveState c = preset_helix(128);
  FlowConfig cfg;
  cfg.dt = 0.1 * c.ds * c.ds;
  cfg.t_end = 0.05;
  const auto traj = evolve(c, cfg);
  const ConservationReport r = conservation_report(traj);
  CHECK(r.arclength_drift_max < 1e-10);
  CHECK(r.energy_drift_max < 1e-8);
}

TEST_CASE("tangent map is a unit sphere map and equals the curve tangent") {
  const CurveState c = preset_perturbed_circle(128);
  const SphereMapState u = tangent_map(c);
  for (const auto& x : u.samples) CHECK(norm(x) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("Schrodinger flow velocity is tangent to the sphere") {
  SphereMapState u = tangent_map(preset_perturbed_circle(128));
  for (auto& x : u.samples) x = x / norm(x);
  const auto v = rhs_schrodinger_s6(u);
  for (std::size_t k = 0; k < u.size(); ++k) CHECK(std::abs(dot(v[k], u.samples[k])) < 1e-10);
}

TEST_CASE("identity variant reproduces the binormal flow") {
  const CurveState c = preset_perturbed_circle(128);
  const auto a = rhs_binormal(c);
  const auto b = rhs_modified(c, Mat7::Identity());
  for (std::size_t k = 0; k < a.size(); ++k) CHECK(a[k] == b[k]);
}

TEST_CASE("step planning and its guards") {
  const StepPlan p = plan_steps(1.0, 0.3);
  CHECK(p.steps == 4);
  CHECK(p.dt * 4.0 == doctest::Approx(1.0));
  const CurveState c = preset_circle(64);
  FlowConfig cfg;
  cfg.t_end = 0.1;
  cfg.dt = c.ds * c.ds;
  CHECK(code_of([&] { evolve(c, cfg); }) == ErrorCode::cfl_violation);
  Mat7 skew = Mat7::Identity();
  skew(0, 1) = 0.5;
  CHECK(code_of([&] { require_orthogonal(skew); }) == ErrorCode::invalid_input);
  SphereMapState off = preset_great_circle(64);
  off.samples[3] = off.samples[3] * 1.1;
  cfg.dt = 0.1 * off.ds * off.ds;
  CHECK(code_of([&] { evolve(off, cfg); }) == ErrorCode::invalid_input);
}

TEST_CASE("evolution is deterministic") {
  const CurveState c = preset_perturbed_circle(64);
  FlowConfig cfg;
  cfg.dt = 0.1 * c.ds * c.ds;
  cfg.t_end = 0.01;
  const auto a = evolve(c, cfg), b = evolve(c, cfg);
  CHECK(a.back().samples == b.back().samples);
}

TEST_CASE("renormalizing projection keeps a sphere map on the sphere") {
  SphereMapState u = tangent_map(preset_perturbed_circle(64));
  for (auto& x : u.samples) x = x / norm(x);
  FlowConfig cfg;
  cfg.dt = 0.1 * u.ds * u.ds;
  cfg.t_end = 0.01;
  cfg.projection = Projection::renormalize;
  const auto traj = evolve(u, cfg);
  for (const auto& x : traj.back().samples) CHECK(norm(x) == doctest::Approx(1.0).epsilon(1e-14));
}
