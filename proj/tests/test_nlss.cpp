#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <functional>

#include "g2flow/csv.hpp"
#include "g2flow/error.hpp"
#include "g2flow/nlss.hpp"
#include "g2flow/presets.hpp"

using namespace g2flow;

namespace {

const Complex kI{0.0, 1.0};

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

TEST_CASE("plane wave evolves by a pure phase") {
  const Complex c{0.8, 0.3};
  const double mu = 2.0;
  const NlssState st = preset_plane_wave(128, c, mu);
  const NlssDerivative d = nlss_rhs(st);
  CHECK(d.regime == NlssRegime::reduced);
  const double lambda = -mu * mu + 2.0 * std::norm(c);
  for (std::size_t k = 0; k < st.size(); ++k) {
    CHECK(std::abs(kI * d.d1[k] - lambda * st.fields.phi1[k]) < 1e-8);
  }
  NlssConfig cfg;
  cfg.dt = 0.1 * st.fields.ds * st.fields.ds;
  cfg.t_end = 0.2;
  const NlssTrajectory traj = evolve_nlss(st, cfg);
  for (std::size_t k = 0; k < st.size(); ++k) {
    CHECK(std::abs(traj.states.back().fields.phi1[k]) == doctest::Approx(std::abs(c)).epsilon(1e-6));
  }
}

TEST_CASE("zero data stays zero") {
  NlssState st = preset_plane_wave(64, Complex{}, 1.0);
  NlssConfig cfg;
  cfg.dt = 0.1 * st.fields.ds * st.fields.ds;
  cfg.t_end = 0.05;
  const NlssTrajectory traj = evolve_nlss(st, cfg);
  for (const auto& z : traj.states.back().fields.phi1) CHECK(z == Complex{});
}

TEST_CASE("soliton preset is eta sech(eta s)") {
  const NlssState st = preset_soliton(256, 1.5, -10.0, 10.0);
  for (std::size_t k = 0; k < st.size(); ++k) {
    const double s = -10.0 + static_cast<double>(k) * st.fields.ds;
    CHECK(st.fields.phi1[k].real() == doctest::Approx(1.5 / std::cosh(1.5 * s)).epsilon(1e-14));
  }
  CHECK(mass(st) == doctest::Approx(3.0).epsilon(1e-8));
}

TEST_CASE("sixth-order stencil beats the fourth-order one on the soliton") {
  const NlssState st = preset_soliton(512, 1.0, -20.0, 20.0);
  auto residual = [&](int order) {
    NlssOptions o;
    o.stencil_order = order;
    const NlssDerivative d = nlss_rhs(st, o);
    double r = 0.0;
    for (std::size_t k = 0; k < st.size(); ++k) r = std::max(r, std::abs(kI * d.d1[k] - st.fields.phi1[k]));
    return r;
  };
  CHECK(residual(6) < residual(4));
  CHECK(code_of([&] { residual(5); }) == ErrorCode::invalid_input);
}

TEST_CASE("curve-derived data is in the full regime and psi route agrees for phi1") {
  const HasimotoFields f = hasimoto_from_curve(preset_perturbed_circle(256), ImOctonion::unit(3));
  const NlssState st = to_nlss_state(f);
  CHECK(classify_regime(st.fields, {}) == NlssRegime::full);
  const NlssDerivative d = nlss_rhs(st);
  const auto psi = psi_route_rhs(st);
  for (std::size_t k = 0; k < st.size(); ++k) CHECK(std::abs(psi[0][k] - d.d1[k]) < 1e-9);
  const double sum = d.twist_rate[0] * 3.0 + d.twist_rate[1] * 2.0 + d.twist_rate[2];
  CHECK(std::abs(sum) < 1e-10);
}

TEST_CASE("frame normalization round trip") {
  const HasimotoFields f = hasimoto_from_curve(preset_perturbed_circle(64), ImOctonion::unit(3));
  const HasimotoFields back = to_frame_fields(to_nlss_state(f));
  for (std::size_t k = 0; k < f.size(); ++k) {
    CHECK(std::abs(back.phi1[k] - f.phi1[k]) < 1e-15);
    CHECK(back.phi2[k] == f.phi2[k]);
  }
}

TEST_CASE("a vanishing phi2 sample is a division by a small number") {
  HasimotoFields f = hasimoto_from_curve(preset_perturbed_circle(64), ImOctonion::unit(3));
  f.phi2[10] = Complex{1e-12, 0.0};
  CHECK(code_of([&] { nlss_rhs(to_nlss_state(f)); }) == ErrorCode::division_by_small);
}

TEST_CASE("cross validation converges on a perturbed circle") {
  const auto make = [](std::size_t n) { return preset_perturbed_circle(n); };
  const CrossValidationReport r = cross_validate(make, 0.01, {64, 128});
  REQUIRE(r.magnitude_order.size() == 1);
  CHECK(r.magnitude_order[0] > 1.0);
  CHECK(r.grids[1].magnitude_max < r.grids[0].magnitude_max);
}

TEST_CASE("field CSV round trip") {
  const NlssState st = preset_gaussian(32, 1.0, 1.0, 0.5);
  const auto path = std::filesystem::temp_directory_path() / "g2flow_fields_roundtrip.csv";
  write_csv(path, fields_table(st.fields));
  const NlssState back = nlss_from_table(read_csv(path), st.fields.twist);
  CHECK(back.fields.ds == doctest::Approx(st.fields.ds).epsilon(1e-14));
  for (std::size_t k = 0; k < st.size(); ++k) CHECK(back.fields.phi1[k] == st.fields.phi1[k]);
  std::filesystem::remove(path);
}
