#pragma once

/// The three-field nonlinear Schrodinger-type system equivalent to the curve
/// flow, its reduced (phi2 = 0) and J^A variants, the connection coefficients
/// (a1, a2, a3, R1, R2, R3), and the cross-validation against the curve flow.

#include <array>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "g2flow/flow.hpp"
#include "g2flow/frame.hpp"

namespace g2flow {

/// NLSS normalization: phi1 = (frame phi1) / sqrt2, phi2 and phi3 unchanged,
/// gauge R10 = R20 = 0. `fields.twist` holds the quasi-periodicity phases,
/// which evolve in time when the nonlocal integrands have nonzero mean.
struct NlssState {
  HasimotoFields fields;
  double time = 0.0;

  [[nodiscard]] std::size_t size() const { return fields.size(); }
};

NlssState to_nlss_state(const HasimotoFields& frame_fields, double time = 0.0);
HasimotoFields to_frame_fields(const NlssState& state);

struct NlssOptions {
  double divisor_floor = 1e-8;
  /// s-derivative stencil for periodic data: 4 or 6. Clamped data always uses
  /// the 4th-order interior stencil.
  int stencil_order = 6;
};

/// Regime of the data: reduced when phi2 vanishes identically, full when
/// |phi1| and |phi2| stay above the floor. Anything else throws
/// division-by-small.
enum class NlssRegime { full, reduced };
NlssRegime classify_regime(const HasimotoFields& fields, const NlssOptions& options = {});

/// Coefficients of the t-evolution matrix, evaluated on frame-normalized fields.
struct ConnectionCoeffs {
  std::vector<Complex> a1, a2, a3;
  std::vector<double> r1, r2, r3;
  NlssRegime regime = NlssRegime::full;
};

ConnectionCoeffs connection_coeffs(const HasimotoFields& frame_fields, const NlssOptions& options = {});
ConnectionCoeffs connection_coeffs(const NlssState& state, const NlssOptions& options = {});

/// max over samples 2..N-3 of |D(R3) - R3_s| with R3_s from its own derivative
/// relation -(1/2)(|phi1|^2)_s + i(conj(phi3) a3 - phi3 conj(a3)).
double r3_derivative_defect(const HasimotoFields& frame_fields, const ConnectionCoeffs& coeffs);

struct NlssDerivative {
  std::vector<Complex> d1, d2, d3;  // d/dt phi_k
  std::array<double, 3> twist_rate{};
  NlssRegime regime = NlssRegime::full;
  double integrand_mean_max = 0.0;  // largest |period mean| of a nonlocal integrand
};

NlssDerivative nlss_rhs(const NlssState& state, const NlssOptions& options = {});
NlssDerivative nlss_variant_rhs(const NlssState& state, const NlssOptions& options = {});

/// d/dt of (phi1, phi2, phi3) in the NLSS normalization obtained from the
/// coefficient system: phi1 from its first line with R1 from connection_coeffs,
/// phi2 and phi3 from a1_s, a3_s (differentiated numerically), a2 and R1, R2.
std::array<std::vector<Complex>, 3> psi_route_rhs(const NlssState& state, const NlssOptions& options = {});

enum class NlssSystem { standard, variant };

struct NlssConfig {
  double dt = 1e-4;
  double t_end = 0.0;
  double cfl = 0.2;
  std::vector<double> output_times;  // empty: {0, t_end}
  NlssSystem system = NlssSystem::standard;
  double blow_up_limit = 1e6;
  NlssOptions options;
};

struct NlssTrajectory {
  std::vector<NlssState> states;
  double integrand_mean_max = 0.0;
  std::vector<std::string> warnings;
};

/// RK4 with the twists advanced alongside the fields.
NlssTrajectory evolve_nlss(const NlssState& initial, const NlssConfig& config);

/// sum |phi1|^2 ds.
double mass(const NlssState& state);

struct CrossValidationOptions {
  double dt_factor = 0.1;  // dt = dt_factor * ds^2
  std::size_t slices = 5;  // compared output times, evenly spaced in (0, t_end]
  ImOctonion fallback_seed = ImOctonion::unit(3);
  NlssOptions options;
};

struct CrossValidationGrid {
  std::size_t n = 0;
  double ds = 0.0;
  double dt = 0.0;
  NlssRegime regime = NlssRegime::full;
  std::array<double, 3> magnitude_discrepancy{};  // max over slices and samples of ||phi_k^A| - |phi_k^B||
  std::array<double, 3> phase_discrepancy{};      // same for (arg phi_k)_s
  double magnitude_max = 0.0;                     // over compared fields
  double phase_max = 0.0;
  double integrand_mean_max = 0.0;
};

struct CrossValidationReport {
  std::vector<CrossValidationGrid> grids;
  std::vector<double> magnitude_order;  // log2 ratios between consecutive grids (for doubling N)
  std::vector<double> phase_order;
  std::vector<std::string> warnings;
};

/// Pipeline A evolves the curve and extracts fields per slice; pipeline B
/// evolves the initial fields under the NLSS. In the reduced regime only phi1
/// is compared (phi3 depends on the free choice of I2 when kappa2 = 0).
CrossValidationReport cross_validate(const std::function<CurveState(std::size_t)>& make_curve, double t_end,
                                     const std::vector<std::size_t>& grids, const CrossValidationOptions& options = {});

/// (arg phi)_s = Im(phi_s / phi) with the twist-aware stencil.
std::vector<double> phase_derivative(const std::vector<Complex>& phi, double ds, Boundary boundary, double twist);

}  // namespace g2flow
