#pragma once

/// Time integration of the curve flow gamma_t = gamma_s x gamma_ss, the
/// Schrodinger map flow u_t = u x u_ss on S^6 and their J^A-modified variants.

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "g2flow/frame.hpp"
#include "g2flow/octonion.hpp"

namespace g2flow {

enum class Scheme { rk4, midpoint };
enum class Projection { none, renormalize };

struct FlowConfig {
  double dt = 1e-4;
  double t_end = 0.0;
  Scheme scheme = Scheme::rk4;
  Projection projection = Projection::none;  // sphere maps only
  double cfl = 0.2;                           // requires dt <= cfl * ds^2
  /// Times at which states are emitted (rounded to the nearest step). Empty
  /// means {0, t_end}.
  std::vector<double> output_times;
  /// When set, curves use rhs_modified and sphere maps the J^A flow.
  std::optional<Mat7> variant_a;
  double blow_up_limit = 1e6;
};

/// Samples of a map into S^6; for periodic data u_{n+N} = u_n.
struct SphereMapState {
  std::vector<ImOctonion> samples;
  double ds = 0.0;
  Boundary boundary = Boundary::periodic;
  double time = 0.0;

  [[nodiscard]] std::size_t size() const { return samples.size(); }
};

/// gamma_s x gamma_ss per sample; zero at clamped ends (frozen endpoints).
std::vector<ImOctonion> rhs_binormal(const CurveState& curve);

/// u x u_ss per sample; zero at clamped ends.
std::vector<ImOctonion> rhs_schrodinger_s6(const SphereMapState& u);

/// A^{-1}((A gamma_s) x (A gamma_ss)). Throws invalid-input when A is not
/// orthogonal to 1e-10.
std::vector<ImOctonion> rhs_modified(const CurveState& curve, const Mat7& a);

/// A^{-1}((A u) x (A u_ss)), the J^A Schrodinger map flow.
std::vector<ImOctonion> rhs_schrodinger_modified(const SphereMapState& u, const Mat7& a);

/// Throws invalid-input when a is not orthogonal within tol.
void require_orthogonal(const Mat7& a, double tol = 1e-10);

/// Fixed-step explicit integration. Throws cfl-violation, blow-up.
std::vector<CurveState> evolve(const CurveState& initial, const FlowConfig& config);
std::vector<SphereMapState> evolve(const SphereMapState& initial, const FlowConfig& config);

/// Number of steps and the step actually used: ceil(t_end / dt) steps of
/// t_end / steps, so the effective step never exceeds the requested one.
struct StepPlan {
  std::size_t steps = 0;
  double dt = 0.0;
};
StepPlan plan_steps(double t_end, double dt);

struct ConservationSample {
  double time = 0.0;
  double arclength = 0.0;
  double arclength_drift = 0.0;  // relative to the first state
  double speed_deviation = 0.0;  // max | |gamma_s| - 1 |, or max | |u| - 1 | for sphere maps
  double energy = 0.0;           // (1/2) sum |u_s|^2 ds with u = gamma_s for curves
  double energy_drift = 0.0;     // relative to the first state
};

struct ConservationReport {
  std::vector<ConservationSample> samples;
  double arclength_drift_max = 0.0;
  double speed_deviation_max = 0.0;
  double energy_drift_max = 0.0;
};

ConservationReport conservation_report(const std::vector<CurveState>& trajectory);
ConservationReport conservation_report(const std::vector<SphereMapState>& trajectory);

/// Sum of chord lengths, including the closing chord of a periodic curve.
double total_arclength(const CurveState& curve);

/// Resamples the curve at uniform arclength using cubic Hermite interpolation
/// between samples; keeps N, the boundary tag and the period shift.
CurveState reparameterize(const CurveState& curve);

/// Unit tangent field u = gamma_s of a curve.
SphereMapState tangent_map(const CurveState& curve);

/// Tangent-field evolution two ways on one grid: `instantaneous` is
/// max |D(rhs_binormal(gamma)) - rhs_schrodinger_s6(gamma_s)| at t = 0;
/// `evolved` is max |D(gamma(t_end)) - u(t_end)| where gamma follows the curve
/// flow and u the S^6 flow from u(0) = D(gamma(0)). Both runs share dt.
struct EquivalenceGrid {
  std::size_t n = 0;
  double ds = 0.0;
  double dt = 0.0;
  double instantaneous = 0.0;
  double evolved = 0.0;
};

struct EquivalenceReport {
  std::vector<EquivalenceGrid> grids;
  std::vector<double> instantaneous_order;  // between consecutive grids
  std::vector<double> evolved_order;
};

EquivalenceReport equivalence_study(const std::function<CurveState(std::size_t)>& make_curve, double t_end,
                                    const std::vector<std::size_t>& grids, double dt_factor = 0.1);

}  // namespace g2flow
