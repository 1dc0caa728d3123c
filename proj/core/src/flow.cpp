#include "g2flow/flow.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "g2flow/error.hpp"

namespace g2flow {

namespace {

using Field = std::vector<ImOctonion>;

void axpy(Field& y, double a, const Field& x) {
  for (std::size_t n = 0; n < y.size(); ++n) y[n] += a * x[n];
}

Field combine(const Field& y, double a, const Field& x) {
  Field out = y;
  axpy(out, a, x);
  return out;
}

void freeze_ends(Field& v, Boundary boundary) {
  if (boundary == Boundary::clamped && !v.empty()) {
    v.front() = ImOctonion{};
    v.back() = ImOctonion{};
  }
}

void normalize_all(Field& u) {
  for (auto& x : u) {
    const double len = norm(x);
    if (len > 0.0) x = x / len;
  }
}

void guard(const Field& y, double limit, double time) {
  for (const auto& x : y) {
    for (double c : x.c) {
      if (!std::isfinite(c) || std::abs(c) > limit) {
        throw Error(ErrorCode::blow_up, "state exceeded " + std::to_string(limit) + " or became non-finite at t = " +
                                            std::to_string(time));
      }
    }
  }
}

/// One explicit step; `post` is applied to every stage state (sphere projection).
template <class Rhs, class Post>
Field step(const Field& y, double dt, Scheme scheme, const Rhs& rhs, const Post& post) {
  if (scheme == Scheme::midpoint) {
    const Field k1 = rhs(y);
    Field mid = combine(y, 0.5 * dt, k1);
    post(mid);
    const Field k2 = rhs(mid);
    Field out = combine(y, dt, k2);
    post(out);
    return out;
  }
  const Field k1 = rhs(y);
  Field y2 = combine(y, 0.5 * dt, k1);
  post(y2);
  const Field k2 = rhs(y2);
  Field y3 = combine(y, 0.5 * dt, k2);
  post(y3);
  const Field k3 = rhs(y3);
  Field y4 = combine(y, dt, k3);
  post(y4);
  const Field k4 = rhs(y4);
  Field out = y;
  for (std::size_t n = 0; n < out.size(); ++n) out[n] += (dt / 6.0) * (k1[n] + 2.0 * k2[n] + 2.0 * k3[n] + k4[n]);
  post(out);
  return out;
}

std::vector<std::size_t> output_steps(const FlowConfig& config, const StepPlan& plan) {
  std::vector<std::size_t> idx;
  if (config.output_times.empty()) {
    idx = {0, plan.steps};
  } else {
    for (double t : config.output_times) {
      if (t < 0.0 || t > config.t_end + 1e-12) throw Error(ErrorCode::invalid_input, "output time outside [0, t_end]");
      const double k = plan.dt > 0.0 ? std::round(t / plan.dt) : 0.0;
      idx.push_back(std::min(plan.steps, static_cast<std::size_t>(k)));
    }
  }
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  return idx;
}

void check_config(const FlowConfig& config, double ds) {
  if (!(config.dt > 0.0) || !std::isfinite(config.dt)) throw Error(ErrorCode::invalid_input, "dt must be positive");
  if (!(config.t_end >= 0.0) || !std::isfinite(config.t_end)) throw Error(ErrorCode::invalid_input, "t_end must be >= 0");
  if (config.dt > config.cfl * ds * ds) {
    throw Error(ErrorCode::cfl_violation, "dt = " + std::to_string(config.dt) + " exceeds cfl * ds^2 = " +
                                              std::to_string(config.cfl * ds * ds));
  }
  if (config.variant_a) require_orthogonal(*config.variant_a);
}

template <class State, class Rhs, class Post>
std::vector<State> integrate(const State& initial, const FlowConfig& config, const Rhs& rhs, const Post& post) {
  check_config(config, initial.ds);
  const StepPlan plan = plan_steps(config.t_end, config.dt);
  const auto emit = output_steps(config, plan);
  std::vector<State> out;
  State current = initial;
  std::size_t next = 0;
  auto maybe_emit = [&](std::size_t k) {
    while (next < emit.size() && emit[next] == k) {
      out.push_back(current);
      ++next;
    }
  };
  maybe_emit(0);
  const double t0 = initial.time;
  for (std::size_t k = 1; k <= plan.steps; ++k) {
    current.samples = step(current.samples, plan.dt, config.scheme, rhs, post);
    current.time = t0 + static_cast<double>(k) * plan.dt;
    guard(current.samples, config.blow_up_limit, current.time);
    maybe_emit(k);
  }
  return out;
}

}  // namespace

void require_orthogonal(const Mat7& a, double tol) {
  if (!a.allFinite()) throw Error(ErrorCode::invalid_input, "matrix has non-finite entries");
  const double dev = (a.transpose() * a - Mat7::Identity()).cwiseAbs().maxCoeff();
  if (dev > tol) throw Error(ErrorCode::invalid_input, "matrix is not orthogonal (deviation " + std::to_string(dev) + ")");
}

std::vector<ImOctonion> rhs_binormal(const CurveState& curve) {
  const auto g1 = curve_d1(curve);
  const auto g2 = curve_d2(curve);
  Field v(curve.size());
  for (std::size_t n = 0; n < v.size(); ++n) v[n] = cross(g1[n], g2[n]);
  freeze_ends(v, curve.boundary);
  return v;
}

std::vector<ImOctonion> rhs_schrodinger_s6(const SphereMapState& u) {
  const auto uss = diff2(u.samples, u.ds, u.boundary);
  Field v(u.size());
  for (std::size_t n = 0; n < v.size(); ++n) v[n] = cross(u.samples[n], uss[n]);
  freeze_ends(v, u.boundary);
  return v;
}

std::vector<ImOctonion> rhs_modified(const CurveState& curve, const Mat7& a) {
  require_orthogonal(a);
  const Mat7 a_inv = a.transpose();
  const auto g1 = curve_d1(curve);
  const auto g2 = curve_d2(curve);
  Field v(curve.size());
  for (std::size_t n = 0; n < v.size(); ++n) v[n] = apply(a_inv, cross(apply(a, g1[n]), apply(a, g2[n])));
  freeze_ends(v, curve.boundary);
  return v;
}

std::vector<ImOctonion> rhs_schrodinger_modified(const SphereMapState& u, const Mat7& a) {
  require_orthogonal(a);
  const Mat7 a_inv = a.transpose();
  const auto uss = diff2(u.samples, u.ds, u.boundary);
  Field v(u.size());
  for (std::size_t n = 0; n < v.size(); ++n) v[n] = apply(a_inv, cross(apply(a, u.samples[n]), apply(a, uss[n])));
  freeze_ends(v, u.boundary);
  return v;
}

StepPlan plan_steps(double t_end, double dt) {
  StepPlan p;
  if (t_end <= 0.0) return p;
  p.steps = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
  if (p.steps == 0) p.steps = 1;
  p.dt = t_end / static_cast<double>(p.steps);
  return p;
}

std::vector<CurveState> evolve(const CurveState& initial, const FlowConfig& config) {
  validate_curve(initial, FrameOptions{});
  CurveState scratch = initial;
  auto rhs = [&](const Field& y) {
    scratch.samples = y;
    return config.variant_a ? rhs_modified(scratch, *config.variant_a) : rhs_binormal(scratch);
  };
  auto post = [](Field&) {};
  return integrate(initial, config, rhs, post);
}

std::vector<SphereMapState> evolve(const SphereMapState& initial, const FlowConfig& config) {
  if (initial.size() < 8) throw Error(ErrorCode::invalid_input, "sphere map needs at least 8 samples");
  for (const auto& x : initial.samples) {
    if (std::abs(norm(x) - 1.0) > 1e-9) throw Error(ErrorCode::invalid_input, "sphere map samples must have unit norm");
  }
  SphereMapState scratch = initial;
  auto rhs = [&](const Field& y) {
    scratch.samples = y;
    return config.variant_a ? rhs_schrodinger_modified(scratch, *config.variant_a) : rhs_schrodinger_s6(scratch);
  };
  const bool project = config.projection == Projection::renormalize;
  auto post = [project](Field& y) {
    if (project) normalize_all(y);
  };
  return integrate(initial, config, rhs, post);
}

double total_arclength(const CurveState& curve) {
  double len = 0.0;
  for (std::size_t n = 0; n + 1 < curve.size(); ++n) len += norm(curve.samples[n + 1] - curve.samples[n]);
  if (curve.boundary == Boundary::periodic && curve.size() > 0) {
    len += norm(curve.samples.front() + curve.period_shift - curve.samples.back());
  }
  return len;
}

SphereMapState tangent_map(const CurveState& curve) {
  SphereMapState u;
  u.samples = curve_d1(curve);
  u.ds = curve.ds;
  u.boundary = curve.boundary;
  u.time = curve.time;
  return u;
}

namespace {

double energy_of(const SphereMapState& u) {
  const auto us = diff1(u.samples, u.ds, u.boundary);
  double e = 0.0;
  for (const auto& x : us) e += dot(x, x);
  return 0.5 * e * u.ds;
}

double unit_deviation(const std::vector<ImOctonion>& u) {
  double d = 0.0;
  for (const auto& x : u) d = std::max(d, std::abs(norm(x) - 1.0));
  return d;
}

double relative(double value, double reference) {
  return reference != 0.0 ? std::abs(value - reference) / std::abs(reference) : std::abs(value - reference);
}

void finish(ConservationReport& r) {
  if (r.samples.empty()) return;
  const double l0 = r.samples.front().arclength;
  const double e0 = r.samples.front().energy;
  for (auto& s : r.samples) {
    s.arclength_drift = relative(s.arclength, l0);
    s.energy_drift = relative(s.energy, e0);
    r.arclength_drift_max = std::max(r.arclength_drift_max, s.arclength_drift);
    r.energy_drift_max = std::max(r.energy_drift_max, s.energy_drift);
    r.speed_deviation_max = std::max(r.speed_deviation_max, s.speed_deviation);
  }
}

}  // namespace

ConservationReport conservation_report(const std::vector<CurveState>& trajectory) {
  if (trajectory.empty()) throw Error(ErrorCode::invalid_input, "empty trajectory");
  ConservationReport r;
  for (const auto& c : trajectory) {
    ConservationSample s;
    s.time = c.time;
    s.arclength = total_arclength(c);
    const SphereMapState u = tangent_map(c);
    s.speed_deviation = unit_deviation(u.samples);
    s.energy = energy_of(u);
    r.samples.push_back(s);
  }
  finish(r);
  return r;
}

ConservationReport conservation_report(const std::vector<SphereMapState>& trajectory) {
  if (trajectory.empty()) throw Error(ErrorCode::invalid_input, "empty trajectory");
  ConservationReport r;
  for (const auto& u : trajectory) {
    ConservationSample s;
    s.time = u.time;
    s.speed_deviation = unit_deviation(u.samples);
    s.energy = energy_of(u);
    r.samples.push_back(s);
  }
  finish(r);
  return r;
}

CurveState reparameterize(const CurveState& curve) {
  validate_curve(curve, FrameOptions{1e-7, 1e-10, 0.5});
  const std::size_t n_samples = curve.size();
  const bool periodic = curve.boundary == Boundary::periodic;
  const std::size_t segments = periodic ? n_samples : n_samples - 1;
  const auto tangent = curve_d1(curve);
  const double h = curve.ds;

  auto point = [&](std::size_t n) {
    return n < n_samples ? curve.samples[n] : curve.samples[n - n_samples] + curve.period_shift;
  };
  auto slope = [&](std::size_t n) { return tangent[n % n_samples]; };
  // Cubic Hermite on segment k, local parameter x in [0, 1].
  auto eval = [&](std::size_t k, double x) {
    const double x2 = x * x, x3 = x2 * x;
    return (2 * x3 - 3 * x2 + 1) * point(k) + (x3 - 2 * x2 + x) * h * slope(k) + (-2 * x3 + 3 * x2) * point(k + 1) +
           (x3 - x2) * h * slope(k + 1);
  };
  auto speed = [&](std::size_t k, double x) {
    const double x2 = x * x;
    const ImOctonion d = (6 * x2 - 6 * x) * point(k) + (3 * x2 - 4 * x + 1) * h * slope(k) +
                         (-6 * x2 + 6 * x) * point(k + 1) + (3 * x2 - 2 * x) * h * slope(k + 1);
    return norm(d);
  };
  static constexpr std::array<double, 5> gx = {-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
                                               0.9061798459386640};
  static constexpr std::array<double, 5> gw = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                               0.4786286704993665, 0.2369268850561891};
  auto arc = [&](std::size_t k, double x) {
    double s = 0.0;
    for (std::size_t g = 0; g < 5; ++g) s += gw[g] * speed(k, 0.5 * x * (gx[g] + 1.0));
    return 0.5 * x * s;
  };

  std::vector<double> cumulative(segments + 1, 0.0);
  for (std::size_t k = 0; k < segments; ++k) cumulative[k + 1] = cumulative[k] + arc(k, 1.0);
  const double length = cumulative.back();

  CurveState out = curve;
  out.ds = length / static_cast<double>(segments);
  std::size_t k = 0;
  for (std::size_t m = 0; m < n_samples; ++m) {
    const double target = static_cast<double>(m) * out.ds;
    while (k + 1 < segments && cumulative[k + 1] < target) ++k;
    const double local = target - cumulative[k];
    const double seg_len = cumulative[k + 1] - cumulative[k];
    double x = seg_len > 0.0 ? local / seg_len : 0.0;
    for (int it = 0; it < 20; ++it) {
      const double f = arc(k, x) - local;
      const double v = speed(k, x);
      if (v <= 0.0) break;
      const double dx = f / v;
      x = std::clamp(x - dx, 0.0, 1.0);
      if (std::abs(dx) < 1e-15) break;
    }
    out.samples[m] = eval(k, x);
  }
  if (!periodic) out.samples.back() = curve.samples.back();
  return out;
}

EquivalenceReport equivalence_study(const std::function<CurveState(std::size_t)>& make_curve, double t_end,
                                    const std::vector<std::size_t>& grids, double dt_factor) {
  if (grids.empty()) throw Error(ErrorCode::invalid_input, "no grids given");
  if (!(dt_factor > 0.0)) throw Error(ErrorCode::invalid_input, "dt_factor must be positive");
  EquivalenceReport report;
  auto max_diff = [](const Field& a, const Field& b) {
    double d = 0.0;
    for (std::size_t n = 0; n < a.size(); ++n) d = std::max(d, norm(a[n] - b[n]));
    return d;
  };
  for (std::size_t n : grids) {
    const CurveState curve = make_curve(n);
    validate_curve(curve);
    EquivalenceGrid row;
    row.n = curve.size();
    row.ds = curve.ds;
    row.dt = dt_factor * curve.ds * curve.ds;
    const SphereMapState u0 = tangent_map(curve);
    row.instantaneous = max_diff(diff1(rhs_binormal(curve), curve.ds, curve.boundary), rhs_schrodinger_s6(u0));
    if (t_end > 0.0) {
      FlowConfig config;
      config.dt = row.dt;
      config.t_end = t_end;
      config.cfl = dt_factor * (1.0 + 1e-12);
      const auto curves = evolve(curve, config);
      // The discrete tangent is unit only to the stencil order; start the sphere flow on S^6.
      SphereMapState start = u0;
      normalize_all(start.samples);
      const auto maps = evolve(start, config);
      row.evolved = max_diff(tangent_map(curves.back()).samples, maps.back().samples);
    }
    report.grids.push_back(row);
  }
  for (std::size_t j = 0; j + 1 < report.grids.size(); ++j) {
    const auto& a = report.grids[j];
    const auto& b = report.grids[j + 1];
    const double scale = std::log2(static_cast<double>(b.n) / static_cast<double>(a.n));
    report.instantaneous_order.push_back(std::log2(a.instantaneous / b.instantaneous) / scale);
    report.evolved_order.push_back(std::log2(a.evolved / b.evolved) / scale);
  }
  return report;
}

}  // namespace g2flow
