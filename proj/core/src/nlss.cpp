#include "g2flow/nlss.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "g2flow/error.hpp"

namespace g2flow {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;
const Complex kI(0.0, 1.0);

using CVec = std::vector<Complex>;

void validate_fields(const HasimotoFields& f) {
  const std::size_t n = f.size();
  if (n < 8) throw Error(ErrorCode::invalid_input, "fields need at least 8 samples");
  if (f.phi2.size() != n || f.phi3.size() != n) throw Error(ErrorCode::invalid_input, "field arrays differ in length");
  if (!(f.ds > 0.0) || !std::isfinite(f.ds)) throw Error(ErrorCode::invalid_input, "ds must be positive");
  for (std::size_t k = 0; k < n; ++k) {
    for (const Complex& z : {f.phi1[k], f.phi2[k], f.phi3[k]}) {
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw Error(ErrorCode::invalid_input, "non-finite field value at sample " + std::to_string(k));
      }
    }
  }
}

struct Derivs {
  CVec s1, ss1, s2, ss2, s3, ss3;
};

std::vector<Complex> d1(const CVec& v, const HasimotoFields& f, double twist, int order) {
  const TwistedPeriodic<Complex> at{v, twist};
  return order == 6 ? diff1_o6<Complex>(v.size(), f.ds, f.boundary, at) : diff1<Complex>(v.size(), f.ds, f.boundary, at);
}

std::vector<Complex> d2(const CVec& v, const HasimotoFields& f, double twist, int order) {
  const TwistedPeriodic<Complex> at{v, twist};
  return order == 6 ? diff2_o6<Complex>(v.size(), f.ds, f.boundary, at) : diff2<Complex>(v.size(), f.ds, f.boundary, at);
}

void check_order(int order) {
  if (order != 4 && order != 6) throw Error(ErrorCode::invalid_input, "stencil order must be 4 or 6");
}

Derivs derivatives(const HasimotoFields& f, int order) {
  check_order(order);
  Derivs d;
  d.s1 = d1(f.phi1, f, f.twist[0], order);
  d.ss1 = d2(f.phi1, f, f.twist[0], order);
  d.s2 = d1(f.phi2, f, f.twist[1], order);
  d.ss2 = d2(f.phi2, f, f.twist[1], order);
  d.s3 = d1(f.phi3, f, f.twist[2], order);
  d.ss3 = d2(f.phi3, f, f.twist[2], order);
  return d;
}

/// Logarithmic derivatives and the composite quantities shared by both
/// systems; valid for either normalization since they are scale-free in phi1.
struct Logs {
  CVec l1, l2, l1s, l2s, gy, gz, gzs;  // Y_s = Y gy, Z_s = Z gz, gz_s
  std::vector<double> big_l1, big_l2;  // 2 Re l
};

Logs logs(const HasimotoFields& f, const Derivs& d) {
  const std::size_t n = f.size();
  Logs g;
  g.l1.resize(n), g.l2.resize(n), g.l1s.resize(n), g.l2s.resize(n);
  g.gy.resize(n), g.gz.resize(n), g.gzs.resize(n);
  g.big_l1.resize(n), g.big_l2.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Complex l1 = d.s1[k] / f.phi1[k];
    const Complex l2 = d.s2[k] / f.phi2[k];
    const Complex l1s = d.ss1[k] / f.phi1[k] - l1 * l1;
    const Complex l2s = d.ss2[k] / f.phi2[k] - l2 * l2;
    g.l1[k] = l1;
    g.l2[k] = l2;
    g.l1s[k] = l1s;
    g.l2s[k] = l2s;
    g.gy[k] = 2.0 * l1 + l2 - std::conj(l1);
    g.gz[k] = std::conj(g.gy[k]);
    g.gzs[k] = 2.0 * std::conj(l1s) + std::conj(l2s) - l1s;
    g.big_l1[k] = 2.0 * l1.real();
    g.big_l2[k] = 2.0 * l2.real();
  }
  return g;
}

double mean_abs(double total, const HasimotoFields& f) {
  return std::abs(total) / (static_cast<double>(f.size()) * f.ds);
}

HasimotoFields scaled_phi1(const HasimotoFields& f, double factor) {
  HasimotoFields out = f;
  for (auto& z : out.phi1) z *= factor;
  return out;
}

}  // namespace

NlssState to_nlss_state(const HasimotoFields& frame_fields, double time) {
  return NlssState{scaled_phi1(frame_fields, 1.0 / kSqrt2), time};
}

HasimotoFields to_frame_fields(const NlssState& state) { return scaled_phi1(state.fields, kSqrt2); }

NlssRegime classify_regime(const HasimotoFields& f, const NlssOptions& options) {
  const bool phi2_zero = std::all_of(f.phi2.begin(), f.phi2.end(), [](Complex z) { return z == Complex{}; });
  if (phi2_zero) return NlssRegime::reduced;
  double min1 = std::numeric_limits<double>::infinity();
  double min2 = min1;
  for (std::size_t k = 0; k < f.size(); ++k) {
    min1 = std::min(min1, std::abs(f.phi1[k]));
    min2 = std::min(min2, std::abs(f.phi2[k]));
  }
  if (min1 < options.divisor_floor || min2 < options.divisor_floor) {
    throw Error(ErrorCode::division_by_small, "min |phi1| = " + std::to_string(min1) + ", min |phi2| = " +
                                                  std::to_string(min2) + " below the divisor floor " +
                                                  std::to_string(options.divisor_floor));
  }
  return NlssRegime::full;
}

ConnectionCoeffs connection_coeffs(const HasimotoFields& f, const NlssOptions& options) {
  validate_fields(f);
  ConnectionCoeffs c;
  c.regime = classify_regime(f, options);
  const std::size_t n = f.size();
  const Derivs d = derivatives(f, options.stencil_order);
  c.a1.assign(n, Complex{});
  c.a2.assign(n, Complex{});
  c.a3.resize(n);
  c.r1.resize(n), c.r2.resize(n), c.r3.resize(n);
  if (c.regime == NlssRegime::reduced) {
    for (std::size_t k = 0; k < n; ++k) {
      const double m1 = std::norm(f.phi1[k]);
      const double m3 = std::norm(f.phi3[k]);
      c.a3[k] = -kI * d.s3[k];
      c.r1[k] = m1;
      c.r2[k] = -0.5 * m1 - m3;
      c.r3[k] = -c.r1[k] - c.r2[k];
    }
    return c;
  }
  const Logs g = logs(f, d);
  std::vector<double> g1(n), g2(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Complex p1 = f.phi1[k], p2 = f.phi2[k], p3 = f.phi3[k];
    const Complex z = std::conj(p1) * std::conj(p1) * std::conj(p2) / p1;
    const Complex y = p1 * p1 * p2 / std::conj(p1);
    const Complex x = p3 / std::conj(p2) * (y * g.gy[k]);
    c.a1[k] = -kI * p2 * (2.0 * g.l1[k] + g.l2[k]);
    c.a2[k] = -(kI * p2 * p3 + kSqrt2 * z);
    c.a3[k] = -2.0 * kI * p3 * (g.l1[k] + g.l2[k]) - kI * d.s3[k] - kSqrt2 / p2 * (z * g.gz[k]);
    const double m2 = std::norm(p2), m3 = std::norm(p3);
    g1[k] = m2 * g.big_l1[k];
    g2[k] = 2.0 * m2 * g.big_l1[k] - 2.0 * m3 * (g.big_l1[k] + g.big_l2[k]) + 2.0 * kSqrt2 * x.imag();
  }
  const auto i1 = cumulative_trapezoid(g1, f.ds);
  const auto i2 = cumulative_trapezoid(g2, f.ds);
  for (std::size_t k = 0; k < n; ++k) {
    const double m1 = std::norm(f.phi1[k]), m2 = std::norm(f.phi2[k]), m3 = std::norm(f.phi3[k]);
    c.r1[k] = m1 - m2 - 2.0 * i1[k];
    c.r2[k] = i2[k] - 0.5 * m1 + m2 - m3;
    c.r3[k] = -c.r1[k] - c.r2[k];
  }
  return c;
}

ConnectionCoeffs connection_coeffs(const NlssState& state, const NlssOptions& options) {
  return connection_coeffs(to_frame_fields(state), options);
}

double r3_derivative_defect(const HasimotoFields& f, const ConnectionCoeffs& c) {
  const std::size_t n = f.size();
  if (c.r3.size() != n || n < 8) throw Error(ErrorCode::invalid_input, "coefficient arrays do not match the fields");
  const auto s1 = diff1_twisted(f.phi1, f.ds, f.boundary, f.twist[0]);
  const auto r3s = diff1(c.r3, f.ds, Boundary::periodic);
  double worst = 0.0;
  for (std::size_t k = 2; k + 2 < n; ++k) {
    const double m1s = 2.0 * (std::conj(f.phi1[k]) * s1[k]).real();
    const double expected = -0.5 * m1s - 2.0 * (std::conj(f.phi3[k]) * c.a3[k]).imag();
    worst = std::max(worst, std::abs(r3s[k] - expected));
  }
  return worst;
}

NlssDerivative nlss_rhs(const NlssState& state, const NlssOptions& options) {
  const HasimotoFields& f = state.fields;
  validate_fields(f);
  NlssDerivative out;
  out.regime = classify_regime(f, options);
  const std::size_t n = f.size();
  const Derivs d = derivatives(f, options.stencil_order);
  out.d1.resize(n), out.d2.resize(n), out.d3.resize(n);
  if (out.regime == NlssRegime::reduced) {
    for (std::size_t k = 0; k < n; ++k) {
      out.d1[k] = -kI * (d.ss1[k] + 2.0 * std::norm(f.phi1[k]) * f.phi1[k]);
      out.d2[k] = Complex{};
      out.d3[k] = -kI * (d.ss3[k] + 2.0 * std::norm(f.phi3[k]) * f.phi3[k]);
    }
    return out;
  }
  const Logs g = logs(f, d);
  std::vector<double> g1(n), g2(n), g3(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Complex y = f.phi1[k] * f.phi1[k] * f.phi2[k] / std::conj(f.phi1[k]);
    const Complex x = f.phi3[k] / std::conj(f.phi2[k]) * (y * g.gy[k]);
    const double m2 = std::norm(f.phi2[k]), m3 = std::norm(f.phi3[k]);
    const double l12 = g.big_l1[k] + g.big_l2[k];
    g1[k] = m2 * g.big_l1[k];
    g2[k] = 2.0 * m2 * g.big_l1[k] - m3 * l12 + 2.0 * x.imag();
    g3[k] = 2.0 * m3 * l12 - m2 * g.big_l1[k] - 4.0 * x.imag();
  }
  const auto i1 = cumulative_trapezoid(g1, f.ds);
  const auto i2 = cumulative_trapezoid(g2, f.ds);
  const auto i3 = cumulative_trapezoid(g3, f.ds);
  for (std::size_t k = 0; k < n; ++k) {
    const Complex p1 = f.phi1[k], p2 = f.phi2[k], p3 = f.phi3[k];
    const Complex c1 = std::conj(p1), c2 = std::conj(p2), c3 = std::conj(p3);
    const double m1 = std::norm(p1), m2 = std::norm(p2), m3 = std::norm(p3);
    const Complex z = c1 * c1 * c2 / p1;
    const Complex zs = z * g.gz[k];
    const Complex zss = z * (g.gz[k] * g.gz[k] + g.gzs[k]);
    const Complex w = g.l1[k] + g.l2[k];
    const Complex ws = g.l1s[k] + g.l2s[k];
    const Complex vs = d.s3[k] * w + p3 * ws - kI * (-g.l2[k] * zs / p2 + zss / p2);
    const Complex e1 = d.ss1[k] + 2.0 * p1 * m1 - 2.0 * p1 * m2 - 2.0 * p1 * i1[k];
    const Complex e2 = d.ss2[k] + 2.0 * p2 * m2 + 2.0 * (d.s2[k] * g.l1[k] + p2 * g.l1s[k]) - 2.0 * p2 * m3 +
                       2.0 * kI * c1 * c1 * c2 * c3 / p1 + 2.0 * p2 * i2[k];
    const Complex e3 =
        d.ss3[k] + 2.0 * p3 * m3 + 2.0 * vs - 2.0 * kI * c1 * c1 * c2 * c2 / p1 + 2.0 * p3 * i3[k];
    out.d1[k] = -kI * e1;
    out.d2[k] = -kI * e2;
    out.d3[k] = -kI * e3;
  }
  if (f.boundary == Boundary::periodic) {
    const double t1 = periodic_integral(g1, f.ds);
    const double t2 = periodic_integral(g2, f.ds);
    const double t3 = periodic_integral(g3, f.ds);
    out.twist_rate = {2.0 * t1, -2.0 * t2, -2.0 * t3};
    out.integrand_mean_max = std::max({mean_abs(t1, f), mean_abs(t2, f), mean_abs(t3, f)});
  }
  return out;
}

NlssDerivative nlss_variant_rhs(const NlssState& state, const NlssOptions& options) {
  const HasimotoFields& f = state.fields;
  validate_fields(f);
  NlssDerivative out;
  out.regime = classify_regime(f, options);
  const std::size_t n = f.size();
  const Derivs d = derivatives(f, options.stencil_order);
  out.d1.resize(n), out.d2.resize(n), out.d3.resize(n);
  if (out.regime == NlssRegime::reduced) {
    for (std::size_t k = 0; k < n; ++k) {
      out.d1[k] = -kI * (d.ss1[k] + 2.0 * std::norm(f.phi1[k]) * f.phi1[k]);
      out.d2[k] = Complex{};
      out.d3[k] = -kI * (-d.ss3[k] - 2.0 * std::norm(f.phi3[k]) * f.phi3[k]);
    }
    return out;
  }
  const Logs g = logs(f, d);
  std::vector<double> g2(n), g3(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Complex y = f.phi1[k] * f.phi1[k] * f.phi2[k] / std::conj(f.phi1[k]);
    const Complex x = f.phi3[k] / std::conj(f.phi2[k]) * (y * g.gy[k]);
    const double m3 = std::norm(f.phi3[k]);
    g2[k] = m3 * g.big_l2[k] - 2.0 * x.imag();
    g3[k] = 2.0 * m3 * g.big_l2[k] - 2.0 * x.imag();
  }
  const auto i2 = cumulative_trapezoid(g2, f.ds);
  const auto i3 = cumulative_trapezoid(g3, f.ds);
  for (std::size_t k = 0; k < n; ++k) {
    const Complex p1 = f.phi1[k], p2 = f.phi2[k], p3 = f.phi3[k];
    const Complex c1 = std::conj(p1), c2 = std::conj(p2), c3 = std::conj(p3);
    const double m1 = std::norm(p1), m2 = std::norm(p2), m3 = std::norm(p3);
    const Complex z = c1 * c1 * c2 / p1;
    const Complex zs = z * g.gz[k];
    const Complex zss = z * (g.gz[k] * g.gz[k] + g.gzs[k]);
    // [phi3 l2 - (i / phi2) Z_s]_s
    const Complex bracket_s = d.s3[k] * g.l2[k] + p3 * g.l2s[k] - kI * (zss / p2 - g.l2[k] * zs / p2);
    const Complex e1 = d.ss1[k] + 2.0 * p1 * m1 + 2.0 * p1 * m2;
    const Complex e2 = -d.ss2[k] - 2.0 * p2 * m2 - 6.0 * p2 * m1 + 2.0 * p2 * m3 -
                       2.0 * kI * c1 * c1 * c2 * c3 / p1 + 2.0 * p2 * i2[k];
    const Complex e3 = -d.ss3[k] - 2.0 * p3 * m3 - 2.0 * bracket_s + 2.0 * kI * c1 * c1 * c2 * c2 / p1 -
                       4.0 * p3 * i3[k];
    out.d1[k] = -kI * e1;
    out.d2[k] = -kI * e2;
    out.d3[k] = -kI * e3;
  }
  if (f.boundary == Boundary::periodic) {
    const double t2 = periodic_integral(g2, f.ds);
    const double t3 = periodic_integral(g3, f.ds);
    out.twist_rate = {0.0, -2.0 * t2, 4.0 * t3};
    out.integrand_mean_max = std::max(mean_abs(t2, f), mean_abs(t3, f));
  }
  return out;
}

std::array<std::vector<Complex>, 3> psi_route_rhs(const NlssState& state, const NlssOptions& options) {
  const HasimotoFields psi = to_frame_fields(state);
  const ConnectionCoeffs c = connection_coeffs(psi, options);
  const std::size_t n = psi.size();
  const auto ss1 = d2(psi.phi1, psi, psi.twist[0], options.stencil_order);
  const auto a1s = d1(c.a1, psi, psi.twist[1], options.stencil_order);
  const auto a3s = d1(c.a3, psi, psi.twist[2], options.stencil_order);
  std::array<std::vector<Complex>, 3> out;
  for (auto& v : out) v.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Complex p1 = psi.phi1[k], p2 = psi.phi2[k], p3 = psi.phi3[k];
    const Complex psi1_t = -kI * ss1[k] + kI * p1 * std::norm(p2) - kI * c.r1[k] * p1;
    out[0][k] = psi1_t / kSqrt2;
    out[1][k] = a1s[k] - 1.5 * kI * std::norm(p1) * p2 + kI * p2 * (c.r1[k] - c.r2[k]) - c.a2[k] * std::conj(p3);
    out[2][k] = a3s[k] + kI * p3 * (c.r1[k] + 2.0 * c.r2[k]) + std::conj(p2) * c.a2[k];
  }
  return out;
}

namespace {

struct Packed {
  CVec p1, p2, p3;
  std::array<double, 3> twist{};
};

Packed pack(const HasimotoFields& f) { return {f.phi1, f.phi2, f.phi3, f.twist}; }

void unpack(const Packed& y, HasimotoFields& f) {
  f.phi1 = y.p1;
  f.phi2 = y.p2;
  f.phi3 = y.p3;
  f.twist = y.twist;
}

Packed add(const Packed& y, double h, const NlssDerivative& k) {
  Packed out = y;
  for (std::size_t n = 0; n < out.p1.size(); ++n) {
    out.p1[n] += h * k.d1[n];
    out.p2[n] += h * k.d2[n];
    out.p3[n] += h * k.d3[n];
  }
  for (std::size_t j = 0; j < 3; ++j) out.twist[j] += h * k.twist_rate[j];
  return out;
}

void guard(const Packed& y, double limit, double time) {
  for (const CVec* v : {&y.p1, &y.p2, &y.p3}) {
    for (const Complex& z : *v) {
      const double a = std::abs(z);
      if (!std::isfinite(a) || a > limit) {
        throw Error(ErrorCode::blow_up, "field exceeded " + std::to_string(limit) + " or became non-finite at t = " +
                                            std::to_string(time));
      }
    }
  }
}

}  // namespace

NlssTrajectory evolve_nlss(const NlssState& initial, const NlssConfig& config) {
  validate_fields(initial.fields);
  const double ds = initial.fields.ds;
  if (!(config.dt > 0.0) || !std::isfinite(config.dt)) throw Error(ErrorCode::invalid_input, "dt must be positive");
  if (!(config.t_end >= 0.0) || !std::isfinite(config.t_end)) throw Error(ErrorCode::invalid_input, "t_end must be >= 0");
  if (config.dt > config.cfl * ds * ds) {
    throw Error(ErrorCode::cfl_violation, "dt = " + std::to_string(config.dt) + " exceeds cfl * ds^2 = " +
                                              std::to_string(config.cfl * ds * ds));
  }
  const StepPlan plan = plan_steps(config.t_end, config.dt);
  std::vector<std::size_t> emit;
  if (config.output_times.empty()) {
    emit = {0, plan.steps};
  } else {
    for (double t : config.output_times) {
      if (t < 0.0 || t > config.t_end + 1e-12) throw Error(ErrorCode::invalid_input, "output time outside [0, t_end]");
      const double k = plan.dt > 0.0 ? std::round(t / plan.dt) : 0.0;
      emit.push_back(std::min(plan.steps, static_cast<std::size_t>(k)));
    }
  }
  std::sort(emit.begin(), emit.end());
  emit.erase(std::unique(emit.begin(), emit.end()), emit.end());

  const bool variant = config.system == NlssSystem::variant;
  NlssState scratch = initial;
  NlssTrajectory traj;
  auto rhs = [&](const Packed& y) {
    unpack(y, scratch.fields);
    NlssDerivative k = variant ? nlss_variant_rhs(scratch, config.options) : nlss_rhs(scratch, config.options);
    traj.integrand_mean_max = std::max(traj.integrand_mean_max, k.integrand_mean_max);
    return k;
  };

  NlssState current = initial;
  Packed y = pack(initial.fields);
  std::size_t next = 0;
  auto maybe_emit = [&](std::size_t k) {
    while (next < emit.size() && emit[next] == k) {
      unpack(y, current.fields);
      traj.states.push_back(current);
      ++next;
    }
  };
  maybe_emit(0);
  const double h = plan.dt;
  for (std::size_t step = 1; step <= plan.steps; ++step) {
    const NlssDerivative k1 = rhs(y);
    const NlssDerivative k2 = rhs(add(y, 0.5 * h, k1));
    const NlssDerivative k3 = rhs(add(y, 0.5 * h, k2));
    const NlssDerivative k4 = rhs(add(y, h, k3));
    for (std::size_t n = 0; n < y.p1.size(); ++n) {
      y.p1[n] += (h / 6.0) * (k1.d1[n] + 2.0 * k2.d1[n] + 2.0 * k3.d1[n] + k4.d1[n]);
      y.p2[n] += (h / 6.0) * (k1.d2[n] + 2.0 * k2.d2[n] + 2.0 * k3.d2[n] + k4.d2[n]);
      y.p3[n] += (h / 6.0) * (k1.d3[n] + 2.0 * k2.d3[n] + 2.0 * k3.d3[n] + k4.d3[n]);
    }
    for (std::size_t j = 0; j < 3; ++j) {
      y.twist[j] += (h / 6.0) * (k1.twist_rate[j] + 2.0 * k2.twist_rate[j] + 2.0 * k3.twist_rate[j] +
                                 k4.twist_rate[j]);
    }
    current.time = initial.time + static_cast<double>(step) * h;
    guard(y, config.blow_up_limit, current.time);
    maybe_emit(step);
  }
  if (traj.integrand_mean_max > 1e-10) {
    traj.warnings.push_back("nonlocal integrand has nonzero period mean (max " +
                            std::to_string(traj.integrand_mean_max) + "); twists evolved with the state");
  }
  return traj;
}

double mass(const NlssState& state) {
  double m = 0.0;
  for (const Complex& z : state.fields.phi1) m += std::norm(z);
  return m * state.fields.ds;
}

std::vector<double> phase_derivative(const std::vector<Complex>& phi, double ds, Boundary boundary, double twist) {
  const auto s = diff1_twisted(phi, ds, boundary, twist);
  std::vector<double> out(phi.size(), 0.0);
  for (std::size_t k = 0; k < phi.size(); ++k) {
    if (phi[k] != Complex{}) out[k] = (s[k] / phi[k]).imag();
  }
  return out;
}

CrossValidationReport cross_validate(const std::function<CurveState(std::size_t)>& make_curve, double t_end,
                                     const std::vector<std::size_t>& grids, const CrossValidationOptions& options) {
  if (grids.empty()) throw Error(ErrorCode::invalid_input, "no grids given");
  if (!(options.dt_factor > 0.0)) throw Error(ErrorCode::invalid_input, "dt_factor must be positive");
  CrossValidationReport report;
  for (std::size_t n : grids) {
    const CurveState curve = make_curve(n);
    CrossValidationGrid row;
    row.n = curve.size();
    row.ds = curve.ds;
    row.dt = options.dt_factor * curve.ds * curve.ds;

    std::vector<double> times;
    const std::size_t slices = t_end > 0.0 ? std::max<std::size_t>(options.slices, 1) : 1;
    for (std::size_t j = 1; j <= slices; ++j) times.push_back(t_end * static_cast<double>(j) / static_cast<double>(slices));

    FlowConfig flow;
    flow.dt = row.dt;
    flow.t_end = t_end;
    flow.cfl = options.dt_factor * (1.0 + 1e-12);
    flow.output_times = times;
    const auto curves = evolve(curve, flow);

    const NlssState start = to_nlss_state(hasimoto_from_curve(curve, options.fallback_seed), curve.time);
    row.regime = classify_regime(start.fields, options.options);
    NlssConfig nc;
    nc.dt = row.dt;
    nc.t_end = t_end;
    nc.cfl = flow.cfl;
    nc.output_times = times;
    nc.options = options.options;
    const NlssTrajectory traj = evolve_nlss(start, nc);
    row.integrand_mean_max = traj.integrand_mean_max;
    for (const auto& w : traj.warnings) report.warnings.push_back("N = " + std::to_string(n) + ": " + w);

    const std::size_t compared = row.regime == NlssRegime::reduced ? 1 : 3;
    for (std::size_t j = 0; j < curves.size() && j < traj.states.size(); ++j) {
      const NlssState a = to_nlss_state(hasimoto_from_curve(curves[j], options.fallback_seed));
      const HasimotoFields& fa = a.fields;
      const HasimotoFields& fb = traj.states[j].fields;
      const std::array<const CVec*, 3> va = {&fa.phi1, &fa.phi2, &fa.phi3};
      const std::array<const CVec*, 3> vb = {&fb.phi1, &fb.phi2, &fb.phi3};
      for (std::size_t c = 0; c < compared; ++c) {
        const auto da = phase_derivative(*va[c], fa.ds, fa.boundary, fa.twist[c]);
        const auto db = phase_derivative(*vb[c], fb.ds, fb.boundary, fb.twist[c]);
        for (std::size_t k = 0; k < fa.size(); ++k) {
          row.magnitude_discrepancy[c] =
              std::max(row.magnitude_discrepancy[c], std::abs(std::abs((*va[c])[k]) - std::abs((*vb[c])[k])));
          row.phase_discrepancy[c] = std::max(row.phase_discrepancy[c], std::abs(da[k] - db[k]));
        }
      }
    }
    for (std::size_t c = 0; c < compared; ++c) {
      row.magnitude_max = std::max(row.magnitude_max, row.magnitude_discrepancy[c]);
      row.phase_max = std::max(row.phase_max, row.phase_discrepancy[c]);
    }
    if (row.regime == NlssRegime::reduced) {
      report.warnings.push_back("N = " + std::to_string(n) + ": phi2 vanishes; compared phi1 against the reduced NLS");
    }
    report.grids.push_back(row);
  }
  for (std::size_t j = 0; j + 1 < report.grids.size(); ++j) {
    const auto& a = report.grids[j];
    const auto& b = report.grids[j + 1];
    const double scale = std::log2(static_cast<double>(b.n) / static_cast<double>(a.n));
    report.magnitude_order.push_back(std::log2(a.magnitude_max / b.magnitude_max) / scale);
    report.phase_order.push_back(std::log2(a.phase_max / b.phase_max) / scale);
  }
  return report;
}

}  // namespace g2flow
