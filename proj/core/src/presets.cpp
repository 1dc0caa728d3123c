#include "g2flow/presets.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "g2flow/error.hpp"

namespace g2flow {

namespace {

constexpr double kPi = std::numbers::pi;

void require_size(std::size_t n) {
  if (n < 8) throw Error(ErrorCode::invalid_input, "N must be at least 8");
}

NlssState empty_nlss(std::size_t n, double ds) {
  NlssState st;
  st.fields.ds = ds;
  st.fields.boundary = Boundary::periodic;
  st.fields.phi1.assign(n, Complex{});
  st.fields.phi2.assign(n, Complex{});
  st.fields.phi3.assign(n, Complex{});
  return st;
}

}  // namespace

std::vector<double> grid(std::size_t n, double ds, double s0) {
  std::vector<double> s(n);
  for (std::size_t k = 0; k < n; ++k) s[k] = s0 + static_cast<double>(k) * ds;
  return s;
}

CurveState preset_line(std::size_t n, double length) {
  require_size(n);
  if (!(length > 0.0)) throw Error(ErrorCode::invalid_input, "line length must be positive");
  CurveState c;
  c.boundary = Boundary::clamped;
  c.ds = length / static_cast<double>(n - 1);
  c.samples.resize(n);
  for (std::size_t k = 0; k < n; ++k) c.samples[k] = static_cast<double>(k) * c.ds * ImOctonion::unit(0);
  return c;
}

CurveState preset_circle(std::size_t n) {
  require_size(n);
  CurveState c;
  c.ds = 2.0 * kPi / static_cast<double>(n);
  c.samples.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double s = static_cast<double>(k) * c.ds;
    c.samples[k] = std::cos(s) * ImOctonion::unit(0) + std::sin(s) * ImOctonion::unit(1);
  }
  return c;
}

CurveState preset_helix(std::size_t n, double a, double b) {
  require_size(n);
  const double c2 = a * a + b * b;
  if (!(a > 0.0) || !std::isfinite(c2)) throw Error(ErrorCode::invalid_input, "helix radius must be positive");
  const double c = std::sqrt(c2);
  CurveState curve;
  curve.ds = 2.0 * kPi * c / static_cast<double>(n);
  curve.period_shift = 2.0 * kPi * b * ImOctonion::unit(2);
  curve.samples.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double u = static_cast<double>(k) * curve.ds / c;
    curve.samples[k] =
        a * std::cos(u) * ImOctonion::unit(0) + a * std::sin(u) * ImOctonion::unit(1) + b * u * ImOctonion::unit(2);
  }
  return curve;
}

CurveState preset_perturbed_circle(std::size_t n, const PerturbedCircleParams& params) {
  require_size(n);
  if (!std::isfinite(params.amplitude) || params.amplitude < 0.0) {
    throw Error(ErrorCode::invalid_input, "perturbation amplitude must be finite and >= 0");
  }
  for (int m : params.modes) {
    if (m < 1) throw Error(ErrorCode::invalid_input, "perturbation modes must be >= 1");
  }
  const std::size_t coords = params.quaternionic_only ? 3 : 7;
  std::mt19937_64 rng(params.seed);
  struct Term {
    double m, amp, phase;
    std::size_t coord;
  };
  std::vector<Term> terms;
  for (int m : params.modes) {
    for (std::size_t c = 0; c < coords; ++c) {
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      terms.push_back({static_cast<double>(m), params.amplitude / (m * m), 2.0 * kPi * u, c});
    }
  }
  auto point = [&](double th) {
    ImOctonion x = std::cos(th) * ImOctonion::unit(0) + std::sin(th) * ImOctonion::unit(1);
    for (const Term& t : terms) x.c[t.coord] += t.amp * std::cos(t.m * th + t.phase);
    return x;
  };
  auto speed = [&](double th) {
    ImOctonion d = -std::sin(th) * ImOctonion::unit(0) + std::cos(th) * ImOctonion::unit(1);
    for (const Term& t : terms) d.c[t.coord] -= t.amp * t.m * std::sin(t.m * th + t.phase);
    return norm(d);
  };

  // Arclength by composite 8-point Gauss-Legendre on fine panels; exact to roundoff for this smooth integrand.
  static constexpr std::array<double, 4> gx = {0.1834346424956498, 0.5255324099163290, 0.7966664774136267,
                                               0.9602898564975363};
  static constexpr std::array<double, 4> gw = {0.3626837833783620, 0.3137066638189863, 0.2223810344533745,
                                               0.1012285362903763};
  auto arc = [&](double a, double b) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (std::size_t g = 0; g < 4; ++g) s += gw[g] * (speed(mid - half * gx[g]) + speed(mid + half * gx[g]));
    return half * s;
  };
  const std::size_t panels = std::max<std::size_t>(4 * n, 512);
  const double dth = 2.0 * kPi / static_cast<double>(panels);
  std::vector<double> cumulative(panels + 1, 0.0);
  for (std::size_t p = 0; p < panels; ++p) {
    cumulative[p + 1] = cumulative[p] + arc(static_cast<double>(p) * dth, static_cast<double>(p + 1) * dth);
  }
  const double length = cumulative.back();

  CurveState curve;
  curve.ds = length / static_cast<double>(n);
  curve.samples.resize(n);
  std::size_t p = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double target = static_cast<double>(k) * curve.ds;
    while (p + 1 < panels && cumulative[p + 1] < target) ++p;
    const double a = static_cast<double>(p) * dth;
    double th = a + dth * (target - cumulative[p]) / (cumulative[p + 1] - cumulative[p]);
    for (int it = 0; it < 50; ++it) {
      const double f = cumulative[p] + arc(a, th) - target;
      const double step = f / speed(th);
      th -= step;
      if (std::abs(step) < 1e-15) break;
    }
    curve.samples[k] = point(th);
  }
  return curve;
}

SphereMapState preset_great_circle(std::size_t n, double omega) {
  require_size(n);
  if (!(omega > 0.0)) throw Error(ErrorCode::invalid_input, "omega must be positive");
  SphereMapState u;
  u.ds = 2.0 * kPi / (omega * static_cast<double>(n));
  u.samples.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double s = static_cast<double>(k) * u.ds;
    u.samples[k] = std::cos(omega * s) * ImOctonion::unit(0) + std::sin(omega * s) * ImOctonion::unit(1);
  }
  return u;
}

NlssState preset_soliton(std::size_t n, double eta, double s_min, double s_max, double t) {
  require_size(n);
  if (!(s_max > s_min)) throw Error(ErrorCode::invalid_input, "s_max must exceed s_min");
  NlssState st = empty_nlss(n, (s_max - s_min) / static_cast<double>(n));
  st.time = t;
  const auto s = grid(n, st.fields.ds, s_min);
  for (std::size_t k = 0; k < n; ++k) {
    st.fields.phi1[k] = std::polar(eta / std::cosh(eta * s[k]), -eta * eta * t);
  }
  return st;
}

NlssState preset_plane_wave(std::size_t n, Complex c, double mu, double length) {
  require_size(n);
  if (!(length > 0.0)) throw Error(ErrorCode::invalid_input, "length must be positive");
  NlssState st = empty_nlss(n, length / static_cast<double>(n));
  const auto s = grid(n, st.fields.ds);
  for (std::size_t k = 0; k < n; ++k) st.fields.phi1[k] = c * std::polar(1.0, mu * s[k]);
  st.fields.twist[0] = mu * length;
  return st;
}

NlssState preset_gaussian(std::size_t n, double amplitude, double width, double k0, double s_min, double s_max,
                          double center) {
  require_size(n);
  if (!(s_max > s_min) || !(width > 0.0)) throw Error(ErrorCode::invalid_input, "invalid Gaussian packet parameters");
  NlssState st = empty_nlss(n, (s_max - s_min) / static_cast<double>(n));
  const auto s = grid(n, st.fields.ds, s_min);
  for (std::size_t k = 0; k < n; ++k) {
    const double x = (s[k] - center) / width;
    st.fields.phi1[k] = std::polar(amplitude * std::exp(-0.5 * x * x), k0 * s[k]);
  }
  st.fields.twist[0] = k0 * (s_max - s_min);
  return st;
}

Mat7 block_a_matrix() {
  Mat7 a = Mat7::Identity();
  // Coordinates 3 and 4 are l and il.
  a(3, 3) = 0.0;
  a(4, 4) = 0.0;
  a(3, 4) = 1.0;
  a(4, 3) = -1.0;
  return a;
}

}  // namespace g2flow
