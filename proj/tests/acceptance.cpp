// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "g2flow/flow.hpp"
#include "g2flow/frame.hpp"
#include "g2flow/nlss.hpp"
#include "g2flow/octonion.hpp"
#include "g2flow/presets.hpp"
#include "g2flow/surface.hpp"
#include "oracles.hpp"

using namespace g2flow;

namespace {

int failures = 0;

using Clock = std::chrono::steady_clock;
double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

void report(int id, bool ok, const std::string& detail) {
  std::printf("criterion %2d: %s  %s\n", id, ok ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

oracle::Oct to_oct(const Octonion& x) { return x.c; }
Octonion from_oct(const oracle::Oct& x) { return Octonion{x}; }

oracle::COct to_coct(const ComplexOctonion& x) {
  oracle::COct r;
  for (std::size_t a = 0; a < 8; ++a) r[a] = x.c[a];
  return r;
}

double max_diff(const std::vector<ImOctonion>& a, const std::vector<ImOctonion>& b) {
  double m = 0.0;
  for (std::size_t n = 0; n < a.size(); ++n) {
    for (std::size_t c = 0; c < 7; ++c) m = std::max(m, std::abs(a[n].c[c] - b[n].c[c]));
  }
  return m;
}

// Polygon length over one period, closed with the period shift.
double chord_length(const CurveState& c) {
  double len = 0.0;
  for (std::size_t n = 0; n < c.size(); ++n) {
    const ImOctonion next = n + 1 < c.size() ? c.samples[n + 1] : c.samples[0] + c.period_shift;
    double d2 = 0.0;
    for (std::size_t a = 0; a < 7; ++a) d2 += (next.c[a] - c.samples[n].c[a]) * (next.c[a] - c.samples[n].c[a]);
    len += std::sqrt(d2);
  }
  return len;
}

void criterion1() {
  const auto t0 = Clock::now();
  bool table = true;
  bool library = true;
  for (std::size_t a = 1; a < 8; ++a) {
    for (std::size_t b = 1; b < 8; ++b) {
      const auto want = std::string(oracle::kBasisTable[a - 1][b - 1]);
      if (oracle::symbol(oracle::mul(oracle::unit(a), oracle::unit(b))) != want) table = false;
      if (oracle::symbol(to_oct(from_oct(oracle::unit(a)) * from_oct(oracle::unit(b)))) != want) library = false;
    }
  }
  const auto symbols = multiplication_table_symbols();
  for (std::size_t a = 0; a < 7; ++a) {
    for (std::size_t b = 0; b < 7; ++b) {
      if (symbols[a][b] != oracle::kBasisTable[a][b]) library = false;
    }
  }
  bool antisym = true;
  bool imaginary = true;
  for (std::size_t a = 1; a < 8; ++a) {
    for (std::size_t b = 1; b < 8; ++b) {
      const auto x = to_oct(cross_by_definition(from_oct(oracle::unit(a)), from_oct(oracle::unit(b))));
      const auto y = to_oct(cross_by_definition(from_oct(oracle::unit(b)), from_oct(oracle::unit(a))));
      const auto ref = oracle::cross(oracle::unit(a), oracle::unit(b));
      for (std::size_t c = 0; c < 8; ++c) {
        if (x[c] != -y[c] || x[c] != ref[c]) antisym = false;
      }
      if (x[0] != 0.0) imaginary = false;
      ImOctonion u, v;
      u.c[a - 1] = 1.0;
      v.c[b - 1] = 1.0;
      const ImOctonion w = cross(u, v);
      for (std::size_t c = 0; c < 7; ++c) {
        if (w.c[c] != x[c + 1]) antisym = false;
      }
    }
  }
  const double t = seconds_since(t0);
  report(1, table && library && antisym && imaginary && t < 1.0,
         std::string("table ") + (library ? "exact" : "MISMATCH") + ", cross antisymmetric " + (antisym ? "yes" : "no") +
             ", imaginary " + (imaginary ? "yes" : "no") + fmt(", %.3f s", t));
}

void criterion2() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> g;
  double comp = 0.0, alt = 0.0, ref = 0.0;
  for (int trial = 0; trial < 10000; ++trial) {
    Octonion x, y;
    for (std::size_t a = 0; a < 8; ++a) {
      x.c[a] = g(rng);
      y.c[a] = g(rng);
    }
    const double scale = norm(x) * norm(y);
    comp = std::max(comp, std::abs(norm(x * y) - scale) / scale);
    const double s2 = norm(x) * norm(x) * norm(y);
    const double s3 = norm(x) * norm(y) * norm(y);
    const Octonion l1 = (x * x) * y - x * (x * y);
    const Octonion l2 = (y * x) * x - y * (x * x);
    const Octonion l3 = (x * y) * y - x * (y * y);
    alt = std::max({alt, norm(l1) / s2, norm(l2) / s2, norm(l3) / s3});
    const auto r = oracle::mul(to_oct(x), to_oct(y));
    const auto xy = to_oct(x * y);
    for (std::size_t a = 0; a < 8; ++a) ref = std::max(ref, std::abs(r[a] - xy[a]) / scale);
  }
  const double t = seconds_since(t0);
  report(2, comp <= 1e-12 && alt <= 1e-12 && ref <= 1e-12 && t < 5.0,
         fmt("composition %.2e", comp) + fmt(", alternativity %.2e", alt) + fmt(", vs reference %.2e", ref) +
             fmt(", %.3f s", t));
}

struct HelixConstraints {
  double rho, beta, relations, triple;
};

HelixConstraints helix_constraints(std::size_t n) {
  const CurveState c = preset_helix(n);
  const G2FrameField f = build_g2_frame(c, ImOctonion::unit(3));
  const FrenetResidual r = frenet_residual(f);
  const ComplexFrameField cf = complexify_frame(f);
  HelixConstraints out{r.rho_constraint_max, r.beta_constraint_max, 0.0, 0.0};
  for (std::size_t k = 0; k < cf.e1.size(); ++k) {
    const std::array<oracle::COct, 3> e = {to_coct(cf.e1[k]), to_coct(cf.e2[k]), to_coct(cf.e3[k])};
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        auto ej = e[j];
        for (auto& z : ej) z = std::conj(z);
        const std::complex<double> want = i == j ? 1.0 : 0.0;
        out.relations = std::max(out.relations, std::abs(oracle::bilinear(e[i], ej) - want));
      }
    }
    const auto t = oracle::bilinear(oracle::cross(e[0], e[1]), e[2]);
    out.triple = std::max(out.triple, std::abs(t + std::sqrt(2.0)));
  }
  return out;
}

void criterion3() {
  const HelixConstraints a = helix_constraints(512);
  const HelixConstraints b = helix_constraints(1024);
  // A ratio is only meaningful above roundoff; constraints exact to roundoff pass.
  auto refines = [](double coarse, double fine) { return fine <= 1e-13 || coarse >= 3.5 * fine; };
  const bool ok = a.rho <= 1e-6 && a.beta <= 1e-6 && refines(a.rho, b.rho) && refines(a.beta, b.beta) &&
                  a.relations <= 1e-8 && a.triple <= 1e-8;
  report(3, ok,
         fmt("rho %.2e", a.rho) + fmt(" -> %.2e", b.rho) + fmt(", beta %.2e", a.beta) + fmt(" -> %.2e", b.beta) +
             fmt(", <e_i, conj e_j> %.2e", a.relations) + fmt(", <e1 x e2, e3> + sqrt2 %.2e", a.triple));
}

void criterion4() {
  const auto t0 = Clock::now();
  std::vector<double> h, real_res, complex_res;
  for (std::size_t n : {256u, 512u, 1024u}) {
    const CurveState c = preset_helix(n);
    const G2FrameField f = build_g2_frame(c, ImOctonion::unit(3));
    const ComplexFrameField cf = complexify_frame(f);
    h.push_back(c.ds);
    real_res.push_back(frenet_residual(f).residual_max);
    complex_res.push_back(complex_frenet_residual(cf, hasimoto_fields(f, cf)).residual_max);
  }
  const double p1 = oracle::order(h, real_res), p2 = oracle::order(h, complex_res);
  const double t = seconds_since(t0);
  report(4, p1 >= 1.8 && p2 >= 1.8 && t < 10.0,
         fmt("real frame order %.2f", p1) + fmt(", complex frame order %.2f", p2) + fmt(", %.3f s", t));
}

void criterion5() {
  const CurveState c0 = preset_circle(256);
  FlowConfig cfg;
  cfg.dt = 1e-4;
  cfg.t_end = 1.0;
  const auto traj = evolve(c0, cfg);
  const CurveState& c1 = traj.back();
  const double drift = std::abs(chord_length(c1) - chord_length(c0)) / chord_length(c0);
  double shift = 0.0;
  for (std::size_t n = 0; n < c0.size(); ++n) {
    for (std::size_t a = 0; a < 7; ++a) {
      const double want = c0.samples[n].c[a] + (a == 2 ? 1.0 : 0.0);
      shift = std::max(shift, std::abs(c1.samples[n].c[a] - want));
    }
  }
  const SphereMapState u0 = preset_great_circle(256);
  const auto utraj = evolve(u0, cfg);
  const double fixed = max_diff(utraj.back().samples, u0.samples);
  report(5, drift <= 1e-6 && shift <= 1e-4 && fixed <= 1e-8,
         fmt("arclength drift %.2e", drift) + fmt(", translation error %.2e", shift) +
             fmt(", great circle moved %.2e", fixed));
}

void criterion6() {
  double worst_inst = 1e300, worst_evol = 1e300;
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    PerturbedCircleParams p;
    p.seed = seed;
    const auto make = [p](std::size_t n) { return preset_perturbed_circle(n, p); };
    const EquivalenceReport r = equivalence_study(make, 0.02, {64, 128, 256});
    for (double x : r.instantaneous_order) worst_inst = std::min(worst_inst, x);
    for (double x : r.evolved_order) worst_evol = std::min(worst_evol, x);
  }
  report(6, worst_inst >= 1.8 && worst_evol >= 1.8,
         fmt("min instantaneous order %.2f", worst_inst) + fmt(", min evolved order %.2f", worst_evol) +
             " (seeds 1..3, N 64..256)");
}

// Residual of the first equation against i phi_t = eta^2 phi for eta sech(eta s).
double soliton_residual(const NlssState& st, const NlssDerivative& d, double eta, double s_min) {
  double res = 0.0;
  for (std::size_t k = 0; k < st.size(); ++k) {
    const double s = s_min + static_cast<double>(k) * st.fields.ds;
    const std::complex<double> phi = eta / std::cosh(eta * s);
    res = std::max(res, std::abs(st.fields.phi1[k] - phi));
    res = std::max(res, std::abs(std::complex<double>(0.0, 1.0) * d.d1[k] - eta * eta * phi));
  }
  return res;
}

void criterion7() {
  const auto t0 = Clock::now();
  const NlssState st = preset_soliton(1024, 1.0, -20.0, 20.0);
  const double res = soliton_residual(st, nlss_rhs(st), 1.0, -20.0);
  NlssConfig cfg;
  cfg.dt = 1e-4;
  cfg.t_end = 0.5;
  const NlssTrajectory traj = evolve_nlss(st, cfg);
  const NlssState& last = traj.states.back();
  double profile = 0.0, m0 = 0.0, m1 = 0.0;
  for (std::size_t k = 0; k < st.size(); ++k) {
    profile = std::max(profile, std::abs(std::abs(last.fields.phi1[k]) - std::abs(st.fields.phi1[k])));
    m0 += std::norm(st.fields.phi1[k]) * st.fields.ds;
    m1 += std::norm(last.fields.phi1[k]) * st.fields.ds;
  }
  const double drift = std::abs(m1 - m0) / m0;
  const double t = seconds_since(t0);
  report(7, res <= 1e-6 && profile <= 1e-3 && drift <= 1e-6 && t < 60.0,
         fmt("rhs residual %.2e", res) + fmt(", profile change %.2e", profile) + fmt(", mass drift %.2e", drift) +
             fmt(", %.2f s", t));
}

void criterion8() {
  const auto make = [](std::size_t n) { return preset_perturbed_circle(n, PerturbedCircleParams{}); };
  const CrossValidationReport r = cross_validate(make, 0.05, {128, 256});
  const double order = r.magnitude_order.empty() ? 0.0 : r.magnitude_order.front();
  const double finest = r.grids.back().magnitude_max;
  report(8, order >= 1.0,
         fmt("discrepancy %.3e", r.grids.front().magnitude_max) + fmt(" -> %.3e", finest) + fmt(", order %.2f", order) +
             fmt("; N=256 value %.3e vs 5e-2 is a non-binding baseline", finest));
}

HasimotoFields synthetic_fields(std::size_t n) {
  HasimotoFields f;
  f.ds = 2.0 * M_PI / static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double s = static_cast<double>(k) * f.ds;
    f.phi1.emplace_back(1.0 + 0.3 * std::cos(s), 0.2 * std::sin(2.0 * s));
    f.phi2.push_back(std::polar(0.7 + 0.2 * std::sin(s), std::cos(s)));
    f.phi3.emplace_back(0.0, 0.0);
  }
  return f;
}

void criterion9() {
  // Im(H) data: a quaternionic perturbed circle evolved for a short time.
  PerturbedCircleParams p;
  p.quaternionic_only = true;
  const CurveState c = preset_perturbed_circle(128, p);
  FlowConfig cfg;
  cfg.dt = 0.1 * c.ds * c.ds;
  cfg.t_end = 0.01;
  cfg.output_times = {0.0, 0.005, 0.01};
  const auto traj = evolve(c, cfg);
  double normal = 0.0;
  for (const auto& slice : traj) {
    const SecondFundamentalForm h = second_fundamental_form(hasimoto_from_curve(slice, ImOctonion::unit(3)));
    for (std::size_t n = 0; n < h.size(); ++n) {
      for (int alpha = 4; alpha <= 7; ++alpha) {
        for (int i = 1; i <= 2; ++i) {
          for (int j = 1; j <= 2; ++j) normal = std::max(normal, std::abs(h.at(n, alpha, i, j)));
        }
      }
    }
  }
  const AssociativePlaneReport plane = associative_plane_check(traj);

  const HasimotoFields f = synthetic_fields(128);
  const SecondFundamentalForm rot = rotate_frame(second_fundamental_form(f), f);
  double tilde = 0.0;
  for (std::size_t n = 0; n < rot.size(); ++n) {
    tilde = std::max({tilde, std::abs(rot.at(n, 6, 2, 2)), std::abs(rot.at(n, 7, 2, 2))});
  }

  // h^3_11 against the embedding: |gamma_ss| projected off the sheet tangents.
  std::vector<double> hs, errs;
  for (std::size_t n : {64u, 128u, 256u}) {
    PerturbedCircleParams q;
    const CurveState g = preset_perturbed_circle(n, q);
    FlowConfig fc;
    fc.dt = 0.1 * g.ds * g.ds;
    const double tau = 8.0 * fc.dt;
    fc.t_end = 2.0 * tau;
    fc.output_times = {0.0, tau, 2.0 * tau};
    const auto sl = evolve(g, fc);
    const CurveState& mid = sl[1];
    const SecondFundamentalForm h = second_fundamental_form(hasimoto_from_curve(mid, ImOctonion::unit(3)));
    double err = 0.0;
    const auto size = mid.size();
    for (std::size_t k = 0; k < size; ++k) {
      const auto at = [&](std::ptrdiff_t m) {
        const auto len = static_cast<std::ptrdiff_t>(size);
        const std::ptrdiff_t wraps = (m >= 0 ? m : m - len + 1) / len;
        ImOctonion x = mid.samples[static_cast<std::size_t>(m - wraps * len)];
        return x + mid.period_shift * static_cast<double>(wraps);
      };
      const auto kk = static_cast<std::ptrdiff_t>(k);
      std::array<double, 7> xs{}, xss{}, xt{};
      for (std::size_t a = 0; a < 7; ++a) {
        xs[a] = (at(kk + 1).c[a] - at(kk - 1).c[a]) / (2.0 * mid.ds);
        xss[a] = (at(kk + 1).c[a] - 2.0 * at(kk).c[a] + at(kk - 1).c[a]) / (mid.ds * mid.ds);
        xt[a] = (sl[2].samples[k].c[a] - sl[0].samples[k].c[a]) / (2.0 * tau);
      }
      auto dotp = [](const std::array<double, 7>& u, const std::array<double, 7>& v) {
        double s = 0.0;
        for (std::size_t a = 0; a < 7; ++a) s += u[a] * v[a];
        return s;
      };
      auto sub = [&](std::array<double, 7>& u, const std::array<double, 7>& e) {
        const double c0 = dotp(u, e) / dotp(e, e);
        for (std::size_t a = 0; a < 7; ++a) u[a] -= c0 * e[a];
      };
      std::array<double, 7> e2 = xt, e3 = xss;
      sub(e2, xs);
      sub(e3, xs);
      sub(e3, e2);
      const double want = std::sqrt(dotp(e3, e3)) / dotp(xs, xs);
      err = std::max(err, std::abs(h.at(k, 3, 1, 1) - want));
    }
    hs.push_back(g.ds);
    errs.push_back(err);
  }
  const double slope = oracle::order(hs, errs);
  report(9, normal <= 1e-8 && plane.residual <= 1e-8 && plane.associative && tilde <= 1e-10 && slope >= 1.8,
         fmt("Im(H) normal h %.2e", normal) + fmt(", plane residual %.2e", plane.residual) +
             fmt(", plane defect %.2e", plane.associativity_defect) + fmt(", rotated h6,h7_22 %.2e", tilde) +
             fmt(", h3_11 vs embedding order %.2f", slope));
}

void criterion10() {
  const CurveState c = preset_perturbed_circle(256, PerturbedCircleParams{});
  const double diff = max_diff(rhs_modified(c, Mat7::Identity()), rhs_binormal(c));
  const NlssState st = preset_soliton(1024, 1.0, -20.0, 20.0);
  const double res = soliton_residual(st, nlss_variant_rhs(st), 1.0, -20.0);
  report(10, diff <= 1e-13 && res <= 1e-6,
         fmt("identity vs binormal %.2e", diff) + fmt(", block-A soliton residual %.2e", res));
}

}  // namespace

int main() {
  const std::vector<std::function<void()>> all = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                                  criterion6, criterion7, criterion8, criterion9, criterion10};
  for (std::size_t k = 0; k < all.size(); ++k) {
    try {
      all[k]();
    } catch (const std::exception& e) {
      report(static_cast<int>(k + 1), false, std::string("threw: ") + e.what());
    }
  }
  std::printf("%d of %zu criteria failed\n", failures, all.size());
  return failures;
}
