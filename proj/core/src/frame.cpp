#include "g2flow/frame.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <string_view>

#include "g2flow/error.hpp"

namespace g2flow {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;
const Complex kI(0.0, 1.0);

ImOctonion project_out(ImOctonion x, const ImOctonion& unit) { return x - dot(x, unit) * unit; }

std::vector<ImOctonion> slot(const G2FrameField& f, std::size_t s) {
  std::vector<ImOctonion> out(f.size());
  for (std::size_t n = 0; n < f.size(); ++n) out[n] = f.frame[n][s];
  return out;
}

double norm8(const ComplexOctonion& x) {
  double s = 0.0;
  for (const auto& c : x.c) s += std::norm(c);
  return std::sqrt(s);
}

}  // namespace

void validate_curve(const CurveState& curve, const FrameOptions& options) {
  if (curve.size() < 8) throw Error(ErrorCode::invalid_input, "curve needs at least 8 samples");
  if (!(curve.ds > 0.0) || !std::isfinite(curve.ds)) throw Error(ErrorCode::invalid_input, "curve spacing must be positive");
  for (const auto& p : curve.samples) {
    for (double c : p.c) {
      if (!std::isfinite(c)) throw Error(ErrorCode::invalid_input, "curve contains non-finite samples");
    }
  }
  const auto d1 = curve_d1(curve);
  for (std::size_t n = 0; n < d1.size(); ++n) {
    const double dev = std::abs(norm(d1[n]) - 1.0);
    if (dev > options.speed_tolerance) {
      throw Error(ErrorCode::non_unit_speed,
                  "curve is not unit speed at sample " + std::to_string(n) + " (|speed - 1| = " + std::to_string(dev) + ")");
    }
  }
}

std::vector<ImOctonion> curve_d1(const CurveState& curve) {
  return diff1<ImOctonion>(curve.size(), curve.ds, curve.boundary,
                           ShiftedPeriodic<ImOctonion>{curve.samples, curve.period_shift});
}

std::vector<ImOctonion> curve_d2(const CurveState& curve) {
  return diff2<ImOctonion>(curve.size(), curve.ds, curve.boundary,
                           ShiftedPeriodic<ImOctonion>{curve.samples, curve.period_shift});
}

G2FrameField build_g2_frame(const CurveState& curve, const ImOctonion& fallback_seed, const FrameOptions& options) {
  validate_curve(curve, options);
  const std::size_t n_samples = curve.size();
  const auto g1 = curve_d1(curve);
  const auto g2 = curve_d2(curve);

  G2FrameField f;
  f.ds = curve.ds;
  f.boundary = curve.boundary;
  f.frame.resize(n_samples);
  f.k1.resize(n_samples);
  f.kappa2.resize(n_samples);
  f.degenerate.assign(n_samples, 0);

  std::vector<ImOctonion> i1(n_samples);
  for (std::size_t n = 0; n < n_samples; ++n) {
    const ImOctonion i4 = g1[n] / norm(g1[n]);
    const double k1 = norm(g2[n]);
    if (!(k1 >= options.k1_threshold)) {
      throw Error(ErrorCode::vanishing_curvature, "k1 vanishes at sample " + std::to_string(n));
    }
    ImOctonion t = project_out(g2[n], i4);
    i1[n] = t / norm(t);
    f.k1[n] = k1;
    f.frame[n][kI4] = i4;
    f.frame[n][kI1] = i1[n];
    f.frame[n][kI5] = cross(i1[n], i4);
  }

  const auto i1s = diff1(i1, curve.ds, curve.boundary);
  ImOctonion previous_i2{};
  bool have_previous = false;
  for (std::size_t n = 0; n < n_samples; ++n) {
    auto& fr = f.frame[n];
    ImOctonion v = i1s[n];
    v = project_out(v, fr[kI4]);
    v = project_out(v, fr[kI5]);
    v = project_out(v, fr[kI1]);
    const double kappa2 = norm(v);
    ImOctonion i2;
    if (kappa2 > options.kappa2_threshold) {
      i2 = v / kappa2;
      f.kappa2[n] = kappa2;
    } else {
      f.kappa2[n] = 0.0;
      f.degenerate[n] = 1;
      std::array<ImOctonion, 8> candidates{};
      candidates[0] = have_previous ? previous_i2 : fallback_seed;
      candidates[1] = fallback_seed;
      for (std::size_t a = 0; a < 6; ++a) candidates[a + 2] = ImOctonion::unit(a);
      bool found = false;
      for (const auto& c : candidates) {
        ImOctonion x = project_out(project_out(project_out(c, fr[kI4]), fr[kI1]), fr[kI5]);
        const double len = norm(x);
        if (len > 1e-6) {
          i2 = x / len;
          found = true;
          break;
        }
      }
      if (!found) throw Error(ErrorCode::invalid_input, "no admissible I2 in the degenerate branch");
    }
    previous_i2 = i2;
    have_previous = true;
    fr[kI2] = i2;
    fr[kI3] = cross(fr[kI1], i2);
    fr[kI6] = cross(i2, fr[kI4]);
    fr[kI7] = cross(fr[kI3], fr[kI4]);
  }

  const auto d_i1 = i1s;
  const auto d_i2 = diff1(slot(f, kI2), curve.ds, curve.boundary);
  const auto d_i3 = diff1(slot(f, kI3), curve.ds, curve.boundary);
  f.rho1.resize(n_samples);
  f.rho2.resize(n_samples);
  f.rho3.resize(n_samples);
  f.alpha.resize(n_samples);
  f.beta1.resize(n_samples);
  f.beta2.resize(n_samples);
  for (std::size_t n = 0; n < n_samples; ++n) {
    const auto& fr = f.frame[n];
    f.rho1[n] = dot(d_i1[n], fr[kI5]);
    f.rho2[n] = dot(d_i2[n], fr[kI6]);
    f.rho3[n] = dot(d_i3[n], fr[kI7]);
    f.alpha[n] = dot(d_i2[n], fr[kI3]);
    f.beta1[n] = dot(d_i2[n], fr[kI7]);
    f.beta2[n] = dot(d_i3[n], fr[kI6]);
  }
  return f;
}

Mat7 frenet_matrix(double k1, double kappa2, double rho1, double rho2, double rho3, double alpha, double beta1,
                   double beta2) {
  Mat7 m = Mat7::Zero();
  // Slot order (I4, I1, I2, I3, I5, I6, I7).
  m(0, 1) = k1;
  m(1, 0) = -k1, m(1, 2) = kappa2, m(1, 4) = rho1;
  m(2, 1) = -kappa2, m(2, 3) = alpha, m(2, 5) = rho2, m(2, 6) = beta1;
  m(3, 2) = -alpha, m(3, 5) = beta2, m(3, 6) = rho3;
  m(4, 1) = -rho1, m(4, 5) = kappa2;
  m(5, 2) = -rho2, m(5, 3) = -beta2, m(5, 4) = -kappa2, m(5, 6) = alpha;
  m(6, 2) = -beta1, m(6, 3) = -rho3, m(6, 5) = -alpha;
  return m;
}

FrenetResidual frenet_residual(const G2FrameField& frame) {
  FrenetResidual out;
  const std::size_t n_samples = frame.size();
  std::array<std::vector<ImOctonion>, 7> d;
  for (std::size_t s = 0; s < 7; ++s) {
    const auto v = slot(frame, s);
    d[s] = diff1_o2<ImOctonion>(v.size(), frame.ds, frame.boundary, ShiftedPeriodic<ImOctonion>{v, ImOctonion{}});
  }
  for (std::size_t n = 0; n < n_samples; ++n) {
    const auto& fr = frame.frame[n];
    const Mat7 m = frenet_matrix(frame.k1[n], frame.kappa2[n], frame.rho1[n], frame.rho2[n], frame.rho3[n],
                                 frame.alpha[n], frame.beta1[n], frame.beta2[n]);
    out.antisymmetry_max = std::max(out.antisymmetry_max, (m + m.transpose()).cwiseAbs().maxCoeff());
    for (std::size_t a = 0; a < 7; ++a) {
      ImOctonion r = d[a][n];
      for (std::size_t b = 0; b < 7; ++b) {
        const double c = m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
        if (c != 0.0) r -= c * fr[b];
      }
      out.residual_max = std::max(out.residual_max, norm(r));
      for (std::size_t b = 0; b < 7; ++b) {
        out.gram_max = std::max(out.gram_max, std::abs(dot(fr[a], fr[b]) - (a == b ? 1.0 : 0.0)));
      }
    }
    out.rho_constraint_max = std::max(out.rho_constraint_max, std::abs(frame.rho1[n] + frame.rho2[n] + frame.rho3[n]));
    out.beta_constraint_max = std::max(out.beta_constraint_max, std::abs(frame.beta1[n] - frame.beta2[n] + frame.k1[n]));
    out.closure_max = std::max({out.closure_max, norm(fr[kI5] - cross(fr[kI1], fr[kI4])),
                                norm(fr[kI3] - cross(fr[kI1], fr[kI2])), norm(fr[kI6] - cross(fr[kI2], fr[kI4])),
                                norm(fr[kI7] - cross(fr[kI3], fr[kI4]))});
  }
  return out;
}

G2FrameField transform_frame(const G2FrameField& frame, const Mat7& m) {
  G2FrameField out = frame;
  for (auto& fr : out.frame) {
    for (auto& v : fr) v = apply(m, v);
  }
  return out;
}

ComplexFrameField complexify_frame(const G2FrameField& frame, std::size_t gauge_index) {
  const std::size_t n_samples = frame.size();
  if (gauge_index >= n_samples) throw Error(ErrorCode::invalid_input, "gauge index outside the grid");
  auto integral = [&](const std::vector<double>& rho) {
    auto c = cumulative_trapezoid(rho, frame.ds);
    const double origin = c[gauge_index];
    for (auto& x : c) x -= origin;
    return c;
  };
  const auto int1 = integral(frame.rho1);
  const auto int2 = integral(frame.rho2);
  const auto int3 = integral(frame.rho3);

  ComplexFrameField cf;
  cf.ds = frame.ds;
  cf.boundary = frame.boundary;
  cf.e4.resize(n_samples);
  cf.e1.resize(n_samples);
  cf.e2.resize(n_samples);
  cf.e3.resize(n_samples);
  cf.r.resize(n_samples);
  cf.q.resize(n_samples);
  cf.p.resize(n_samples);
  cf.p_from_rho3.resize(n_samples);
  const double amp = 1.0 / kSqrt2;
  for (std::size_t n = 0; n < n_samples; ++n) {
    const auto& fr = frame.frame[n];
    cf.r[n] = std::polar(amp, -int1[n]);
    cf.q[n] = std::polar(amp, -int2[n]);
    cf.p[n] = kSqrt2 * std::conj(cf.q[n]) * std::conj(cf.r[n]);
    cf.p_from_rho3[n] = std::polar(amp, -int3[n]);
    cf.e4[n] = fr[kI4];
    cf.e1[n] = ComplexOctonion::from_im(fr[kI1], -fr[kI5]) * cf.r[n];
    cf.e2[n] = ComplexOctonion::from_im(fr[kI2], -fr[kI6]) * cf.q[n];
    cf.e3[n] = ComplexOctonion::from_im(fr[kI3], -fr[kI7]) * (-cf.p[n]);
  }
  if (frame.boundary == Boundary::periodic) {
    const double p1 = periodic_integral(frame.rho1, frame.ds);
    const double p2 = periodic_integral(frame.rho2, frame.ds);
    cf.twist = {-p1, -p2, p1 + p2};
  }
  return cf;
}

HasimotoFields hasimoto_fields(const G2FrameField& frame, const ComplexFrameField& cframe) {
  const std::size_t n_samples = frame.size();
  HasimotoFields h;
  h.ds = frame.ds;
  h.boundary = frame.boundary;
  h.phi1.resize(n_samples);
  h.phi2.resize(n_samples);
  h.phi3.resize(n_samples);
  for (std::size_t n = 0; n < n_samples; ++n) {
    const Complex r = cframe.r[n];
    const Complex q = cframe.q[n];
    h.phi1[n] = frame.k1[n] * std::conj(r);
    h.phi2[n] = 2.0 * frame.kappa2[n] * r * std::conj(q);
    h.phi3[n] = -kSqrt2 * q * q * r * Complex(2.0 * frame.alpha[n], frame.beta1[n] + frame.beta2[n]);
  }
  const double tr = cframe.twist[0];
  const double tq = cframe.twist[1];
  h.twist = {-tr, tr - tq, 2.0 * tq + tr};
  return h;
}

HasimotoFields hasimoto_from_curve(const CurveState& curve, const ImOctonion& fallback_seed, const FrameOptions& options) {
  const auto frame = build_g2_frame(curve, fallback_seed, options);
  return hasimoto_fields(frame, complexify_frame(frame));
}

CMat7 complex_frenet_matrix(Complex phi1, Complex phi2, Complex phi3) {
  CMat7 m = CMat7::Zero();
  const Complex b = kI / kSqrt2;
  const Complex c1 = std::conj(phi1), c2 = std::conj(phi2), c3 = std::conj(phi3);
  m(0, 1) = phi1, m(0, 4) = c1;
  m(1, 0) = -c1, m(1, 2) = phi2;
  m(2, 1) = -c2, m(2, 3) = phi3, m(2, 6) = -b * phi1;
  m(3, 2) = -c3, m(3, 5) = b * phi1;
  m(4, 0) = -phi1, m(4, 5) = c2;
  m(5, 3) = b * c1, m(5, 4) = -phi2, m(5, 6) = c3;
  m(6, 2) = -b * c1, m(6, 5) = -phi3;
  return m;
}

double bryant_shape_defect(const CMat7& m, Complex phi1) {
  using Eigen::Index;
  const Eigen::Matrix<Complex, 3, 3> kappa = m.block<3, 3>(1, 1);
  const Eigen::Matrix<Complex, 3, 3> bracket = m.block<3, 3>(1, 4);
  double d = (kappa + kappa.adjoint()).cwiseAbs().maxCoeff();
  d = std::max(d, std::abs(kappa.trace()));
  d = std::max(d, (bracket + bracket.transpose()).cwiseAbs().maxCoeff());
  Eigen::Matrix<Complex, 3, 3> expected = Eigen::Matrix<Complex, 3, 3>::Zero();
  expected(1, 2) = -kI / kSqrt2 * phi1;
  expected(2, 1) = kI / kSqrt2 * phi1;
  d = std::max(d, (bracket - expected).cwiseAbs().maxCoeff());
  d = std::max(d, (m.block<3, 3>(4, 4) - kappa.conjugate()).cwiseAbs().maxCoeff());
  d = std::max(d, (m.block<3, 3>(4, 1) - bracket.conjugate()).cwiseAbs().maxCoeff());
  for (Index a = 1; a < 4; ++a) {
    d = std::max(d, std::abs(m(0, a + 3) - std::conj(m(0, a))));
    d = std::max(d, std::abs(m(a, 0) + std::conj(m(0, a))));
    d = std::max(d, std::abs(m(a + 3, 0) + m(0, a)));
  }
  d = std::max(d, std::abs(m(0, 0)));
  return d;
}

std::array<ComplexOctonion, 7> complex_basis(const ComplexFrameField& cframe, std::size_t n) {
  return {ComplexOctonion::from_im(cframe.e4[n]), cframe.e1[n],        cframe.e2[n],        cframe.e3[n],
          cconj(cframe.e1[n]),                   cconj(cframe.e2[n]), cconj(cframe.e3[n])};
}

double complex_relations_defect(const ComplexFrameField& cframe) {
  double d = 0.0;
  for (std::size_t n = 0; n < cframe.size(); ++n) {
    const auto e = complex_basis(cframe, n);
    for (std::size_t a = 1; a <= 3; ++a) {
      d = std::max(d, std::abs(inner(e[0], e[a])));
      d = std::max(d, max_abs_diff(cross(e[a], e[0]), e[a] * kI));
      for (std::size_t b = 1; b <= 3; ++b) {
        d = std::max(d, std::abs(inner(e[a], e[b])));
        d = std::max(d, std::abs(inner(e[a + 3], e[b + 3])));
        d = std::max(d, std::abs(inner(e[a], e[b + 3]) - (a == b ? 1.0 : 0.0)));
      }
    }
    d = std::max(d, std::abs(inner(cross(e[1], e[2]), e[3]) + kSqrt2));
  }
  return d;
}

namespace {

// Entries of the products in the complex basis. Symbols: 1, e4, e1..e3,
// f1..f3 (the complex conjugates), e0 = -1 - i e4 and f0 = -1 + i e4.
// Coefficient prefixes: i, -i, r2 (sqrt2), -r2; a bare '-' negates.
constexpr std::array<std::array<std::string_view, 7>, 7> kProductTable = {{
    {"-1", "-i e1", "-i e2", "-i e3", "i f1", "i f2", "i f3"},
    {"i e1", "0", "-r2 f3", "r2 f2", "e0", "0", "0"},
    {"i e2", "r2 f3", "0", "-r2 f1", "0", "e0", "0"},
    {"i e3", "-r2 f2", "r2 f1", "0", "0", "0", "e0"},
    {"-i f1", "f0", "0", "0", "0", "-r2 e3", "r2 e2"},
    {"-i f2", "0", "f0", "0", "r2 e3", "0", "-r2 e1"},
    {"-i f3", "0", "0", "f0", "-r2 e2", "r2 e1", "0"},
}};

constexpr std::array<std::array<std::string_view, 7>, 7> kCrossTableComplex = {{
    {"0", "-i e1", "-i e2", "-i e3", "i f1", "i f2", "i f3"},
    {"i e1", "0", "-r2 f3", "r2 f2", "-i e4", "0", "0"},
    {"i e2", "r2 f3", "0", "-r2 f1", "0", "-i e4", "0"},
    {"i e3", "-r2 f2", "r2 f1", "0", "0", "0", "-i e4"},
    {"-i f1", "i e4", "0", "0", "0", "-r2 e3", "r2 e2"},
    {"-i f2", "0", "i e4", "0", "r2 e3", "0", "-r2 e1"},
    {"-i f3", "0", "0", "i e4", "-r2 e2", "r2 e1", "0"},
}};

ComplexOctonion table_entry(std::string_view entry, const std::array<ComplexOctonion, 7>& e) {
  Complex coef = 1.0;
  std::string_view symbol = entry;
  if (const auto space = entry.find(' '); space != std::string_view::npos) {
    const std::string_view c = entry.substr(0, space);
    symbol = entry.substr(space + 1);
    if (c == "i") coef = kI;
    else if (c == "-i") coef = -kI;
    else if (c == "r2") coef = kSqrt2;
    else if (c == "-r2") coef = -kSqrt2;
  } else if (!symbol.empty() && symbol.front() == '-') {
    coef = -1.0;
    symbol.remove_prefix(1);
  }
  ComplexOctonion v;
  if (symbol == "0") return v;
  if (symbol == "1") {
    v.c[0] = 1.0;
  } else if (symbol == "e0" || symbol == "f0") {
    v.c[0] = -1.0;
    v += e[0] * (symbol == "e0" ? -kI : kI);
  } else if (symbol == "e4") {
    v = e[0];
  } else {
    const std::size_t idx = static_cast<std::size_t>(symbol[1] - '0');
    v = symbol[0] == 'e' ? e[idx] : e[idx + 3];
  }
  return v * coef;
}

}  // namespace

double complex_table_defect(const ComplexFrameField& cframe, std::size_t n) {
  const auto e = complex_basis(cframe, n);
  double d = 0.0;
  for (std::size_t a = 0; a < 7; ++a) {
    for (std::size_t b = 0; b < 7; ++b) {
      d = std::max(d, max_abs_diff(e[a] * e[b], table_entry(kProductTable[a][b], e)));
      d = std::max(d, max_abs_diff(cross(e[a], e[b]), table_entry(kCrossTableComplex[a][b], e)));
    }
  }
  return d;
}

ComplexFrenetResidual complex_frenet_residual(const ComplexFrameField& cframe, const HasimotoFields& fields) {
  const std::size_t n_samples = cframe.size();
  if (fields.size() != n_samples) throw Error(ErrorCode::invalid_input, "frame and fields differ in length");
  ComplexFrenetResidual out;

  std::array<std::vector<ComplexOctonion>, 7> basis;
  for (auto& b : basis) b.resize(n_samples);
  for (std::size_t n = 0; n < n_samples; ++n) {
    const auto e = complex_basis(cframe, n);
    for (std::size_t a = 0; a < 7; ++a) basis[a][n] = e[a];
  }
  const std::array<double, 7> twist = {0.0,           cframe.twist[0],  cframe.twist[1],  cframe.twist[2],
                                       -cframe.twist[0], -cframe.twist[1], -cframe.twist[2]};
  std::array<std::vector<ComplexOctonion>, 7> d;
  for (std::size_t a = 0; a < 7; ++a) {
    d[a] = diff1_o2<ComplexOctonion>(n_samples, cframe.ds, cframe.boundary,
                                     TwistedPeriodic<ComplexOctonion>{basis[a], twist[a]});
  }

  for (std::size_t n = 0; n < n_samples; ++n) {
    const CMat7 m = complex_frenet_matrix(fields.phi1[n], fields.phi2[n], fields.phi3[n]);
    out.shape_max = std::max(out.shape_max, bryant_shape_defect(m, fields.phi1[n]));
    for (std::size_t a = 0; a < 7; ++a) {
      ComplexOctonion r = d[a][n];
      for (std::size_t b = 0; b < 7; ++b) {
        const Complex c = m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
        if (c != Complex(0.0)) r -= basis[b][n] * c;
      }
      out.residual_max = std::max(out.residual_max, norm8(r));
    }
    out.rqp_max = std::max(out.rqp_max, std::abs(cframe.p[n] - cframe.p_from_rho3[n]));
  }
  out.relations_max = complex_relations_defect(cframe);
  for (std::size_t n = 0; n < n_samples; n += std::max<std::size_t>(1, n_samples / 8)) {
    out.table_max = std::max(out.table_max, complex_table_defect(cframe, n));
  }
  return out;
}

}  // namespace g2flow
