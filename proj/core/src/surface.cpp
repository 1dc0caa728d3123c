#include "g2flow/surface.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

#include "g2flow/error.hpp"

namespace g2flow {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;
const double kNaN = std::numeric_limits<double>::quiet_NaN();

void validate(const HasimotoFields& f) {
  const std::size_t n = f.size();
  if (n < 8 || f.phi2.size() != n || f.phi3.size() != n) throw Error(ErrorCode::invalid_input, "invalid field arrays");
  if (!(f.ds > 0.0)) throw Error(ErrorCode::invalid_input, "ds must be positive");
}

}  // namespace

double SecondFundamentalForm::at(std::size_t n, int alpha, int i, int j) const {
  if (alpha < 3 || alpha > 7 || i < 1 || i > 2 || j < 1 || j > 2) throw Error(ErrorCode::invalid_input, "index out of range");
  const std::size_t slot = (i == 1 && j == 1) ? kH11 : (i == 2 && j == 2) ? kH22 : kH12;
  return h.at(n)[static_cast<std::size_t>(alpha - 3)][slot];
}

FirstFundamentalForm first_fundamental_form(const HasimotoFields& f, const SurfaceOptions& options) {
  validate(f);
  FirstFundamentalForm g;
  g.g_ss.assign(f.size(), 1.0);
  g.g_tt.resize(f.size());
  for (std::size_t n = 0; n < f.size(); ++n) {
    g.g_tt[n] = 2.0 * std::norm(f.phi1[n]);
    if (g.g_tt[n] < options.divisor_floor * options.divisor_floor) g.degenerate = true;
  }
  return g;
}

SecondFundamentalForm second_fundamental_form(const HasimotoFields& f, const SurfaceOptions& options) {
  validate(f);
  const std::size_t size = f.size();
  for (std::size_t n = 0; n < size; ++n) {
    if (std::abs(f.phi1[n]) < options.divisor_floor) {
      throw Error(ErrorCode::division_by_small, "|phi1| below the divisor floor at sample " + std::to_string(n));
    }
  }
  const bool phi2_zero = std::all_of(f.phi2.begin(), f.phi2.end(), [](Complex z) { return z == Complex{}; });
  const auto s1 = diff1_twisted(f.phi1, f.ds, f.boundary, f.twist[0]);
  const auto ss1 = diff2_twisted(f.phi1, f.ds, f.boundary, f.twist[0]);
  const auto s2 = diff1_twisted(f.phi2, f.ds, f.boundary, f.twist[1]);

  SecondFundamentalForm out;
  out.h.assign(size, {});
  out.not_applicable.assign(size, 0);
  for (std::size_t n = 0; n < size; ++n) {
    auto& h = out.h[n];
    const Complex p1 = f.phi1[n], p2 = f.phi2[n], p3 = f.phi3[n];
    const double m1 = std::abs(p1), m2 = std::abs(p2);
    const Complex l1 = s1[n] / p1;
    h[0][kH11] = kSqrt2 * m1;
    h[0][kH12] = kSqrt2 * l1.imag();
    h[0][kH22] = -(std::conj(p1) * ss1[n]).real() / (kSqrt2 * m1 * m1 * m1) + m2 * m2 / (kSqrt2 * m1);
    if (phi2_zero) continue;
    h[2][kH12] = -m2;
    if (m2 < options.divisor_floor) {
      out.not_applicable[n] = 1;
      h[1][kH22] = kNaN;
      h[2][kH22] = kNaN;
      h[3][kH22] = kNaN;
      h[4][kH22] = kNaN;
      continue;
    }
    const double m2s = (std::conj(p2) * s2[n]).real() / m2;
    const Complex w = p1 * p1 * p1 * p2 * p2 * p3;
    const double d = kSqrt2 * m1 * m1 * m1 * m1 * m2;
    h[1][kH22] = -(2.0 * l1.real() * m2 + m2s) / (kSqrt2 * m1);
    h[2][kH22] = -(2.0 * l1.imag() * m2 * m2 + (std::conj(p2) * s2[n]).imag()) / (kSqrt2 * m1 * m2);
    h[3][kH22] = w.real() / d;
    h[4][kH22] = w.imag() / d - 1.5 * m2;
  }
  return out;
}

SecondFundamentalForm rotate_frame(const SecondFundamentalForm& h, const HasimotoFields& f,
                                   const SurfaceOptions& options) {
  if (h.size() != f.size()) throw Error(ErrorCode::invalid_input, "form and fields differ in length");
  SecondFundamentalForm out = h;
  out.rotated = true;
  out.theta.assign(h.size(), 0.0);
  for (std::size_t n = 0; n < h.size(); ++n) {
    if (h.not_applicable[n]) {
      out.theta[n] = kNaN;
      continue;
    }
    const double h4 = h.h[n][1][kH22];
    const double b = 1.5 * std::abs(f.phi2[n]);
    const double r = std::hypot(h4, b);
    if (r < options.divisor_floor) {
      throw Error(ErrorCode::degenerate_rotation, "h4_22 and |phi2| vanish at sample " + std::to_string(n));
    }
    const double c = std::clamp(h4 / r, -1.0, 1.0);
    const double s = b / r;
    out.theta[n] = std::acos(c);
    for (std::size_t slot = 0; slot < 3; ++slot) {
      const double a4 = h.h[n][1][slot];
      const double a7 = h.h[n][4][slot];
      out.h[n][1][slot] = c * a4 - s * a7;
      out.h[n][4][slot] = s * a4 + c * a7;
    }
  }
  return out;
}

double squared_norm(const SecondFundamentalForm& h, std::size_t n) {
  double total = 0.0;
  for (const auto& block : h.h.at(n)) total += block[kH11] * block[kH11] + 2.0 * block[kH12] * block[kH12] + block[kH22] * block[kH22];
  return total;
}

std::vector<double> embedding_h11(const std::array<CurveState, 3>& slices, double dt) {
  const std::size_t size = slices[1].size();
  if (slices[0].size() != size || slices[2].size() != size || size < 8 || !(dt > 0.0)) {
    throw Error(ErrorCode::invalid_input, "embedding oracle needs three equal slices and dt > 0");
  }
  const CurveState& mid = slices[1];
  const double h = mid.ds;
  auto at = [&](std::ptrdiff_t k) { return ShiftedPeriodic<ImOctonion>{mid.samples, mid.period_shift}(k); };
  std::vector<double> out(size);
  for (std::size_t n = 0; n < size; ++n) {
    const auto k = static_cast<std::ptrdiff_t>(n);
    const ImOctonion xs = (at(k + 1) - at(k - 1)) / (2.0 * h);
    const ImOctonion xss = (at(k + 1) - 2.0 * at(k) + at(k - 1)) / (h * h);
    const ImOctonion xt = (slices[2].samples[n] - slices[0].samples[n]) / (2.0 * dt);
    const ImOctonion e1 = xs / norm(xs);
    ImOctonion e2 = xt - dot(xt, e1) * e1;
    const double n2 = norm(e2);
    if (n2 > 0.0) e2 = e2 / n2;
    ImOctonion e3 = xss - dot(xss, e1) * e1 - dot(xss, e2) * e2;
    const double n3 = norm(e3);
    out[n] = n3 > 0.0 ? dot(xss, e3 / n3) : 0.0;
  }
  return out;
}

AssociativePlaneReport associative_plane_check(const std::vector<CurveState>& trajectory, double tol) {
  AssociativePlaneReport r;
  Eigen::Matrix<double, 7, 1> mean = Eigen::Matrix<double, 7, 1>::Zero();
  for (const auto& c : trajectory) {
    for (const auto& x : c.samples) {
      for (std::size_t a = 0; a < 7; ++a) mean(static_cast<Eigen::Index>(a)) += x.c[a];
      ++r.points;
    }
  }
  if (r.points < 4) {
    r.insufficient_data = true;
    return r;
  }
  mean /= static_cast<double>(r.points);
  Eigen::Matrix<double, 7, 7> cov = Eigen::Matrix<double, 7, 7>::Zero();
  for (const auto& c : trajectory) {
    for (const auto& x : c.samples) {
      Eigen::Matrix<double, 7, 1> v;
      for (std::size_t a = 0; a < 7; ++a) v(static_cast<Eigen::Index>(a)) = x.c[a];
      v -= mean;
      cov += v * v.transpose();
    }
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, 7, 7>> eig(cov);
  // Eigenvalues ascend; the plane is spanned by the last three eigenvectors.
  for (std::size_t b = 0; b < 3; ++b) {
    const auto col = eig.eigenvectors().col(static_cast<Eigen::Index>(6 - b));
    for (std::size_t a = 0; a < 7; ++a) r.basis[b].c[a] = col(static_cast<Eigen::Index>(a));
  }
  ImOctonion centre;
  for (std::size_t a = 0; a < 7; ++a) centre.c[a] = mean(static_cast<Eigen::Index>(a));
  for (const auto& c : trajectory) {
    for (const auto& x : c.samples) {
      ImOctonion d = x - centre;
      for (const auto& e : r.basis) d = d - dot(d, e) * e;
      r.residual = std::max(r.residual, norm(d));
    }
  }
  const ImOctonion uv = cross(r.basis[0], r.basis[1]);
  ImOctonion off = uv;
  for (const auto& e : r.basis) off = off - dot(uv, e) * e;
  r.associativity_defect = norm(off);
  r.associative = r.associativity_defect <= tol;
  return r;
}

}  // namespace g2flow
