#pragma once

/// Named analytic initial conditions.

#include <cstdint>
#include <vector>

#include "g2flow/flow.hpp"
#include "g2flow/frame.hpp"
#include "g2flow/nlss.hpp"

namespace g2flow {

/// gamma(s) = s i on [0, length] with clamped ends (k1 = 0 everywhere).
CurveState preset_line(std::size_t n, double length = 1.0);

/// Unit circle in span{i, j}: gamma(s) = cos s i + sin s j, periodic.
CurveState preset_circle(std::size_t n);

/// Helix a cos(s/c) i + a sin(s/c) j + b (s/c) k, c = sqrt(a^2 + b^2), one
/// period of length 2 pi c; the periodic extension shifts by 2 pi b k.
CurveState preset_helix(std::size_t n, double a = 1.0, double b = 1.0);

struct PerturbedCircleParams {
  double amplitude = 0.1;
  std::uint64_t seed = 7;
  std::vector<int> modes = {2, 3};
  bool quaternionic_only = false;  // restrict the perturbation to span{i, j, k}
};

/// Closed curve x(theta) = cos theta i + sin theta j
///   + sum_m sum_c amplitude cos(m theta + phase_{m,c}) / m^2 e_c
/// over the perturbed coordinates, with phases drawn from the seed, resampled
/// at N points uniformly spaced in arclength.
CurveState preset_perturbed_circle(std::size_t n, const PerturbedCircleParams& params = {});

/// u(s) = cos(omega s) i + sin(omega s) j on one period 2 pi / omega.
SphereMapState preset_great_circle(std::size_t n, double omega = 1.0);

/// phi1 = eta sech(eta s) exp(-i eta^2 t), phi2 = phi3 = 0 on the periodic grid
/// s_n = s_min + n (s_max - s_min) / N, in the NLSS normalization.
NlssState preset_soliton(std::size_t n, double eta = 1.0, double s_min = -20.0, double s_max = 20.0, double t = 0.0);

/// phi1 = c exp(i mu s), phi2 = phi3 = 0 on [0, length) with the matching twist.
NlssState preset_plane_wave(std::size_t n, Complex c, double mu, double length = 2.0 * 3.141592653589793);

/// phi1 = amplitude exp(-(s - center)^2 / (2 width^2) + i k0 s), phi2 = phi3 = 0.
NlssState preset_gaussian(std::size_t n, double amplitude = 1.0, double width = 1.0, double k0 = 0.0,
                          double s_min = -20.0, double s_max = 20.0, double center = 0.0);

/// The block matrix rotating the (l, il) coordinate plane by 90 degrees.
Mat7 block_a_matrix();

/// Arclength grid helper: s_n for a curve preset.
std::vector<double> grid(std::size_t n, double ds, double s0 = 0.0);

}  // namespace g2flow
