#pragma once

/// Geometry of the surface swept by the moving curve: fundamental forms from
/// (phi1, phi2, phi3) in the frame normalization, the (E4, E7) normal rotation,
/// an embedding-based check of h^3_11 and the associative-plane test.

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "g2flow/frame.hpp"

namespace g2flow {

struct SurfaceOptions {
  double divisor_floor = 1e-8;
};

struct FirstFundamentalForm {
  std::vector<double> g_ss, g_tt;  // g_ss = 1, g_tt = 2 |phi1|^2
  bool degenerate = false;         // some g_tt below floor^2
};

FirstFundamentalForm first_fundamental_form(const HasimotoFields& fields, const SurfaceOptions& options = {});

/// Component slots of a symmetric 2x2 block.
enum HSlot : std::size_t { kH11 = 0, kH12 = 1, kH22 = 2 };

/// h[n][alpha - 3][slot] for alpha = 3..7; h_21 is h_12 by construction.
/// Entries that divide by |phi2| are NaN where |phi2| < floor (not-applicable).
struct SecondFundamentalForm {
  std::vector<std::array<std::array<double, 3>, 5>> h;
  std::vector<std::uint8_t> not_applicable;  // per sample
  bool rotated = false;
  std::vector<double> theta;  // per sample, when rotated

  [[nodiscard]] std::size_t size() const { return h.size(); }
  /// alpha in 3..7, i, j in {1, 2}.
  [[nodiscard]] double at(std::size_t n, int alpha, int i, int j) const;
};

/// Throws division-by-small when |phi1| < floor anywhere. When phi2 vanishes
/// identically every alpha = 4..7 entry is zero.
SecondFundamentalForm second_fundamental_form(const HasimotoFields& fields, const SurfaceOptions& options = {});

/// Rotates (E4, E7) by theta = arccos(h4_22 / sqrt(h4_22^2 + (9/4)|phi2|^2)).
/// Throws degenerate-rotation when the denominator is below the floor.
SecondFundamentalForm rotate_frame(const SecondFundamentalForm& h, const HasimotoFields& fields,
                                   const SurfaceOptions& options = {});

/// Sum over alpha, i, j of h^2 at sample n (the off-diagonal entry counts twice).
double squared_norm(const SecondFundamentalForm& h, std::size_t n);

/// h_11 along the third normal from the embedding: slices are three states at
/// t - dt, t, t + dt; the normal is the part of Sigma_ss orthogonal to
/// Sigma_s and Sigma_t, all by 2nd-order centered differences.
std::vector<double> embedding_h11(const std::array<CurveState, 3>& slices, double dt);

struct AssociativePlaneReport {
  std::size_t points = 0;
  bool insufficient_data = false;
  double residual = 0.0;              // max distance of a point to the best-fit affine 3-plane
  double associativity_defect = 0.0;  // |u x v - P(u x v)| for the plane basis (u, v, w)
  bool associative = false;
  std::array<ImOctonion, 3> basis{};
};

AssociativePlaneReport associative_plane_check(const std::vector<CurveState>& trajectory, double tol = 1e-8);

}  // namespace g2flow
