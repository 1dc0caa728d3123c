#pragma once

/// G2-frames along sampled unit-speed curves in Im(O), their invariants, the
/// complexified frame and the Hasimoto-type fields (phi1, phi2, phi3).

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "g2flow/octonion.hpp"
#include "g2flow/stencil.hpp"

namespace g2flow {

/// Samples gamma_0..gamma_{N-1} on a uniform arclength grid. For periodic
/// curves the extension obeys gamma_{n+N} = gamma_n + period_shift.
struct CurveState {
  std::vector<ImOctonion> samples;
  double ds = 0.0;
  Boundary boundary = Boundary::periodic;
  ImOctonion period_shift{};
  double time = 0.0;

  [[nodiscard]] std::size_t size() const { return samples.size(); }
};

struct FrameOptions {
  double kappa2_threshold = 1e-7;
  double k1_threshold = 1e-10;
  double speed_tolerance = 1e-3;  // on | |gamma_s| - 1 | with the frame stencil
};

/// Slot order of a frame: (I4, I1, I2, I3, I5, I6, I7), mirroring (l, i, j, k, il, jl, kl).
enum FrameSlot : std::size_t { kI4 = 0, kI1, kI2, kI3, kI5, kI6, kI7 };
using Frame7 = std::array<ImOctonion, 7>;

struct G2FrameField {
  std::vector<Frame7> frame;
  std::vector<double> k1, kappa2, rho1, rho2, rho3, alpha, beta1, beta2;
  std::vector<std::uint8_t> degenerate;  // 1 where the kappa2 = 0 branch was used
  double ds = 0.0;
  Boundary boundary = Boundary::periodic;

  [[nodiscard]] std::size_t size() const { return frame.size(); }
};

/// Validates N >= 8, ds > 0, finite samples and unit speed. Throws Error.
void validate_curve(const CurveState& curve, const FrameOptions& options = {});

/// gamma_s and gamma_ss with the boundary-aware stencils.
std::vector<ImOctonion> curve_d1(const CurveState& curve);
std::vector<ImOctonion> curve_d2(const CurveState& curve);

/// Throws vanishing-curvature when k1 < k1_threshold anywhere and
/// non-unit-speed when |gamma_s| deviates from 1 by more than speed_tolerance.
G2FrameField build_g2_frame(const CurveState& curve, const ImOctonion& fallback_seed, const FrameOptions& options = {});

/// Coefficient matrix of the real Frenet system in slot order.
Mat7 frenet_matrix(double k1, double kappa2, double rho1, double rho2, double rho3, double alpha, double beta1,
                   double beta2);

struct FrenetResidual {
  double residual_max = 0.0;      // max over samples and slots of |J'_check - M J|
  double antisymmetry_max = 0.0;  // max |M + M^T|
  double rho_constraint_max = 0.0;
  double beta_constraint_max = 0.0;
  double gram_max = 0.0;     // max |<I_a, I_b> - delta_ab|
  double closure_max = 0.0;  // max of |I3 - I1 x I2|, |I6 - I2 x I4|, |I7 - I3 x I4|, |I5 - I1 x I4|
};

/// J'_check is a second-order centered difference of the frame vectors,
/// independent of the fourth-order stencil that produced the invariants, so
/// the residual decays as ds^2.
FrenetResidual frenet_residual(const G2FrameField& frame);

/// The frame with every vector mapped through m (invariants copied).
G2FrameField transform_frame(const G2FrameField& frame, const Mat7& m);

// --- complexification -------------------------------------------------------

struct ComplexFrameField {
  std::vector<ImOctonion> e4;
  std::vector<ComplexOctonion> e1, e2, e3;
  std::vector<Complex> r, q, p;
  std::vector<Complex> p_from_rho3;  // (1/sqrt2) exp(-i int rho3), for the p = sqrt2 conj(q) conj(r) check
  /// Phase advance over one period: r(s+L) = r(s) exp(i twist[0]), q ... twist[1], p ... twist[2].
  std::array<double, 3> twist{};
  double ds = 0.0;
  Boundary boundary = Boundary::periodic;

  [[nodiscard]] std::size_t size() const { return e4.size(); }
};

/// Phase integrals run from s at sample gauge_index (0 by default).
ComplexFrameField complexify_frame(const G2FrameField& frame, std::size_t gauge_index = 0);

/// Fields in the frame normalization |phi1| = k1/sqrt2, |phi2| = kappa2.
/// For periodic data phi_k(s+L) = phi_k(s) exp(i twist[k]).
struct HasimotoFields {
  std::vector<Complex> phi1, phi2, phi3;
  double ds = 0.0;
  Boundary boundary = Boundary::periodic;
  std::array<double, 3> twist{};

  [[nodiscard]] std::size_t size() const { return phi1.size(); }
};

HasimotoFields hasimoto_fields(const G2FrameField& frame, const ComplexFrameField& cframe);

/// Convenience: frame, complexification and fields in one call.
HasimotoFields hasimoto_from_curve(const CurveState& curve, const ImOctonion& fallback_seed,
                                   const FrameOptions& options = {});

using CMat7 = Eigen::Matrix<Complex, 7, 7>;

/// Coefficient matrix of the complex Frenet system in the basis
/// (e4, e1, e2, e3, conj e1, conj e2, conj e3).
CMat7 complex_frenet_matrix(Complex phi1, Complex phi2, Complex phi3);

/// Largest violation of the block shape: upper-left kappa block skew-Hermitian
/// and traceless, bracket block antisymmetric with entries +-(i/sqrt2) phi1,
/// lower blocks the complex conjugates of the upper ones, and the e4 row and
/// column related by -conj transpose.
double bryant_shape_defect(const CMat7& m, Complex phi1);

struct ComplexFrenetResidual {
  double residual_max = 0.0;
  double shape_max = 0.0;
  double relations_max = 0.0;  // <e_i, conj e_j> = delta_ij and the cross relations
  double rqp_max = 0.0;        // |p - (1/sqrt2) exp(-i int rho3)|
  double table_max = 0.0;      // product and cross tables in the complex basis
};

ComplexFrenetResidual complex_frenet_residual(const ComplexFrameField& cframe, const HasimotoFields& fields);

/// Max deviation of the inner-product and cross relations of the complexified
/// frame at every sample.
double complex_relations_defect(const ComplexFrameField& cframe);

/// Max deviation of the complex multiplication and cross-product tables of
/// (e4, e1, e2, e3, conj e1, conj e2, conj e3) at sample n.
double complex_table_defect(const ComplexFrameField& cframe, std::size_t n);

/// The seven complex basis vectors at sample n, in table order.
std::array<ComplexOctonion, 7> complex_basis(const ComplexFrameField& cframe, std::size_t n);

}  // namespace g2flow
