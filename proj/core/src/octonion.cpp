#include "g2flow/octonion.hpp"

#include <algorithm>
#include <cmath>

#include "g2flow/error.hpp"

namespace g2flow {

// Construction-time self checks of the generated tables.
static_assert(kQuaternionAlgebra.mul[1][2] == SignedIndex{1, 3}, "i j = k");
static_assert(kQuaternionAlgebra.mul[2][1] == SignedIndex{-1, 3}, "j i = -k");
static_assert(kOctonionAlgebra.mul[4][4] == SignedIndex{-1, 0}, "l l = -1");
static_assert(kOctonionAlgebra.mul[1][4] == SignedIndex{1, 5}, "i l = il");
static_assert(kOctonionAlgebra.mul[5][6] == SignedIndex{-1, 3}, "(il)(jl) = -k");

double norm(const Octonion& x) { return std::sqrt(inner(x, x)); }

double norm(const ImOctonion& x) { return std::sqrt(dot(x, x)); }

Octonion cross_by_definition(const Octonion& x, const Octonion& y) {
  Octonion r = conj(y) * x - conj(x) * y;
  return r * 0.5;
}

ImOctonion apply(const Mat7& m, const ImOctonion& x) {
  ImOctonion r;
  for (std::size_t a = 0; a < kImDim; ++a) {
    double s = 0.0;
    for (std::size_t b = 0; b < kImDim; ++b) s += m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) * x.c[b];
    r.c[a] = s;
  }
  return r;
}

namespace {

Octonion extend(const Mat7& m, const Octonion& x) {
  return Octonion::from_parts(x.real(), apply(m, x.imag()));
}

}  // namespace

double g2_automorphism_defect(const Mat7& m) {
  if (!m.allFinite()) throw Error(ErrorCode::invalid_input, "automorphism test: non-finite matrix entry");
  double defect = (m.transpose() * m - Mat7::Identity()).cwiseAbs().maxCoeff();
  for (std::size_t a = 1; a < kOctDim; ++a) {
    for (std::size_t b = 1; b < kOctDim; ++b) {
      const Octonion ea = Octonion::unit(a);
      const Octonion eb = Octonion::unit(b);
      const Octonion lhs = extend(m, ea * eb);
      const Octonion rhs = extend(m, ea) * extend(m, eb);
      for (std::size_t c = 0; c < kOctDim; ++c) defect = std::max(defect, std::abs(lhs.c[c] - rhs.c[c]));
    }
  }
  return defect;
}

bool is_g2_automorphism(const Mat7& m, double tol) { return g2_automorphism_defect(m) <= tol; }

Mat7 g2_from_triple(const ImOctonion& u1, const ImOctonion& u2, const ImOctonion& u3) {
  const ImOctonion u12 = cross(u1, u2);
  const double admissible = std::max({std::abs(dot(u1, u1) - 1.0), std::abs(dot(u2, u2) - 1.0),
                                      std::abs(dot(u3, u3) - 1.0), std::abs(dot(u1, u2)), std::abs(dot(u1, u3)),
                                      std::abs(dot(u2, u3)), std::abs(dot(u12, u3))});
  if (!(admissible <= 1e-10)) throw Error(ErrorCode::invalid_input, "g2_from_triple: triple is not admissible");
  // x * y = x cross y for orthogonal imaginary x, y.
  const std::array<ImOctonion, kImDim> images = {u1, u2, u12, u3, cross(u1, u3), cross(u2, u3), cross(u12, u3)};
  Mat7 m;
  for (std::size_t a = 0; a < kImDim; ++a) {
    for (std::size_t b = 0; b < kImDim; ++b) m(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a)) = images[a].c[b];
  }
  return m;
}

ComplexOctonion ComplexOctonion::from_real(const Octonion& x) {
  ComplexOctonion r;
  for (std::size_t a = 0; a < kOctDim; ++a) r.c[a] = x.c[a];
  return r;
}

ComplexOctonion ComplexOctonion::from_im(const ImOctonion& re, const ImOctonion& im) {
  ComplexOctonion r;
  for (std::size_t a = 0; a < kImDim; ++a) r.c[a + 1] = Complex(re.c[a], im.c[a]);
  return r;
}

ComplexOctonion operator*(const ComplexOctonion& x, const ComplexOctonion& y) {
  return ComplexOctonion{table_multiply(x.c, y.c)};
}

ComplexOctonion cconj(const ComplexOctonion& x) {
  ComplexOctonion r;
  for (std::size_t a = 0; a < kOctDim; ++a) r.c[a] = std::conj(x.c[a]);
  return r;
}

ComplexOctonion oconj(const ComplexOctonion& x) {
  ComplexOctonion r = x;
  for (std::size_t a = 1; a < kOctDim; ++a) r.c[a] = -r.c[a];
  return r;
}

Complex inner(const ComplexOctonion& x, const ComplexOctonion& y) {
  Complex s = 0.0;
  for (std::size_t a = 0; a < kOctDim; ++a) s += x.c[a] * y.c[a];
  return s;
}

ComplexOctonion cross(const ComplexOctonion& x, const ComplexOctonion& y) {
  ComplexOctonion r = oconj(y) * x - oconj(x) * y;
  return r * Complex(0.5);
}

double max_abs_diff(const ComplexOctonion& x, const ComplexOctonion& y) {
  double m = 0.0;
  for (std::size_t a = 0; a < kOctDim; ++a) m = std::max(m, std::abs(x.c[a] - y.c[a]));
  return m;
}

std::string basis_symbol(SignedIndex s) {
  if (s.sign == 0) return "0";
  std::string out = s.sign < 0 ? "-" : "";
  out += kBasisNames[static_cast<std::size_t>(s.index)];
  return out;
}

std::vector<std::vector<std::string>> multiplication_table_symbols() {
  std::vector<std::vector<std::string>> t(kImDim, std::vector<std::string>(kImDim));
  for (std::size_t a = 0; a < kImDim; ++a) {
    for (std::size_t b = 0; b < kImDim; ++b) t[a][b] = basis_symbol(kOctonionAlgebra.mul[a + 1][b + 1]);
  }
  return t;
}

std::vector<std::vector<std::string>> cross_table_symbols() {
  std::vector<std::vector<std::string>> t(kImDim, std::vector<std::string>(kImDim));
  for (std::size_t a = 0; a < kImDim; ++a) {
    for (std::size_t b = 0; b < kImDim; ++b) {
      SignedIndex s = kCrossTable[a][b];
      if (s.sign != 0) s.index += 1;  // cross table indexes Im(O); symbols index O
      t[a][b] = basis_symbol(s);
    }
  }
  return t;
}

}  // namespace g2flow
