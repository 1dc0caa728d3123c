#pragma once

/// Real octonions built by iterated Cayley-Dickson doubling, the seven
/// dimensional cross product on Im(O), and the complexification C (x) O.
///
/// Basis ordering everywhere: (1, i, j, k, l, il, jl, kl). An ImOctonion stores
/// the last seven coefficients only.

#include <array>
#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace g2flow {

using Complex = std::complex<double>;
using Mat7 = Eigen::Matrix<double, 7, 7>;

inline constexpr std::size_t kOctDim = 8;
inline constexpr std::size_t kImDim = 7;

inline constexpr std::array<const char*, kOctDim> kBasisNames = {"1", "i", "j", "k", "l", "il", "jl", "kl"};

/// e_a * e_b = sign * e_index. sign == 0 encodes the zero vector.
struct SignedIndex {
  int sign = 0;
  int index = 0;

  friend constexpr bool operator==(const SignedIndex&, const SignedIndex&) = default;
};

/// Multiplication and conjugation of an algebra whose basis products are
/// signed basis elements (true for every Cayley-Dickson algebra).
template <std::size_t Dim>
struct BasisAlgebra {
  std::array<std::array<SignedIndex, Dim>, Dim> mul{};
  std::array<int, Dim> conj{};  // conj(e_a) = conj[a] * e_a

  static constexpr std::size_t dim = Dim;
};

constexpr BasisAlgebra<1> real_algebra() {
  BasisAlgebra<1> r;
  r.mul[0][0] = {1, 0};
  r.conj[0] = 1;
  return r;
}

/// One Cayley-Dickson doubling. Elements of the doubled algebra are pairs
/// (a, b) = a + b e with
///   (a, b)(c, d) = (ac - conj(d) b, d a + b conj(c)),   conj(a, b) = (conj(a), -b).
/// This is the product satisfying a(be) = (ba)e, (ae)b = (a conj(b))e and
/// (ae)(be) = -conj(b) a, hence e^2 = -1.
template <std::size_t Dim>
constexpr BasisAlgebra<2 * Dim> cd_double(const BasisAlgebra<Dim>& base) {
  BasisAlgebra<2 * Dim> out;
  constexpr int n = static_cast<int>(Dim);
  auto prod = [&](int a, int b) { return base.mul[a][b]; };
  for (int x = 0; x < 2 * n; ++x) {
    for (int y = 0; y < 2 * n; ++y) {
      const bool x_hi = x >= n;
      const bool y_hi = y >= n;
      const int p = x_hi ? x - n : x;
      const int q = y_hi ? y - n : y;
      SignedIndex r;
      if (!x_hi && !y_hi) {
        r = prod(p, q);  // (e_p, 0)(e_q, 0) = (e_p e_q, 0)
      } else if (!x_hi && y_hi) {
        const SignedIndex t = prod(q, p);  // (e_p, 0)(0, e_q) = (0, e_q e_p)
        r = {t.sign, t.index + n};
      } else if (x_hi && !y_hi) {
        const SignedIndex t = prod(p, q);  // (0, e_p)(e_q, 0) = (0, e_p conj(e_q))
        r = {t.sign * base.conj[q], t.index + n};
      } else {
        const SignedIndex t = prod(q, p);  // (0, e_p)(0, e_q) = (-conj(e_q) e_p, 0)
        r = {-t.sign * base.conj[q], t.index};
      }
      out.mul[x][y] = r;
    }
  }
  for (int a = 0; a < n; ++a) {
    out.conj[a] = base.conj[a];
    out.conj[a + n] = -1;
  }
  return out;
}

inline constexpr BasisAlgebra<2> kComplexAlgebra = cd_double(real_algebra());
inline constexpr BasisAlgebra<4> kQuaternionAlgebra = cd_double(kComplexAlgebra);
inline constexpr BasisAlgebra<8> kOctonionAlgebra = cd_double(kQuaternionAlgebra);

/// Cross product of imaginary basis elements, indices 0..6 over (i, ..., kl),
/// derived from x * y = (1/2)(conj(y) x - conj(x) y).
constexpr std::array<std::array<SignedIndex, kImDim>, kImDim> make_cross_table() {
  std::array<std::array<SignedIndex, kImDim>, kImDim> t{};
  for (int a = 1; a < 8; ++a) {
    for (int b = 1; b < 8; ++b) {
      // conj(e_b) e_a - conj(e_a) e_b with conj(e) = -e on imaginary units.
      const SignedIndex ba = kOctonionAlgebra.mul[b][a];
      const SignedIndex ab = kOctonionAlgebra.mul[a][b];
      std::array<int, 8> acc{};
      acc[ba.index] -= ba.sign;
      acc[ab.index] += ab.sign;
      SignedIndex r{0, 0};
      for (int c = 0; c < 8; ++c) {
        if (acc[c] != 0) {
          r = {acc[c] / 2, c - 1};
        }
      }
      t[a - 1][b - 1] = r;
    }
  }
  return t;
}

inline constexpr auto kCrossTable = make_cross_table();

// ---------------------------------------------------------------------------

struct ImOctonion {
  std::array<double, kImDim> c{};

  static constexpr ImOctonion unit(std::size_t a) {
    ImOctonion v;
    v.c[a] = 1.0;
    return v;
  }

  constexpr double& operator[](std::size_t a) { return c[a]; }
  constexpr double operator[](std::size_t a) const { return c[a]; }

  constexpr ImOctonion& operator+=(const ImOctonion& o) {
    for (std::size_t a = 0; a < kImDim; ++a) c[a] += o.c[a];
    return *this;
  }
  constexpr ImOctonion& operator-=(const ImOctonion& o) {
    for (std::size_t a = 0; a < kImDim; ++a) c[a] -= o.c[a];
    return *this;
  }
  constexpr ImOctonion& operator*=(double s) {
    for (auto& x : c) x *= s;
    return *this;
  }

  friend constexpr ImOctonion operator+(ImOctonion a, const ImOctonion& b) { return a += b; }
  friend constexpr ImOctonion operator-(ImOctonion a, const ImOctonion& b) { return a -= b; }
  friend constexpr ImOctonion operator-(ImOctonion a) { return a *= -1.0; }
  friend constexpr ImOctonion operator*(ImOctonion a, double s) { return a *= s; }
  friend constexpr ImOctonion operator*(double s, ImOctonion a) { return a *= s; }
  friend constexpr ImOctonion operator/(ImOctonion a, double s) { return a *= 1.0 / s; }
  friend constexpr bool operator==(const ImOctonion&, const ImOctonion&) = default;
};

struct Octonion {
  std::array<double, kOctDim> c{};

  static constexpr Octonion unit(std::size_t a) {
    Octonion v;
    v.c[a] = 1.0;
    return v;
  }
  static constexpr Octonion from_parts(double re, const ImOctonion& im) {
    Octonion v;
    v.c[0] = re;
    for (std::size_t a = 0; a < kImDim; ++a) v.c[a + 1] = im.c[a];
    return v;
  }

  [[nodiscard]] constexpr double real() const { return c[0]; }
  [[nodiscard]] constexpr ImOctonion imag() const {
    ImOctonion v;
    for (std::size_t a = 0; a < kImDim; ++a) v.c[a] = c[a + 1];
    return v;
  }

  constexpr double& operator[](std::size_t a) { return c[a]; }
  constexpr double operator[](std::size_t a) const { return c[a]; }

  constexpr Octonion& operator+=(const Octonion& o) {
    for (std::size_t a = 0; a < kOctDim; ++a) c[a] += o.c[a];
    return *this;
  }
  constexpr Octonion& operator-=(const Octonion& o) {
    for (std::size_t a = 0; a < kOctDim; ++a) c[a] -= o.c[a];
    return *this;
  }
  constexpr Octonion& operator*=(double s) {
    for (auto& x : c) x *= s;
    return *this;
  }
  friend constexpr Octonion operator+(Octonion a, const Octonion& b) { return a += b; }
  friend constexpr Octonion operator-(Octonion a, const Octonion& b) { return a -= b; }
  friend constexpr Octonion operator*(Octonion a, double s) { return a *= s; }
  friend constexpr Octonion operator*(double s, Octonion a) { return a *= s; }
  friend constexpr bool operator==(const Octonion&, const Octonion&) = default;
};

/// Element of C (x)_R O: eight complex coefficients in the octonion basis.
struct ComplexOctonion {
  std::array<Complex, kOctDim> c{};

  static ComplexOctonion from_real(const Octonion& x);
  static ComplexOctonion from_im(const ImOctonion& re, const ImOctonion& im = {});

  Complex& operator[](std::size_t a) { return c[a]; }
  const Complex& operator[](std::size_t a) const { return c[a]; }

  ComplexOctonion& operator+=(const ComplexOctonion& o) {
    for (std::size_t a = 0; a < kOctDim; ++a) c[a] += o.c[a];
    return *this;
  }
  ComplexOctonion& operator-=(const ComplexOctonion& o) {
    for (std::size_t a = 0; a < kOctDim; ++a) c[a] -= o.c[a];
    return *this;
  }
  ComplexOctonion& operator*=(Complex s) {
    for (auto& x : c) x *= s;
    return *this;
  }
  friend ComplexOctonion operator+(ComplexOctonion a, const ComplexOctonion& b) { return a += b; }
  friend ComplexOctonion operator-(ComplexOctonion a, const ComplexOctonion& b) { return a -= b; }
  friend ComplexOctonion operator*(ComplexOctonion a, Complex s) { return a *= s; }
  friend ComplexOctonion operator*(Complex s, ComplexOctonion a) { return a *= s; }
};

// --- real algebra -----------------------------------------------------------

namespace detail {

template <std::size_t A, std::size_t B, class T>
constexpr void product_term(std::array<T, kOctDim>& r, const std::array<T, kOctDim>& x, const std::array<T, kOctDim>& y) {
  constexpr SignedIndex s = kOctonionAlgebra.mul[A][B];
  if constexpr (s.sign > 0) {
    r[s.index] += x[A] * y[B];
  } else {
    r[s.index] -= x[A] * y[B];
  }
}

}  // namespace detail

template <class T>
constexpr std::array<T, kOctDim> table_multiply(const std::array<T, kOctDim>& x, const std::array<T, kOctDim>& y) {
  std::array<T, kOctDim> r{};
  // Unrolled at compile time; terms accumulate in row-major table order.
  [&]<std::size_t... K>(std::index_sequence<K...>) {
    (detail::product_term<K / kOctDim, K % kOctDim>(r, x, y), ...);
  }(std::make_index_sequence<kOctDim * kOctDim>{});
  return r;
}

constexpr Octonion operator*(const Octonion& x, const Octonion& y) { return Octonion{table_multiply(x.c, y.c)}; }

constexpr Octonion conj(const Octonion& x) {
  Octonion r = x;
  for (std::size_t a = 1; a < kOctDim; ++a) r.c[a] = -r.c[a];
  return r;
}

/// <x, y> = (1/2)(conj(x) y + conj(y) x); equals the Euclidean coefficient dot product.
constexpr double inner(const Octonion& x, const Octonion& y) {
  double s = 0.0;
  for (std::size_t a = 0; a < kOctDim; ++a) s += x.c[a] * y.c[a];
  return s;
}

double norm(const Octonion& x);

constexpr double dot(const ImOctonion& x, const ImOctonion& y) {
  double s = 0.0;
  for (std::size_t a = 0; a < kImDim; ++a) s += x.c[a] * y.c[a];
  return s;
}

double norm(const ImOctonion& x);

namespace detail {

template <std::size_t A, std::size_t B>
constexpr void cross_term(ImOctonion& r, const ImOctonion& x, const ImOctonion& y) {
  constexpr SignedIndex s = kCrossTable[A][B];
  if constexpr (s.sign != 0) r.c[s.index] += s.sign * x.c[A] * y.c[B];
}

}  // namespace detail

constexpr ImOctonion cross(const ImOctonion& x, const ImOctonion& y) {
  ImOctonion r;
  [&]<std::size_t... K>(std::index_sequence<K...>) {
    (detail::cross_term<K / kImDim, K % kImDim>(r, x, y), ...);
  }(std::make_index_sequence<kImDim * kImDim>{});
  return r;
}

/// Literal (1/2)(conj(y) x - conj(x) y) on full octonions; used to cross-check
/// the table-driven cross product.
Octonion cross_by_definition(const Octonion& x, const Octonion& y);

ImOctonion apply(const Mat7& m, const ImOctonion& x);

/// True iff m is orthogonal and m(e_a e_b) = m(e_a) m(e_b) on all 49 ordered
/// imaginary basis pairs (m extended to O by fixing 1), both within tol.
/// Throws Error(invalid_input) on non-finite entries.
bool is_g2_automorphism(const Mat7& m, double tol);

/// The G2 element sending (i, j, l) to (u1, u2, u3). Requires u1, u2 orthonormal
/// and u3 a unit vector orthogonal to u1, u2 and u1 x u2; the remaining images
/// follow from the products k = ij, il, jl, kl. Throws Error(invalid_input) when
/// the triple is not admissible to 1e-10.
Mat7 g2_from_triple(const ImOctonion& u1, const ImOctonion& u2, const ImOctonion& u3);

/// Largest deviation measured by is_g2_automorphism (orthogonality and product
/// compatibility combined).
double g2_automorphism_defect(const Mat7& m);

// --- complexification -------------------------------------------------------

ComplexOctonion operator*(const ComplexOctonion& x, const ComplexOctonion& y);

/// Complex conjugation on C (x) O; distributes over products.
ComplexOctonion cconj(const ComplexOctonion& x);

/// Octonionic conjugation extended C-linearly.
ComplexOctonion oconj(const ComplexOctonion& x);

/// C-bilinear extension of the inner product (no complex conjugation).
Complex inner(const ComplexOctonion& x, const ComplexOctonion& y);

/// C-bilinear cross product (1/2)(oconj(y) x - oconj(x) y).
ComplexOctonion cross(const ComplexOctonion& x, const ComplexOctonion& y);

double max_abs_diff(const ComplexOctonion& x, const ComplexOctonion& y);

// --- table dump -------------------------------------------------------------

/// "-il" style symbol for a signed basis element; "0" when sign == 0.
std::string basis_symbol(SignedIndex s);

/// 7x7 symbols of e_a * e_b for imaginary basis elements (rows a, columns b).
std::vector<std::vector<std::string>> multiplication_table_symbols();

/// 7x7 symbols of e_a x e_b.
std::vector<std::vector<std::string>> cross_table_symbols();

}  // namespace g2flow
