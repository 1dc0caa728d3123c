#pragma once

/// Finite-difference stencils on a uniform grid.
///
/// Periodic data: 4th-order centered differences, with values outside [0, N)
/// supplied by an accessor so that quasi-periodic data (a curve closing up to a
/// translation, a field closing up to a unit phase) is differentiated
/// consistently. Clamped data: 4th-order in the interior, 2nd-order centered at
/// the samples next to the ends, 2nd-order one-sided at the ends.

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace g2flow {

enum class Boundary { periodic, clamped };

/// Accessor for a periodic array whose extension satisfies
/// v[n + N] = v[n] + shift.
template <class T>
struct ShiftedPeriodic {
  const std::vector<T>& v;
  T shift{};

  T operator()(std::ptrdiff_t n) const {
    const auto size = static_cast<std::ptrdiff_t>(v.size());
    std::ptrdiff_t wraps = 0;
    while (n < 0) {
      n += size;
      --wraps;
    }
    while (n >= size) {
      n -= size;
      ++wraps;
    }
    T out = v[static_cast<std::size_t>(n)];
    if (wraps != 0) out += static_cast<double>(wraps) * shift;
    return out;
  }
};

/// Accessor for a periodic array whose extension satisfies
/// v[n + N] = v[n] * exp(i * twist).
template <class T>
struct TwistedPeriodic {
  const std::vector<T>& v;
  double twist = 0.0;

  T operator()(std::ptrdiff_t n) const {
    const auto size = static_cast<std::ptrdiff_t>(v.size());
    std::ptrdiff_t wraps = 0;
    while (n < 0) {
      n += size;
      --wraps;
    }
    while (n >= size) {
      n -= size;
      ++wraps;
    }
    T out = v[static_cast<std::size_t>(n)];
    if (wraps != 0 && twist != 0.0) out *= std::polar(1.0, static_cast<double>(wraps) * twist);
    return out;
  }
};

/// First derivative. `at(n)` must be valid for n in [-2, N+1] when periodic
/// and for n in [0, N) when clamped. Requires N >= 5.
template <class T, class At>
std::vector<T> diff1(std::size_t size, double h, Boundary boundary, const At& at) {
  std::vector<T> out(size);
  const auto n_total = static_cast<std::ptrdiff_t>(size);
  const double c1 = 2.0 / (3.0 * h);
  const double c2 = 1.0 / (12.0 * h);
  auto interior = [&](std::ptrdiff_t n) { return (at(n + 1) - at(n - 1)) * c1 - (at(n + 2) - at(n - 2)) * c2; };
  if (boundary == Boundary::periodic) {
    for (std::ptrdiff_t n = 0; n < n_total; ++n) out[static_cast<std::size_t>(n)] = interior(n);
    return out;
  }
  const double half = 0.5 / h;
  for (std::ptrdiff_t n = 2; n + 2 < n_total; ++n) out[static_cast<std::size_t>(n)] = interior(n);
  out[1] = (at(2) - at(0)) * half;
  out[size - 2] = (at(n_total - 1) - at(n_total - 3)) * half;
  out[0] = (at(0) * -3.0 + at(1) * 4.0 - at(2)) * half;
  out[size - 1] = (at(n_total - 1) * 3.0 - at(n_total - 2) * 4.0 + at(n_total - 3)) * half;
  return out;
}

/// Second derivative with the same layout rules as diff1.
template <class T, class At>
std::vector<T> diff2(std::size_t size, double h, Boundary boundary, const At& at) {
  std::vector<T> out(size);
  const auto n_total = static_cast<std::ptrdiff_t>(size);
  const double inv = 1.0 / (h * h);
  auto interior = [&](std::ptrdiff_t n) {
    return ((at(n + 1) + at(n - 1)) * (16.0 / 12.0) - (at(n + 2) + at(n - 2)) * (1.0 / 12.0) - at(n) * 2.5) * inv;
  };
  if (boundary == Boundary::periodic) {
    for (std::ptrdiff_t n = 0; n < n_total; ++n) out[static_cast<std::size_t>(n)] = interior(n);
    return out;
  }
  for (std::ptrdiff_t n = 2; n + 2 < n_total; ++n) out[static_cast<std::size_t>(n)] = interior(n);
  out[1] = (at(2) + at(0) - at(1) * 2.0) * inv;
  out[size - 2] = (at(n_total - 1) + at(n_total - 3) - at(n_total - 2) * 2.0) * inv;
  out[0] = (at(0) * 2.0 - at(1) * 5.0 + at(2) * 4.0 - at(3)) * inv;
  out[size - 1] = (at(n_total - 1) * 2.0 - at(n_total - 2) * 5.0 + at(n_total - 3) * 4.0 - at(n_total - 4)) * inv;
  return out;
}

/// Second-order first derivative: centered everywhere when periodic, one-sided
/// at clamped ends. Used as an independent check differentiator for residuals.
template <class T, class At>
std::vector<T> diff1_o2(std::size_t size, double h, Boundary boundary, const At& at) {
  std::vector<T> out(size);
  const auto n_total = static_cast<std::ptrdiff_t>(size);
  const double half = 0.5 / h;
  if (boundary == Boundary::periodic) {
    for (std::ptrdiff_t n = 0; n < n_total; ++n) out[static_cast<std::size_t>(n)] = (at(n + 1) - at(n - 1)) * half;
    return out;
  }
  for (std::ptrdiff_t n = 1; n + 1 < n_total; ++n) out[static_cast<std::size_t>(n)] = (at(n + 1) - at(n - 1)) * half;
  out[0] = (at(0) * -3.0 + at(1) * 4.0 - at(2)) * half;
  out[size - 1] = (at(n_total - 1) * 3.0 - at(n_total - 2) * 4.0 + at(n_total - 3)) * half;
  return out;
}

/// Sixth-order centered first derivative for periodic data (`at(n)` valid for
/// n in [-3, N+2]); clamped data falls back to diff1.
template <class T, class At>
std::vector<T> diff1_o6(std::size_t size, double h, Boundary boundary, const At& at) {
  if (boundary != Boundary::periodic) return diff1<T>(size, h, boundary, at);
  std::vector<T> out(size);
  const double c1 = 0.75 / h, c2 = 0.15 / h, c3 = 1.0 / (60.0 * h);
  for (std::ptrdiff_t n = 0; n < static_cast<std::ptrdiff_t>(size); ++n) {
    out[static_cast<std::size_t>(n)] =
        (at(n + 1) - at(n - 1)) * c1 - (at(n + 2) - at(n - 2)) * c2 + (at(n + 3) - at(n - 3)) * c3;
  }
  return out;
}

/// Sixth-order centered second derivative, same layout rules as diff1_o6.
template <class T, class At>
std::vector<T> diff2_o6(std::size_t size, double h, Boundary boundary, const At& at) {
  if (boundary != Boundary::periodic) return diff2<T>(size, h, boundary, at);
  std::vector<T> out(size);
  const double inv = 1.0 / (h * h);
  for (std::ptrdiff_t n = 0; n < static_cast<std::ptrdiff_t>(size); ++n) {
    out[static_cast<std::size_t>(n)] = ((at(n + 1) + at(n - 1)) * 1.5 - (at(n + 2) + at(n - 2)) * 0.15 +
                                        (at(n + 3) + at(n - 3)) * (1.0 / 90.0) - at(n) * (49.0 / 18.0)) *
                                       inv;
  }
  return out;
}

/// Plain periodic or clamped derivative of an array (no shift, no twist).
template <class T>
std::vector<T> diff1(const std::vector<T>& v, double h, Boundary boundary) {
  return diff1<T>(v.size(), h, boundary, ShiftedPeriodic<T>{v, T{}});
}

template <class T>
std::vector<T> diff2(const std::vector<T>& v, double h, Boundary boundary) {
  return diff2<T>(v.size(), h, boundary, ShiftedPeriodic<T>{v, T{}});
}

template <class T>
std::vector<T> diff1_twisted(const std::vector<T>& v, double h, Boundary boundary, double twist) {
  return diff1<T>(v.size(), h, boundary, TwistedPeriodic<T>{v, twist});
}

template <class T>
std::vector<T> diff2_twisted(const std::vector<T>& v, double h, Boundary boundary, double twist) {
  return diff2<T>(v.size(), h, boundary, TwistedPeriodic<T>{v, twist});
}

/// Cumulative trapezoid from sample 0: out[0] = 0, out[n] = integral over [s_0, s_n].
template <class T>
std::vector<T> cumulative_trapezoid(const std::vector<T>& f, double h) {
  std::vector<T> out(f.size());
  if (f.empty()) return out;
  out[0] = T{};
  for (std::size_t n = 1; n < f.size(); ++n) out[n] = out[n - 1] + (f[n - 1] + f[n]) * (0.5 * h);
  return out;
}

/// Integral over one full period of periodic samples (the trapezoid rule
/// including the closing interval).
template <class T>
T periodic_integral(const std::vector<T>& f, double h) {
  T s{};
  for (const auto& x : f) s += x;
  return s * h;
}

}  // namespace g2flow
