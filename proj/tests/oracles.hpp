#pragma once

// Test-side reference implementations. Nothing here calls into g2flow, so
// agreement with the library is evidence rather than tautology.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace oracle {

/// Products of the imaginary octonion basis, rows and columns ordered i, j, k, l, il, jl, kl.
inline const std::array<std::array<const char*, 7>, 7> kBasisTable = {{
    {"-1", "k", "-j", "il", "-l", "-kl", "jl"},
    {"-k", "-1", "i", "jl", "kl", "-l", "-il"},
    {"j", "-i", "-1", "kl", "-jl", "il", "-l"},
    {"-il", "-jl", "-kl", "-1", "i", "j", "k"},
    {"l", "-kl", "jl", "-i", "-1", "-k", "j"},
    {"kl", "l", "-il", "-j", "k", "-1", "-i"},
    {"-jl", "il", "l", "-k", "-j", "i", "-1"},
}};

inline const std::array<const char*, 8> kNames = {"1", "i", "j", "k", "l", "il", "jl", "kl"};

template <class T, std::size_t N>
std::array<T, N> conj(std::array<T, N> x) {
  for (std::size_t a = 1; a < N; ++a) x[a] = -x[a];
  return x;
}

/// Cayley-Dickson product (a, b)(c, d) = (ac - conj(d) b, d a + b conj(c)).
template <class T, std::size_t N>
std::array<T, N> mul(const std::array<T, N>& x, const std::array<T, N>& y) {
  if constexpr (N == 1) {
    return {x[0] * y[0]};
  } else {
    constexpr std::size_t H = N / 2;
    std::array<T, H> a{}, b{}, c{}, d{};
    for (std::size_t m = 0; m < H; ++m) {
      a[m] = x[m];
      b[m] = x[m + H];
      c[m] = y[m];
      d[m] = y[m + H];
    }
    const auto p = mul(a, c), q = mul(conj(d), b), r = mul(d, a), s = mul(b, conj(c));
    std::array<T, N> out{};
    for (std::size_t m = 0; m < H; ++m) {
      out[m] = p[m] - q[m];
      out[m + H] = r[m] + s[m];
    }
    return out;
  }
}

using Oct = std::array<double, 8>;
using COct = std::array<std::complex<double>, 8>;

inline Oct unit(std::size_t a) {
  Oct x{};
  x[a] = 1.0;
  return x;
}

/// Symbol of a signed basis element, or "?" if x is not one.
inline std::string symbol(const Oct& x) {
  std::size_t hits = 0, at = 0;
  for (std::size_t a = 0; a < 8; ++a) {
    if (x[a] != 0.0) {
      ++hits;
      at = a;
    }
  }
  if (hits != 1 || std::abs(x[at]) != 1.0) return "?";
  return (x[at] < 0.0 ? "-" : "") + std::string(kNames[at]);
}

template <class T>
T bilinear(const std::array<T, 8>& x, const std::array<T, 8>& y) {
  T s{};
  for (std::size_t a = 0; a < 8; ++a) s += x[a] * y[a];
  return s;
}

/// x cross y = (1/2)(conj(y) x - conj(x) y).
template <class T>
std::array<T, 8> cross(const std::array<T, 8>& x, const std::array<T, 8>& y) {
  const auto p = mul(conj(y), x), q = mul(conj(x), y);
  std::array<T, 8> r{};
  for (std::size_t a = 0; a < 8; ++a) r[a] = (p[a] - q[a]) * 0.5;
  return r;
}

inline double norm(const Oct& x) { return std::sqrt(bilinear(x, x)); }

/// Least-squares slope of log(err) against log(h).
inline double order(const std::vector<double>& h, const std::vector<double>& err) {
  const std::size_t n = h.size();
  double mx = 0, my = 0;
  for (std::size_t k = 0; k < n; ++k) {
    mx += std::log(h[k]);
    my += std::log(err[k]);
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0, sxx = 0;
  for (std::size_t k = 0; k < n; ++k) {
    sxy += (std::log(h[k]) - mx) * (std::log(err[k]) - my);
    sxx += (std::log(h[k]) - mx) * (std::log(h[k]) - mx);
  }
  return sxy / sxx;
}

}  // namespace oracle
