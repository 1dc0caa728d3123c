#include <doctest.h>

#include <random>

#include "g2flow/error.hpp"
#include "g2flow/octonion.hpp"
#include "g2flow/presets.hpp"
#include "oracles.hpp"

using namespace g2flow;

namespace {

Octonion random_octonion(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Octonion x;
  for (auto& c : x.c) c = g(rng);
  return x;
}

ImOctonion random_im(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  ImOctonion x;
  for (auto& c : x.c) c = g(rng);
  return x;
}

}  // namespace

TEST_CASE("basis products reproduce the reference table") {
  const auto symbols = multiplication_table_symbols();
  REQUIRE(symbols.size() == 7);
  for (std::size_t a = 0; a < 7; ++a) {
    for (std::size_t b = 0; b < 7; ++b) {
      CHECK(symbols[a][b] == oracle::kBasisTable[a][b]);
      CHECK(oracle::symbol((Octonion::unit(a + 1) * Octonion::unit(b + 1)).c) == oracle::kBasisTable[a][b]);
    }
  }
}

TEST_CASE("products agree with an independent doubling construction") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 200; ++k) {
    const Octonion x = random_octonion(rng), y = random_octonion(rng);
    const auto want = oracle::mul(x.c, y.c);
    const Octonion got = x * y;
    for (std::size_t a = 0; a < 8; ++a) CHECK(got.c[a] == doctest::Approx(want[a]).epsilon(1e-13));
  }
}

TEST_CASE("conjugate, norm and the composition law") {
  std::mt19937_64 rng(12);
  const Octonion x = random_octonion(rng), y = random_octonion(rng);
  const Octonion xx = x * conj(x);
  CHECK(xx.c[0] == doctest::Approx(norm(x) * norm(x)));
  for (std::size_t a = 1; a < 8; ++a) CHECK(std::abs(xx.c[a]) < 1e-12);
  CHECK(norm(x * y) == doctest::Approx(norm(x) * norm(y)).epsilon(1e-13));
  const Octonion lhs = conj(x * y), rhs = conj(y) * conj(x);
  for (std::size_t a = 0; a < 8; ++a) CHECK(lhs.c[a] == doctest::Approx(rhs.c[a]).epsilon(1e-13));
}

TEST_CASE("octonions are not associative") {
  const Octonion i = Octonion::unit(1), j = Octonion::unit(2), l = Octonion::unit(4);
  const Octonion a = (i * j) * l, b = i * (j * l);
  CHECK(oracle::symbol(a.c) == "kl");
  CHECK(oracle::symbol(b.c) == "-kl");
}

TEST_CASE("cross product is antisymmetric, orthogonal and matches the definition") {
  std::mt19937_64 rng(13);
  for (int k = 0; k < 50; ++k) {
    const ImOctonion u = random_im(rng), v = random_im(rng);
    const ImOctonion w = cross(u, v);
    const ImOctonion w2 = cross(v, u);
    for (std::size_t a = 0; a < 7; ++a) CHECK(w.c[a] == doctest::Approx(-w2.c[a]));
    CHECK(std::abs(dot(w, u)) < 1e-12);
    CHECK(std::abs(dot(w, v)) < 1e-12);
    const double uv = dot(u, v);
    CHECK(norm(w) * norm(w) == doctest::Approx(dot(u, u) * dot(v, v) - uv * uv).epsilon(1e-12));
    oracle::Oct uo{}, vo{};
    for (std::size_t a = 0; a < 7; ++a) {
      uo[a + 1] = u.c[a];
      vo[a + 1] = v.c[a];
    }
    const auto ref = oracle::cross(uo, vo);
    CHECK(std::abs(ref[0]) < 1e-12);
    for (std::size_t a = 0; a < 7; ++a) CHECK(w.c[a] == doctest::Approx(ref[a + 1]).epsilon(1e-12));
  }
}

TEST_CASE("cross table symbols are antisymmetric") {
  const auto t = cross_table_symbols();
  for (std::size_t a = 0; a < 7; ++a) {
    CHECK(t[a][a] == "0");
    for (std::size_t b = 0; b < 7; ++b) {
      if (a == b) continue;
      const std::string& s = t[a][b];
      const std::string& r = t[b][a];
      CHECK((s[0] == '-' ? s.substr(1) : "-" + s) == r);
    }
  }
}

TEST_CASE("complex octonion product matches the doubling construction") {
  std::mt19937_64 rng(14);
  std::normal_distribution<double> g;
  ComplexOctonion x, y;
  for (std::size_t a = 0; a < 8; ++a) {
    x.c[a] = {g(rng), g(rng)};
    y.c[a] = {g(rng), g(rng)};
  }
  const ComplexOctonion p = x * y;
  oracle::COct xo, yo;
  for (std::size_t a = 0; a < 8; ++a) {
    xo[a] = x.c[a];
    yo[a] = y.c[a];
  }
  const auto want = oracle::mul(xo, yo);
  for (std::size_t a = 0; a < 8; ++a) CHECK(std::abs(p.c[a] - want[a]) < 1e-12);
  const Complex ip = inner(x, y);
  CHECK(std::abs(ip - oracle::bilinear(xo, yo)) < 1e-12);
}

TEST_CASE("automorphisms of the cross product") {
  std::mt19937_64 rng(15);
  const ImOctonion u1 = random_im(rng);
  ImOctonion u2 = random_im(rng);
  const ImOctonion e1 = u1 / norm(u1);
  u2 = u2 - dot(u2, e1) * e1;
  const ImOctonion e2 = u2 / norm(u2);
  ImOctonion u3 = random_im(rng);
  const ImOctonion e12 = cross(e1, e2);
  u3 = u3 - dot(u3, e1) * e1 - dot(u3, e2) * e2 - dot(u3, e12) * e12;
  const Mat7 g = g2_from_triple(e1, e2, u3 / norm(u3));
  CHECK(is_g2_automorphism(g, 1e-10));
  const ImOctonion a = random_im(rng), b = random_im(rng);
  const ImOctonion lhs = apply(g, cross(a, b)), rhs = cross(apply(g, a), apply(g, b));
  for (std::size_t c = 0; c < 7; ++c) CHECK(lhs.c[c] == doctest::Approx(rhs.c[c]).epsilon(1e-12));

  CHECK(g2_automorphism_defect(Mat7::Identity()) == 0.0);
  const Mat7 block = block_a_matrix();
  CHECK((block.transpose() * block - Mat7::Identity()).norm() < 1e-15);
  CHECK_FALSE(is_g2_automorphism(block, 1e-10));
}
