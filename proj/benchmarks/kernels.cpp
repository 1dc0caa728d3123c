#include <benchmark/benchmark.h>

#include <random>

#include "g2flow/flow.hpp"
#include "g2flow/nlss.hpp"
#include "g2flow/octonion.hpp"
#include "g2flow/presets.hpp"

using namespace g2flow;

namespace {

void oct_mul(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  Octonion x, y;
  for (std::size_t a = 0; a < kOctDim; ++a) {
    x.c[a] = g(rng);
    y.c[a] = g(rng);
  }
  for (auto _ : state) {
    x = x * y;
    benchmark::DoNotOptimize(x);
    x = x * (1.0 / norm(x));
  }
}
BENCHMARK(oct_mul);

void im_cross(benchmark::State& state) {
  ImOctonion u = ImOctonion::unit(0), v = ImOctonion::unit(4);
  v.c[2] = 0.5;
  for (auto _ : state) {
    u = cross(u, v) + u;
    benchmark::DoNotOptimize(u);
    u = u / norm(u);
  }
}
BENCHMARK(im_cross);

void binormal_rhs(benchmark::State& state) {
  const CurveState c = preset_perturbed_circle(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(rhs_binormal(c));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(binormal_rhs)->Arg(256)->Arg(1024);

void nlss_rhs_full(benchmark::State& state) {
  const NlssState st =
      to_nlss_state(hasimoto_from_curve(preset_perturbed_circle(static_cast<std::size_t>(state.range(0))), ImOctonion::unit(3)));
  for (auto _ : state) benchmark::DoNotOptimize(nlss_rhs(st));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(nlss_rhs_full)->Arg(256)->Arg(1024);

void nlss_rhs_soliton(benchmark::State& state) {
  const NlssState st = preset_soliton(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(nlss_rhs(st));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(nlss_rhs_soliton)->Arg(1024);

}  // namespace

BENCHMARK_MAIN();
