#include <benchmark/benchmark.h>

#include "cubicalforms/cubical.hpp"
#include "cubicalforms/qchar.hpp"
#include "cubicalforms/ssq.hpp"
#include "cubicalforms/weierstrass.hpp"

using namespace cubicalforms;

static void BM_series_multiply(benchmark::State& state) {
  WeierstrassCurve c = WeierstrassCurve::symbolic();
  int order = static_cast<int>(state.range(0));
  TSeries f = fgl(c, order);
  for (auto _ : state) benchmark::DoNotOptimize(f * f);
}
BENCHMARK(BM_series_multiply)->Arg(6)->Arg(8)->Arg(10);

static void BM_group_law(benchmark::State& state) {
  WeierstrassCurve c = WeierstrassCurve::symbolic();
  int order = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fgl(c, order));
}
BENCHMARK(BM_group_law)->Arg(6)->Arg(9);

static void BM_cubical_structure(benchmark::State& state) {
  WeierstrassCurve c = WeierstrassCurve::symbolic();
  int order = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cubical_structure(c, order));
}
BENCHMARK(BM_cubical_structure)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

static void BM_theta_product(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(phi_product(n, n / 2 + 1));
}
BENCHMARK(BM_theta_product)->Arg(10)->Arg(16);

static void BM_fixed_point_window(benchmark::State& state) {
  Window w{state.range(0), state.range(0) / 3, 4};
  for (auto _ : state) benchmark::DoNotOptimize(page_homology(1, w));
  state.SetLabel("kmax=" + std::to_string(w.kmax));
}
BENCHMARK(BM_fixed_point_window)->Arg(12)->Arg(24)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
