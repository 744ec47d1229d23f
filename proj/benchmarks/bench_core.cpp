#include <benchmark/benchmark.h>

#include "chdyn/dynamics.hpp"
#include "chdyn/maps.hpp"
#include "chdyn/polyroots.hpp"
#include "chdyn/probe.hpp"
#include "chdyn/render.hpp"

using namespace chdyn;

static void BM_EvalO(benchmark::State& state) {
  const auto spec = MapSpec::o_family(static_cast<int>(state.range(0)), 10.0);
  ExtendedComplex z = Complex(0.3, 0.7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval(spec, z));
  }
}
BENCHMARK(BM_EvalO)->DenseRange(2, 6, 2);

static void BM_ChStep(benchmark::State& state) {
  const Polynomial g{-1.0, 0.0, 0.0, 1.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(ch_step(g, 10.0, Complex(0.3, 0.7)));
  }
}
BENCHMARK(BM_ChStep);

static void BM_FindRoots(benchmark::State& state) {
  std::vector<Complex> roots;
  for (int k = 0; k < state.range(0); ++k) roots.emplace_back(0.1 * k - 1, 0.05 * k * k - 0.3);
  const auto p = Polynomial::from_roots(roots);
  for (auto _ : state) {
    benchmark::DoNotOptimize(find_roots(p));
  }
}
BENCHMARK(BM_FindRoots)->Arg(4)->Arg(8)->Arg(12);

static void BM_ClassifyOrbit(benchmark::State& state) {
  const auto spec = MapSpec::o_family(3, 10.0);
  const auto roots = roots_of_unity(3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(classify_orbit(spec, Complex(1.6215, 0.0002), roots, {}));
  }
}
BENCHMARK(BM_ClassifyOrbit);

static void BM_ClassifyGrid(benchmark::State& state) {
  const auto spec = MapSpec::o_family(3, 10.0);
  const auto roots = roots_of_unity(3);
  const int side = static_cast<int>(state.range(0));
  const GridWindow w{-10, 10, -10, 10, side, side};
  for (auto _ : state) {
    benchmark::DoNotOptimize(classify_grid(spec, w, roots, {256, 1e-9, std::nullopt}, {1}));
  }
  state.SetItemsProcessed(state.iterations() * side * side);
}
BENCHMARK(BM_ClassifyGrid)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

static void BM_ParameterPlane(benchmark::State& state) {
  RenderConfig cfg;
  cfg.exec.workers = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(classify_parameter(3, {-1, 4, -2.5, 2.5, 128, 128}, cfg));
  }
}
BENCHMARK(BM_ParameterPlane)->Unit(benchmark::kMillisecond);

static void BM_Probe(benchmark::State& state) {
  ProbeConfig cfg;
  cfg.resolution = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(connectivity_probe(3, 10.0, cfg));
  }
}
BENCHMARK(BM_Probe)->Arg(256)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
