#include "slrlab/chisq.hpp"
#include "slrlab/detect.hpp"
#include "slrlab/hermite.hpp"
#include "slrlab/multi_index.hpp"
#include "slrlab/randmat.hpp"

#include <benchmark/benchmark.h>

#include <vector>

using namespace slrlab;

static void BM_HermiteNormalized(benchmark::State& state) {
  const auto degree = static_cast<unsigned>(state.range(0));
  double z = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(hermite_normalized(degree, z));
    z += 1e-9;
  }
}
BENCHMARK(BM_HermiteNormalized)->Arg(4)->Arg(32)->Arg(200);

static void BM_HaarOrthogonal(benchmark::State& state) {
  RandomStream rng(1, 0);
  const auto d = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(haar_orthogonal(d, rng));
}
BENCHMARK(BM_HaarOrthogonal)->Arg(16)->Arg(40)->Arg(100);

static void BM_PlantedStatistic(benchmark::State& state) {
  RandomStream rng(2, 0);
  const ModelParams p{.n = 256, .d = 16, .m = 16, .sigma = 0.5};
  for (auto _ : state) benchmark::DoNotOptimize(statistic_f(sample_planted(p, rng)));
}
BENCHMARK(BM_PlantedStatistic);

static void BM_PhiCache(benchmark::State& state) {
  constexpr std::size_t n = 2, d = 2, m = 2;
  std::vector<SparsePattern> patterns;
  for (const MultiIndex& flat : multiindex_enumerate(n * (d + m), 4)) {
    patterns.emplace_back(PatternPair::from_flat(flat, n, d, m));
  }
  HermiteCache cache(n, d, m, 4);
  RandomStream rng(3, 0);
  const Instance inst = sample_null(ModelParams{.n = n, .d = d, .m = m, .sigma = 0.0}, rng);
  for (auto _ : state) {
    cache.load(inst.x, inst.y);
    double acc = 0.0;
    for (const SparsePattern& p : patterns) acc += cache.evaluate(p);
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * patterns.size()));
}
BENCHMARK(BM_PhiCache);

static void BM_DetIntegral(benchmark::State& state) {
  const RandomStream rng(4, 0);
  for (auto _ : state) benchmark::DoNotOptimize(det_integral_mc(40, -0.5, -2, 256, rng));
}
BENCHMARK(BM_DetIntegral);
BENCHMARK_MAIN();
