#include <benchmark/benchmark.h>

#include "cgsp/estimation.hpp"
#include "cgsp/experiments.hpp"

using namespace cgsp;

namespace {

ModelTriple power_law_triple(const FrequencyGrid& grid) {
  ModelTriple m{CorrelationModel::power_law(0.7), CorrelationModel::power_law(0.8), CorrelationModel::power_law(0.6)};
  m.xy.amplitude = auto_cross_amplitude(m, grid, SpectrumPath::fft);
  return m;
}

void BM_BuildPipeline(benchmark::State& state) {
  const FrequencyGrid grid(1, static_cast<std::size_t>(state.range(0)));
  const auto m = power_law_triple(grid);
  for (auto _ : state) benchmark::DoNotOptimize(build_pipeline(m, grid));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BuildPipeline)->RangeMultiplier(4)->Range(1 << 10, 1 << 18)->Complexity();

void BM_Synthesize(benchmark::State& state) {
  const FrequencyGrid grid(1, static_cast<std::size_t>(state.range(0)));
  const auto pipe = build_pipeline(power_law_triple(grid), grid);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(synthesize(pipe.coefficients, seed++));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Synthesize)->RangeMultiplier(4)->Range(1 << 10, 1 << 18)->Complexity();

void BM_SynthesizeField(benchmark::State& state) {
  const FrequencyGrid grid(2, static_cast<std::size_t>(state.range(0)));
  ModelTriple m{CorrelationModel::power_law(1.3), CorrelationModel::power_law(1.5), CorrelationModel::power_law(1.1)};
  m.xy.amplitude = auto_cross_amplitude(m, grid, SpectrumPath::fft);
  const auto pipe = build_pipeline(m, grid);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(synthesize(pipe.coefficients, seed++));
}
BENCHMARK(BM_SynthesizeField)->Arg(64)->Arg(256)->Arg(512);

void BM_Estimate(benchmark::State& state) {
  const FrequencyGrid grid(1, static_cast<std::size_t>(state.range(0)));
  const auto pipe = build_pipeline(power_law_triple(grid), grid);
  const auto pair = synthesize(pipe.coefficients, 1);
  for (auto _ : state) {
    CorrelationAccumulator acc(grid);
    acc.add(pair);
    benchmark::DoNotOptimize(acc.result());
  }
}
BENCHMARK(BM_Estimate)->Arg(1 << 12)->Arg(1 << 16);

}  // namespace

BENCHMARK_MAIN();
