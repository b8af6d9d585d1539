#include <benchmark/benchmark.h>

#include "coe/gaussian.hpp"
#include "coe/syk2_analytic.hpp"
#include "coe/syk2_numeric.hpp"

namespace {

void BM_AvgCoeExact(benchmark::State& state) {
  const int v = static_cast<int>(state.range(0));
  const coe::gaussian::Bipartition bp(v, v / 2);
  for (auto _ : state) benchmark::DoNotOptimize(coe::gaussian::avg_coe_exact(bp));
}
BENCHMARK(BM_AvgCoeExact)->Arg(10)->Arg(30)->Arg(60)->Unit(benchmark::kMillisecond);

void BM_AvgCoeOracle(benchmark::State& state) {
  const int v = static_cast<int>(state.range(0));
  const coe::gaussian::Bipartition bp(v, v / 2);
  for (auto _ : state) benchmark::DoNotOptimize(coe::gaussian::avg_coe_oracle(bp));
}
BENCHMARK(BM_AvgCoeOracle)->Arg(10)->Arg(30)->Arg(60)->Unit(benchmark::kMillisecond);

void BM_VarianceCoe(benchmark::State& state) {
  const int v = static_cast<int>(state.range(0));
  const coe::gaussian::Bipartition bp(v, v / 2);
  for (auto _ : state) benchmark::DoNotOptimize(coe::gaussian::variance_coe(bp));
}
BENCHMARK(BM_VarianceCoe)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_CoefficientSeries(benchmark::State& state) {
  const double f = static_cast<double>(state.range(0)) / 100.0;
  for (auto _ : state) benchmark::DoNotOptimize(coe::syk2::coefficient_series(f).value);
}
BENCHMARK(BM_CoefficientSeries)->Arg(10)->Arg(30)->Arg(45);

void BM_CoefficientQuadrature(benchmark::State& state) {
  const double f = static_cast<double>(state.range(0)) / 100.0;
  for (auto _ : state) benchmark::DoNotOptimize(coe::syk2::coefficient_quadrature(f));
}
BENCHMARK(BM_CoefficientQuadrature)->Arg(10)->Arg(30)->Arg(45);

void BM_CoefficientClosedForm(benchmark::State& state) {
  const double f = static_cast<double>(state.range(0)) / 100.0;
  for (auto _ : state) benchmark::DoNotOptimize(coe::syk2::coefficient_closed_form(f));
}
BENCHMARK(BM_CoefficientClosedForm)->Arg(10)->Arg(30)->Unit(benchmark::kMillisecond);

void BM_HaarSample(benchmark::State& state) {
  const coe::gaussian::Bipartition bp(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)) / 2);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(coe::gaussian::haar_sample_spectrum(bp, ++seed));
}
BENCHMARK(BM_HaarSample)->Arg(10)->Arg(40);

void BM_EnsembleAverage(benchmark::State& state) {
  const int v = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(coe::syk2::ensemble_average(v, v / 2, 2, 100, true, 1).coe.mean);
  }
}
BENCHMARK(BM_EnsembleAverage)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
