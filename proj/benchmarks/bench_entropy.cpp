#include <benchmark/benchmark.h>

#include "sphmax/dimension.hpp"
#include "sphmax/entropy.hpp"

namespace {

using namespace sphmax;

void BM_ScanFullInterval(benchmark::State& state) {
  const int j = static_cast<int>(state.range(0));
  const auto spec = setgen::full_interval(1.0, 2.0);
  for (auto _ : state) {
    entropy::ScanEngine engine(spec);
    benchmark::DoNotOptimize(engine.levels(j).front().count);
  }
}
BENCHMARK(BM_ScanFullInterval)->Arg(10)->Arg(14)->Arg(18)->Unit(benchmark::kMillisecond);

void BM_ScanCantor(benchmark::State& state) {
  const int j = static_cast<int>(state.range(0));
  const auto spec = setgen::cantor_set(1.0 / 3.0, 1.0, 2.0);
  for (auto _ : state) {
    entropy::ScanEngine engine(spec);
    benchmark::DoNotOptimize(engine.levels(j).front().count);
  }
}
BENCHMARK(BM_ScanCantor)->Arg(12)->Arg(18)->Arg(22)->Unit(benchmark::kMillisecond);

void BM_BetaEstimate(benchmark::State& state) {
  const int j_max = static_cast<int>(state.range(0));
  const auto spec = setgen::sequence_set(1.0);
  for (auto _ : state) {
    entropy::ScanEngine engine(spec);
    benchmark::DoNotOptimize(dim::beta_estimate(engine, j_max).beta);
  }
}
BENCHMARK(BM_BetaEstimate)->Arg(14)->Arg(18)->Unit(benchmark::kMillisecond);

void BM_CoverCount(benchmark::State& state) {
  const auto spec = setgen::full_interval(1.0, 2.0);
  const auto sample = setgen::sample(spec, {0.0, 1.0}, static_cast<int>(state.range(0)));
  const double delta = std::exp2(-static_cast<double>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        entropy::cover_count_points(sample.points, 0.25, 0.75, delta));
  }
}
BENCHMARK(BM_CoverCount)->Arg(12)->Arg(16)->Arg(20);

}  // namespace
