#include <benchmark/benchmark.h>

#include "sphmax/experiments.hpp"
#include "sphmax/sphere_avg.hpp"

namespace {

using namespace sphmax::sphere;

void BM_SphericalAverageArc2d(benchmark::State& state) {
  const auto rule = QuadratureRule::with_counts(2, std::int64_t(1) << state.range(0));
  const GridFunction f = BoxIndicator{0.25, 1.5, 0.01};
  const Vec x{0.01, 0.02, 0.0};
  for (auto _ : state) benchmark::DoNotOptimize(spherical_average(f, x, 1.45, rule));
}
BENCHMARK(BM_SphericalAverageArc2d)->Arg(14)->Arg(20)->Arg(26);

void BM_SphericalAverageNodes2d(benchmark::State& state) {
  const auto rule = QuadratureRule::with_counts(2, std::int64_t(1) << state.range(0));
  const GridFunction f = BoxIndicator{0.25, 1.5, 0.01};
  const Vec x{0.01, 0.02, 0.0};
  for (auto _ : state) benchmark::DoNotOptimize(spherical_average_nodes(f, x, 1.45, rule));
}
BENCHMARK(BM_SphericalAverageNodes2d)->Arg(14)->Arg(18);

void BM_SphericalAverageRings3d(benchmark::State& state) {
  const auto rule =
      QuadratureRule::with_counts(3, std::int64_t(1) << 26, std::int64_t(1) << state.range(0));
  const GridFunction f = ShellIndicator{1.49, 1.51, 0.4};
  const Vec x{0.01, 0.0, 0.02};
  for (auto _ : state) benchmark::DoNotOptimize(spherical_average(f, x, 1.5, rule));
}
BENCHMARK(BM_SphericalAverageRings3d)->Arg(10)->Arg(13);

void BM_LowerBoundExperiment(benchmark::State& state) {
  ExperimentConfig cfg;
  cfg.spec = sphmax::setgen::full_interval(1.0, 2.0);
  cfg.j_list = {static_cast<int>(state.range(0))};
  cfg.k_rule = {1, 2};
  cfg.n_samples_per_piece = 64;
  cfg.norm_samples = 1024;
  for (auto _ : state) benchmark::DoNotOptimize(lower_bound_experiment(cfg).rows.size());
}
BENCHMARK(BM_LowerBoundExperiment)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

}  // namespace
