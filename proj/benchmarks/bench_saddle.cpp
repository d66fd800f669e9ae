#include <benchmark/benchmark.h>

#include <cmath>

#include "pocdma/efficiency.hpp"
#include "pocdma/entropy.hpp"
#include "pocdma/gaussian_tail.hpp"
#include "pocdma/saddle.hpp"

static void BM_HazardRatio(benchmark::State& state) {
  double t = -35.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pocdma::hazard_ratio(t));
    t += 0.001;
    if (t > 35.0) t = -35.0;
  }
}
BENCHMARK(BM_HazardRatio);

static void BM_SolveSaddle(benchmark::State& state) {
  const double beta = std::pow(10.0, static_cast<double>(state.range(0)));
  const pocdma::SystemPoint pt{beta, 1.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(pocdma::solve_saddle(pt));
  }
}
BENCHMARK(BM_SolveSaddle)->DenseRange(-2, 3, 1);

static void BM_OptimizeGamma(benchmark::State& state) {
  const double beta = std::pow(10.0, static_cast<double>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(pocdma::optimize_gamma(beta));
  }
}
BENCHMARK(BM_OptimizeGamma)->DenseRange(-2, 2, 2);

static void BM_SweepBeta(benchmark::State& state) {
  const auto grid = pocdma::log_grid(0.01, 100.0, state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(pocdma::sweep_beta(grid, true));
  }
}
BENCHMARK(BM_SweepBeta)->Arg(10)->Arg(50);

BENCHMARK_MAIN();
