#include <benchmark/benchmark.h>

#include "pocdma/counting.hpp"
#include "pocdma/link.hpp"
#include "pocdma/spreading.hpp"

static void BM_GenSpreading(benchmark::State& state) {
  const int k = state.range(0);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pocdma::gen_spreading(k, k, seed++));
  }
}
BENCHMARK(BM_GenSpreading)->Arg(12)->Arg(20)->Arg(30);

static void BM_CountCodewords(benchmark::State& state) {
  const int k = state.range(0);
  const auto inst = pocdma::gen_spreading(k, k, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pocdma::count_codewords(inst, k));
  }
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << k));
}
BENCHMARK(BM_CountCodewords)->Arg(12)->Arg(16)->Arg(20);

static void BM_TransmitDetect(benchmark::State& state) {
  pocdma::LinkConfig cfg;
  cfg.instance = pocdma::gen_spreading(12, 12, 5);
  cfg.k_prime = 12;
  cfg.noise_sigma = 0.1;
  cfg.frames = state.range(0);
  cfg.seed = 11;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pocdma::transmit_detect(cfg));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TransmitDetect)->Arg(1000)->Arg(10000);

BENCHMARK_MAIN();
