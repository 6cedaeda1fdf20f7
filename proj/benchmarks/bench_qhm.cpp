#include <benchmark/benchmark.h>

#include "qhm/element.hpp"

static void BM_Mul(benchmark::State& state) {
  auto par = qhm::make_params(2, 0.3, 0.2, int(state.range(0)), 64, 4);
  auto fr = qhm::build_frame(par);
  auto a = fr.xi1;
  auto b = qhm::star(fr.xi2);
  for (auto _ : state) {
    auto c = qhm::mul(a, b);
    benchmark::DoNotOptimize(c);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Mul)->RangeMultiplier(2)->Range(32, 256)->Complexity();

BENCHMARK_MAIN();
