// Serial vs OpenMP cyclic series product, on the lambda series used by the
// wave scheme. Thread count comes from OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include "recurbound/cyclic.hpp"

using namespace recurbound;

namespace {

template <CyclicPolySeries (*Mul)(const CyclicPolySeries&, const CyclicPolySeries&)>
void bm_cyclic_mul(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int K = static_cast<int>(state.range(1));
  const CyclicPolySeries lam = wave_lambda(n, Rational(1, 2), K);
  for (auto _ : state) {
    CyclicPolySeries p = Mul(lam, lam);
    benchmark::DoNotOptimize(p);
  }
}

}  // namespace

BENCHMARK(bm_cyclic_mul<cyclic_mul_serial>)->Args({8, 32})->Args({16, 64})->Args({32, 64})->Unit(benchmark::kMillisecond);
BENCHMARK(bm_cyclic_mul<cyclic_mul>)->Args({8, 32})->Args({16, 64})->Args({32, 64})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
