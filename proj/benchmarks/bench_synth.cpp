#include <benchmark/benchmark.h>

#include "design2/gf2poly.hpp"

using namespace design2;

static void BM_poly_mul(benchmark::State& state) {
    std::size_t n = std::size_t(state.range(0));
    BitVec av(n), bv(n);
    for (std::size_t i = 0; i < n; i += 3) av.set(i, true);
    for (std::size_t i = 0; i < n; i += 5) bv.set(i, true);
    BitPoly a(av), b(bv);
    auto strat = MulStrategy(state.range(1));
    for (auto _ : state)
        benchmark::DoNotOptimize(poly_mul(a, b, strat));
}
BENCHMARK(BM_poly_mul)
    ->ArgsProduct({{256, 1024, 4096}, {0, 1, 2}});

BENCHMARK_MAIN();
