#include <benchmark/benchmark.h>

#include "fockalg/fock.hpp"
#include "fockalg/ideals.hpp"
#include "fockalg/pick.hpp"
#include "fockalg/poisson.hpp"
#include "random.hpp"

using namespace fockalg;

namespace {

// args: n, m
void BM_MultMatrix(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const int m = static_cast<int>(state.range(1));
    fockalg::testing::Rng rng(1);
    const auto p = fockalg::testing::random_polynomial(rng, n, 3, 6);
    for (auto _ : state) benchmark::DoNotOptimize(mult_matrix(p, m));
    state.counters["D"] = static_cast<double>(fock_dimension(n, m));
}
BENCHMARK(BM_MultMatrix)->Args({1, 64})->Args({2, 8})->Args({2, 11})->Args({3, 6});

// args: n, d, kmax
void BM_C0Sequence(benchmark::State& state) {
    fockalg::testing::Rng rng(2);
    const auto t = fockalg::testing::random_row_contraction(rng, static_cast<int>(state.range(0)), state.range(1), 0.95);
    const int kmax = static_cast<int>(state.range(2));
    for (auto _ : state) benchmark::DoNotOptimize(poisson::c0_sequence(t, kmax));
}
BENCHMARK(BM_C0Sequence)->Args({2, 4, 50})->Args({3, 16, 200})->Args({3, 64, 200});

// args: m, q-commuting pairs over n = 2 (arg 1: 0 symmetric, 1 anti-symmetric)
void BM_BuildQuotient(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    const Complex q = state.range(1) == 0 ? 1.0 : -1.0;
    const auto spec = ideals::q_commutation_spec(2, ideals::uniform_relations(2, q), m);
    for (auto _ : state) benchmark::DoNotOptimize(ideals::build_quotient(spec));
}
BENCHMARK(BM_BuildQuotient)->Args({4, 0})->Args({6, 0})->Args({8, 0})->Args({6, 1})->Unit(benchmark::kMillisecond);

// args: n, k, N
void BM_MinInterpolationNorm(benchmark::State& state) {
    fockalg::testing::Rng rng(4);
    const auto problem = fockalg::testing::random_pick_problem(rng, static_cast<int>(state.range(0)),
                                                               static_cast<int>(state.range(1)),
                                                               static_cast<int>(state.range(2)), 0.8, 0.5);
    for (auto _ : state) benchmark::DoNotOptimize(pick::min_interpolation_norm(problem));
}
BENCHMARK(BM_MinInterpolationNorm)->Args({1, 5, 1})->Args({3, 5, 3})->Args({3, 20, 3})->Args({3, 50, 2});

}  // namespace

BENCHMARK_MAIN();
