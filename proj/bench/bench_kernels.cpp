// Serial reference kernels against their OpenMP versions.
#include <benchmark/benchmark.h>

#include <random>

#include "dpalg/envelopes.hpp"
#include "dpalg/kernels.hpp"
#include "dpalg/rlie.hpp"

using namespace dpalg;

namespace {

kernels::RawMatrix random_raw(const Field& f, std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    kernels::RawMatrix m;
    m.rows = n;
    m.cols = n;
    m.a.resize(n * n);
    for (auto& x : m.a) x = static_cast<std::uint32_t>(rng() % f.order());
    return m;
}

kernels::SparseTable table_of(const FinRing& R) {
    kernels::SparseTable t;
    t.dim = R.dim;
    t.twist = R.twist;
    for (const auto& s : R.table) {
        t.entries.emplace_back();
        for (const auto& [k, c] : s) t.entries.back().push_back({k, c.code()});
    }
    return t;
}

template <bool Parallel>
void BM_rref(benchmark::State& state) {
    const auto f = Field::make(static_cast<int>(state.range(1)));
    const auto base = random_raw(*f, static_cast<std::size_t>(state.range(0)), 7);
    for (auto _ : state) {
        auto m = base;
        auto piv = Parallel ? kernels::rref_parallel(m, *f) : kernels::rref_serial(m, *f);
        benchmark::DoNotOptimize(piv);
    }
    state.SetComplexityN(state.range(0));
}

template <bool Parallel>
void BM_associativity(benchmark::State& state) {
    const auto f = Field::make(3);
    const RestrictedLie L = state.range(0) == 0 ? sl2(f) : heisenberg(f);
    const FinRing R = state.range(1) == 0 ? u_of(L) : w_of(L, static_cast<int>(state.range(1)));
    const auto t = table_of(R);
    for (auto _ : state) {
        const std::size_t bad = Parallel ? kernels::associativity_defects_parallel(t, *f)
                                         : kernels::associativity_defects_serial(t, *f);
        benchmark::DoNotOptimize(bad);
    }
    state.counters["dim"] = static_cast<double>(R.dim);
}

}  // namespace

BENCHMARK(BM_rref<false>)->ArgsProduct({{64, 128, 256}, {2, 3}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_rref<true>)->ArgsProduct({{64, 128, 256}, {2, 3}})->Unit(benchmark::kMillisecond);
// (algebra, f-truncation): 0 = sl2, 1 = heisenberg; N = 0 means u(L)
BENCHMARK(BM_associativity<false>)->ArgsProduct({{0, 1}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_associativity<true>)->ArgsProduct({{0, 1}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
