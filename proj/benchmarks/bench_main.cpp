#include <benchmark/benchmark.h>

#include <random>

#include <addcomb/ap_forms.hpp>
#include <addcomb/gowers.hpp>
#include <addcomb/primes.hpp>
#include <addcomb/structure.hpp>
#include <addcomb/zmod.hpp>

using namespace addcomb;

namespace {

CyclicFn random_fn(std::size_t n, std::uint64_t seed = 1) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<cplx> v(n);
    for (auto& x : v) x = {u(rng), u(rng)};
    return CyclicFn(std::move(v));
}

void BM_Dft(benchmark::State& state) {
    const CyclicFn f = random_fn(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(dft(f));
    state.SetComplexityN(state.range(0));
}
// Powers of two take the radix-2 path, the odd primes go through Bluestein.
BENCHMARK(BM_Dft)->Arg(1024)->Arg(1031)->Arg(65536)->Arg(65537)->Complexity();

void BM_Sieve(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(build_sieve(static_cast<std::uint64_t>(state.range(0))));
}
BENCHMARK(BM_Sieve)->Arg(100'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

void BM_UNorm(benchmark::State& state) {
    const CyclicFn f = random_fn(static_cast<std::size_t>(state.range(1)));
    const int d = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(u_norm(f, d));
}
BENCHMARK(BM_UNorm)->Args({2, 4096})->Args({3, 257})->Args({3, 509})->Args({4, 61})->Unit(benchmark::kMicrosecond);

void BM_Lambda3(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const CyclicFn f = random_fn(n, 1), g = random_fn(n, 2), h = random_fn(n, 3);
    for (auto _ : state) benchmark::DoNotOptimize(lambda3_spectral(f, g, h));
}
BENCHMARK(BM_Lambda3)->Arg(1009)->Arg(1 << 16);

void BM_MangoldtAverage(benchmark::State& state) {
    const auto n = static_cast<std::uint64_t>(state.range(0));
    const SieveTables t = build_sieve(3 * n);
    for (auto _ : state) benchmark::DoNotOptimize(mangoldt_ap_average(t, n, 3));
}
BENCHMARK(BM_MangoldtAverage)->Arg(10'000)->Arg(100'000)->Unit(benchmark::kMillisecond);

void BM_Kvn(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    std::mt19937_64 rng(7);
    std::vector<std::int64_t> a;
    for (std::size_t x = 0; x < n; ++x)
        if (rng() % 3 == 0) a.push_back(static_cast<std::int64_t>(x));
    const CyclicFn f = indicator(n, a);
    const double delta = static_cast<double>(a.size()) / static_cast<double>(n);
    for (auto _ : state) benchmark::DoNotOptimize(kvn_decompose(f, delta, 0.05));
}
BENCHMARK(BM_Kvn)->Arg(101)->Arg(1009)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
