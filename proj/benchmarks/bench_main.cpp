#include <benchmark/benchmark.h>

#include "wolffkit/dynamics.hpp"
#include "wolffkit/metric.hpp"
#include "wolffkit/random.hpp"
#include "wolffkit/selfmap.hpp"

namespace {

using namespace wolff;

DomainSpec domain_for(int code, int dim) {
    return code == 0 ? DomainSpec::polydisk(static_cast<std::size_t>(dim)) : DomainSpec::ball(static_cast<std::size_t>(dim));
}

void BM_Kobayashi(benchmark::State& state) {
    const DomainSpec d = domain_for(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
    Rng rng(7);
    std::vector<CPoint> pts;
    for (int i = 0; i < 1024; ++i) pts.push_back(rng.in_domain(d, 0.999));
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(kobayashi(d, pts[i % 1024], pts[(i + 1) % 1024]));
        ++i;
    }
}
BENCHMARK(BM_Kobayashi)->Args({0, 2})->Args({0, 3})->Args({1, 2})->Args({1, 3});

void BM_Bounds(benchmark::State& state) {
    const DomainSpec d = domain_for(static_cast<int>(state.range(0)), 2);
    Rng rng(11);
    const CPoint z = rng.in_domain(d, 0.9), w = rng.in_domain(d, 0.9);
    BoundsOptions opts;
    opts.budget = static_cast<std::size_t>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(bounds(d, z, w, opts));
}
BENCHMARK(BM_Bounds)->Args({0, 64})->Args({1, 64})->Args({0, 16});

void BM_Iterate(benchmark::State& state) {
    const SelfMapExpr m = parse_map("(mobius(0.5)(z1), 0.5*z2)", DomainSpec::polydisk(2));
    const CPoint start{0.1, -0.2};
    for (auto _ : state) benchmark::DoNotOptimize(iterate(m, start, 10'000));
}
BENCHMARK(BM_Iterate);

void BM_Evaluate(benchmark::State& state) {
    const SelfMapExpr m =
        parse_map("(mobius(0.5)(z1), 0.4330127018922193*z2/(1+0.5*z1))", DomainSpec::ball(2));
    CPoint z{0.1, 0.2};
    for (auto _ : state) benchmark::DoNotOptimize(m(z));
}
BENCHMARK(BM_Evaluate);

}  // namespace

BENCHMARK_MAIN();
