#include <benchmark/benchmark.h>

#include "copulakit/families.hpp"

using namespace copulakit;

namespace {

void BM_CopulaCdf(benchmark::State& state, Family family) {
    const CopulaSpec spec = spec_from_tau(family, 0.5);
    double u = 0.05;
    for (auto _ : state) {
        u = u < 0.9 ? u + 0.01 : 0.05;
        benchmark::DoNotOptimize(copula_cdf(spec, u, 0.63));
    }
}

void BM_Sample(benchmark::State& state, Family family) {
    const CopulaSpec spec = spec_from_tau(family, 0.5);
    RngStream rng(7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(copula_sample(spec, 150, rng));
    }
}

void BM_KendallTau(benchmark::State& state) {
    RngStream rng(99);
    const Sample s =
        copula_sample(spec_from_tau(Family::Clayton, 0.5), static_cast<std::size_t>(state.range(0)),
                      rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(kendall_tau(s));
    }
}

}  // namespace

BENCHMARK_CAPTURE(BM_CopulaCdf, frank, Family::Frank);
BENCHMARK_CAPTURE(BM_CopulaCdf, clayton, Family::Clayton);
BENCHMARK_CAPTURE(BM_CopulaCdf, plackett, Family::Plackett);
BENCHMARK_CAPTURE(BM_CopulaCdf, normal, Family::Normal);
BENCHMARK_CAPTURE(BM_CopulaCdf, student4, Family::Student4);
BENCHMARK_CAPTURE(BM_Sample, frank, Family::Frank);
BENCHMARK_CAPTURE(BM_Sample, gumbel, Family::Gumbel);
BENCHMARK_CAPTURE(BM_Sample, student4, Family::Student4);
BENCHMARK(BM_KendallTau)->Arg(150)->Arg(20000);
