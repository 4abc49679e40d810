#include <benchmark/benchmark.h>

#include "copulakit/gof.hpp"

using namespace copulakit;

namespace {

void BM_BootstrapGof(benchmark::State& state, EstimatorKind kind) {
    RngStream rng(41);
    const Sample s = copula_sample(spec_from_tau(Family::Frank, 0.5), 150, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(bootstrap_gof(s, Family::Frank, kind, PseudoVariant::ShiftedE,
                                               StatKind::CM, static_cast<int>(state.range(0)),
                                               5, 101, 1));
    }
}

void BM_StatKs(benchmark::State& state) {
    RngStream rng(42);
    const Sample s = copula_sample(spec_from_tau(Family::Frank, 0.5), 150, rng);
    const PseudoSample ps = pseudo_obs(s, PseudoVariant::ShiftedE);
    const CopulaSpec null_spec = spec_from_tau(Family::Frank, kendall_tau(s));
    const EvalGrid grid(101);
    const EstimatorConfig config{EstimatorKind::LocalLinearShrunk, 0.1, PseudoVariant::ShiftedE};
    for (auto _ : state) {
        benchmark::DoNotOptimize(stat_ks(ps, config, null_spec, grid));
    }
}

}  // namespace

BENCHMARK_CAPTURE(BM_BootstrapGof, e, EstimatorKind::Empirical)->Arg(10);
BENCHMARK_CAPTURE(BM_BootstrapGof, lls, EstimatorKind::LocalLinearShrunk)->Arg(10);
BENCHMARK(BM_StatKs);
