#include <benchmark/benchmark.h>

#include "copulakit/bandwidth.hpp"
#include "copulakit/estimators.hpp"
#include "copulakit/families.hpp"

using namespace copulakit;

namespace {

PseudoSample bench_sample(std::size_t n) {
    RngStream rng(1729);
    return pseudo_obs(copula_sample(spec_from_tau(Family::Frank, 0.5), n, rng),
                      PseudoVariant::ShiftedE);
}

void BM_EvaluateGrid(benchmark::State& state, EstimatorKind kind) {
    const PseudoSample ps = bench_sample(150);
    const EvalGrid grid(101);
    const EstimatorConfig config{kind, kind == EstimatorKind::Empirical ? 0.0 : 0.1,
                                 PseudoVariant::ShiftedE};
    for (auto _ : state) {
        benchmark::DoNotOptimize(evaluate_grid(ps, config, grid));
    }
}

void BM_SelectBandwidth(benchmark::State& state) {
    const PseudoSample ps = bench_sample(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(select_h_reference(ps, ps.size(), true).h);
    }
}

void BM_SelectTransformBandwidth(benchmark::State& state) {
    const PseudoSample ps = bench_sample(150);
    for (auto _ : state) {
        benchmark::DoNotOptimize(select_h_transform(ps, ps.size()).h);
    }
}

}  // namespace

BENCHMARK_CAPTURE(BM_EvaluateGrid, e, EstimatorKind::Empirical);
BENCHMARK_CAPTURE(BM_EvaluateGrid, ll, EstimatorKind::LocalLinear);
BENCHMARK_CAPTURE(BM_EvaluateGrid, lls, EstimatorKind::LocalLinearShrunk);
BENCHMARK_CAPTURE(BM_EvaluateGrid, mr, EstimatorKind::MirrorReflection);
BENCHMARK_CAPTURE(BM_EvaluateGrid, mrs, EstimatorKind::MirrorReflectionShrunk);
BENCHMARK_CAPTURE(BM_EvaluateGrid, t, EstimatorKind::Transformation);
BENCHMARK(BM_SelectBandwidth)->Arg(150)->Arg(600);
BENCHMARK(BM_SelectTransformBandwidth);
