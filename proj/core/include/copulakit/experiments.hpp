#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "copulakit/estimators.hpp"
#include "copulakit/families.hpp"
#include "copulakit/gof.hpp"

namespace copulakit {

enum class ExperimentKind { EstimatorCompare, FixedHSweep, GofSizePower };

// Monte Carlo experiment description. Rep r of experiment kind K draws its
// random stream from (seed, kind-id, r); results are a pure function of the
// plan and independent of the thread count.
struct ExperimentPlan {
    ExperimentKind kind = ExperimentKind::EstimatorCompare;
    Family true_family = Family::Frank;
    double tau = 0.25;
    Family null_family = Family::Frank;  // GofSizePower only
    std::size_t n = 150;
    int reps = 200;
    int B = 199;  // GofSizePower only
    std::vector<EstimatorKind> estimators;
    std::vector<StatKind> stats;
    std::uint64_t seed = 0;
    std::vector<double> h_grid;  // FixedHSweep only; default 20 log-spaced in [0.005, 0.25]
    int grid_m = 101;
    int threads = 1;
    PseudoVariant variant = PseudoVariant::ShiftedE;
};

std::vector<double> default_sweep_grid();

struct CompareRow {
    int rep;
    EstimatorKind estimator;
    StatKind stat;
    double h;
    double value;
};

struct CompareSummary {
    EstimatorKind estimator;
    StatKind stat;
    double q1, median, q3;
};

struct CompareResult {
    std::vector<CompareRow> rows;
    std::vector<CompareSummary> summaries;
};

struct SweepRow {
    int rep;
    double h;
    StatKind stat;
    double value;
};

struct SweepResult {
    EstimatorKind estimator;
    std::vector<SweepRow> rows;
    std::vector<double> selected_h;  // reference-rule bandwidth, one per rep
};

struct GofRepRow {
    int rep;
    EstimatorKind estimator;
    StatKind stat;
    double p_value;
    bool reject05;
};

struct GofSummary {
    EstimatorKind estimator;
    StatKind stat;
    int rejections;
    int reps;
    double rate;
};

struct GofTableResult {
    std::vector<GofRepRow> rows;
    std::vector<GofSummary> summaries;
};

CompareResult run_estimator_compare(const ExperimentPlan& plan);
SweepResult run_fixed_h_sweep(const ExperimentPlan& plan);
GofTableResult run_gof_size_power(const ExperimentPlan& plan);

// Interpolated quartile of a copy of `values` (p in [0,1]).
double quantile_of(std::vector<double> values, double p);

void write_compare_csv(std::ostream& os, const CompareResult& result);
void write_sweep_csv(std::ostream& os, const SweepResult& result);
void write_gof_csv(std::ostream& os, const GofTableResult& result);

}  // namespace copulakit
