#include "copulakit/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <ostream>
#include <thread>

#include "copulakit/bandwidth.hpp"
#include "copulakit/csv.hpp"
#include "copulakit/errors.hpp"

namespace copulakit {

namespace {

constexpr std::uint64_t kCompareId = 1;
constexpr std::uint64_t kSweepId = 2;
constexpr std::uint64_t kGofId = 3;

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(0..count-1) on a worker pool; rethrows the first failure.
void run_indexed(int count, int threads, const std::function<void(int)>& fn) {
    threads = std::min(std::max(threads, 1), count);
    if (threads <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

void validate_common(const ExperimentPlan& plan) {
    if (plan.reps < 1) throw ParameterDomainError("reps must be >= 1");
    if (plan.n < 10) throw ParameterDomainError("n must be >= 10");
}

std::vector<EstimatorKind> all_estimators() {
    return {EstimatorKind::Empirical,        EstimatorKind::LocalLinear,
            EstimatorKind::LocalLinearShrunk, EstimatorKind::MirrorReflection,
            EstimatorKind::MirrorReflectionShrunk, EstimatorKind::Transformation};
}

double grid_mean_square_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return acc / static_cast<double>(a.size());
}

double grid_max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace

std::vector<double> default_sweep_grid() {
    std::vector<double> grid(20);
    const double lo = std::log(0.005), hi = std::log(0.25);
    for (int i = 0; i < 20; ++i) grid[i] = std::exp(lo + (hi - lo) * i / 19.0);
    grid.back() = 0.25;
    return grid;
}

double quantile_of(std::vector<double> values, double p) {
    if (values.empty()) return 0.0;
    std::sort(values.begin(), values.end());
    const double pos = p * static_cast<double>(values.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= values.size()) return values.back();
    const double frac = pos - static_cast<double>(lo);
    return values[lo] * (1.0 - frac) + values[lo + 1] * frac;
}

CompareResult run_estimator_compare(const ExperimentPlan& plan) {
    validate_common(plan);
    const auto estimators = plan.estimators.empty() ? all_estimators() : plan.estimators;
    const std::vector<StatKind> stats =
        plan.stats.empty() ? std::vector<StatKind>{StatKind::KS, StatKind::CM, StatKind::Q}
                           : plan.stats;
    const bool need_grid = std::any_of(stats.begin(), stats.end(), [](StatKind s) {
        return s == StatKind::KS || s == StatKind::Q;
    });
    const CopulaSpec truth = spec_from_tau(plan.true_family, plan.tau);
    const EvalGrid grid(plan.grid_m);
    const std::vector<double> truth_grid = need_grid ? cdf_grid(truth, grid) : std::vector<double>{};

    std::vector<std::vector<CompareRow>> per_rep(plan.reps);
    run_indexed(plan.reps, resolve_threads(plan.threads), [&](int rep) {
        RngStream rng = RngStream::derive(plan.seed, kCompareId, static_cast<std::uint64_t>(rep));
        const Sample sample = copula_sample(truth, plan.n, rng);
        const PseudoSample ps = pseudo_obs(sample, plan.variant);
        const bool need_cm =
            std::find(stats.begin(), stats.end(), StatKind::CM) != stats.end();
        std::vector<double> truth_at_ps;
        if (need_cm) {
            truth_at_ps.resize(ps.size());
            for (std::size_t i = 0; i < ps.size(); ++i) {
                truth_at_ps[i] = copula_cdf(truth, ps.u[i], ps.v[i]);
            }
        }
        std::vector<CompareRow>& rows = per_rep[rep];
        for (EstimatorKind kind : estimators) {
            EstimatorConfig config{kind, 0.0, plan.variant};
            if (estimator_uses_bandwidth(kind)) {
                config.h = auto_bandwidth(kind, ps, plan.n).h;
            }
            std::vector<double> est_grid;
            if (need_grid) est_grid = evaluate_grid(ps, config, grid);
            for (StatKind stat : stats) {
                double value = 0.0;
                switch (stat) {
                    case StatKind::KS:
                        value = grid_max_abs_diff(est_grid, truth_grid);
                        break;
                    case StatKind::Q:
                        value = grid_mean_square_diff(est_grid, truth_grid);
                        break;
                    case StatKind::CM: {
                        double acc = 0.0;
                        for (std::size_t i = 0; i < ps.size(); ++i) {
                            const double d =
                                estimate(ps, config, ps.u[i], ps.v[i]) - truth_at_ps[i];
                            acc += d * d;
                        }
                        value = acc;
                        break;
                    }
                }
                rows.push_back({rep, kind, stat, config.h, value});
            }
        }
    });

    CompareResult result;
    for (auto& rows : per_rep) {
        result.rows.insert(result.rows.end(), rows.begin(), rows.end());
    }
    for (EstimatorKind kind : estimators) {
        for (StatKind stat : stats) {
            std::vector<double> values;
            values.reserve(plan.reps);
            for (const auto& row : result.rows) {
                if (row.estimator == kind && row.stat == stat) values.push_back(row.value);
            }
            result.summaries.push_back({kind, stat, quantile_of(values, 0.25),
                                        quantile_of(values, 0.5), quantile_of(values, 0.75)});
        }
    }
    return result;
}

SweepResult run_fixed_h_sweep(const ExperimentPlan& plan) {
    validate_common(plan);
    const EstimatorKind kind =
        plan.estimators.empty() ? EstimatorKind::LocalLinear : plan.estimators.front();
    if (!estimator_uses_bandwidth(kind)) {
        throw ParameterDomainError("fixed-h sweep needs a kernel estimator");
    }
    const std::vector<double> h_grid = plan.h_grid.empty() ? default_sweep_grid() : plan.h_grid;
    for (double h : h_grid) {
        if (!(h > 0.0) || (kind != EstimatorKind::Transformation && h > 0.25)) {
            throw ParameterDomainError("sweep bandwidths must lie in (0, 1/4]");
        }
    }
    const std::vector<StatKind> stats =
        plan.stats.empty() ? std::vector<StatKind>{StatKind::KS, StatKind::CM} : plan.stats;
    const CopulaSpec truth = spec_from_tau(plan.true_family, plan.tau);
    const EvalGrid grid(plan.grid_m);
    const bool need_grid = std::any_of(stats.begin(), stats.end(), [](StatKind s) {
        return s == StatKind::KS || s == StatKind::Q;
    });
    const std::vector<double> truth_grid = need_grid ? cdf_grid(truth, grid) : std::vector<double>{};

    std::vector<std::vector<SweepRow>> per_rep(plan.reps);
    std::vector<double> selected(plan.reps, 0.0);
    run_indexed(plan.reps, resolve_threads(plan.threads), [&](int rep) {
        RngStream rng = RngStream::derive(plan.seed, kSweepId, static_cast<std::uint64_t>(rep));
        const Sample sample = copula_sample(truth, plan.n, rng);
        const PseudoSample ps = pseudo_obs(sample, plan.variant);
        selected[rep] = auto_bandwidth(kind, ps, plan.n).h;
        std::vector<double> truth_at_ps(ps.size());
        for (std::size_t i = 0; i < ps.size(); ++i) {
            truth_at_ps[i] = copula_cdf(truth, ps.u[i], ps.v[i]);
        }
        for (double h : h_grid) {
            const EstimatorConfig config{kind, h, plan.variant};
            std::vector<double> est_grid;
            if (need_grid) est_grid = evaluate_grid(ps, config, grid);
            for (StatKind stat : stats) {
                double value = 0.0;
                switch (stat) {
                    case StatKind::KS:
                        value = grid_max_abs_diff(est_grid, truth_grid);
                        break;
                    case StatKind::Q:
                        value = grid_mean_square_diff(est_grid, truth_grid);
                        break;
                    case StatKind::CM: {
                        double acc = 0.0;
                        for (std::size_t i = 0; i < ps.size(); ++i) {
                            const double d =
                                estimate(ps, config, ps.u[i], ps.v[i]) - truth_at_ps[i];
                            acc += d * d;
                        }
                        value = acc;
                        break;
                    }
                }
                per_rep[rep].push_back({rep, h, stat, value});
            }
        }
    });

    SweepResult result;
    result.estimator = kind;
    result.selected_h = std::move(selected);
    for (auto& rows : per_rep) {
        result.rows.insert(result.rows.end(), rows.begin(), rows.end());
    }
    return result;
}

GofTableResult run_gof_size_power(const ExperimentPlan& plan) {
    validate_common(plan);
    if (plan.B < 1) throw ParameterDomainError("B must be >= 1");
    const auto estimators =
        plan.estimators.empty()
            ? std::vector<EstimatorKind>{EstimatorKind::Empirical, EstimatorKind::LocalLinear,
                                         EstimatorKind::LocalLinearShrunk}
            : plan.estimators;
    const std::vector<StatKind> stats =
        plan.stats.empty() ? std::vector<StatKind>{StatKind::CM} : plan.stats;
    const CopulaSpec truth = spec_from_tau(plan.true_family, plan.tau);
    (void)spec_from_tau(plan.null_family, plan.tau);  // both families must be valid at tau

    std::vector<std::vector<GofRepRow>> per_rep(plan.reps);
    run_indexed(plan.reps, resolve_threads(plan.threads), [&](int rep) {
        RngStream rng = RngStream::derive(plan.seed, kGofId, static_cast<std::uint64_t>(rep));
        const Sample sample = copula_sample(truth, plan.n, rng);
        const std::uint64_t boot_seed =
            RngStream::derive_key(plan.seed, kGofId, static_cast<std::uint64_t>(rep), 0xb);
        for (EstimatorKind kind : estimators) {
            for (StatKind stat : stats) {
                const GofReport report =
                    bootstrap_gof(sample, plan.null_family, kind, plan.variant, stat, plan.B,
                                  boot_seed, plan.grid_m, 1);
                if (!report.ok()) {
                    throw Error("gof replicate failed: " + report.error);
                }
                per_rep[rep].push_back(
                    {rep, kind, stat, report.p_value, report.p_value <= 0.05});
            }
        }
    });

    GofTableResult result;
    for (auto& rows : per_rep) {
        result.rows.insert(result.rows.end(), rows.begin(), rows.end());
    }
    for (EstimatorKind kind : estimators) {
        for (StatKind stat : stats) {
            int rejections = 0, count = 0;
            for (const auto& row : result.rows) {
                if (row.estimator == kind && row.stat == stat) {
                    ++count;
                    if (row.reject05) ++rejections;
                }
            }
            result.summaries.push_back(
                {kind, stat, rejections, count,
                 count > 0 ? static_cast<double>(rejections) / count : 0.0});
        }
    }
    return result;
}

void write_compare_csv(std::ostream& os, const CompareResult& result) {
    os << "row_type,rep,estimator,statistic,h,value,q1,median,q3\n";
    for (const auto& row : result.rows) {
        os << "rep," << row.rep << ',' << estimator_tag(row.estimator) << ','
           << stat_tag(row.stat) << ',' << format_double(row.h) << ','
           << format_double(row.value) << ",,,\n";
    }
    for (const auto& s : result.summaries) {
        os << "summary,," << estimator_tag(s.estimator) << ',' << stat_tag(s.stat) << ",,,"
           << format_double(s.q1) << ',' << format_double(s.median) << ','
           << format_double(s.q3) << '\n';
    }
}

void write_sweep_csv(std::ostream& os, const SweepResult& result) {
    os << "row_type,rep,estimator,statistic,h,value\n";
    for (const auto& row : result.rows) {
        os << "fixed," << row.rep << ',' << estimator_tag(result.estimator) << ','
           << stat_tag(row.stat) << ',' << format_double(row.h) << ','
           << format_double(row.value) << '\n';
    }
    for (std::size_t rep = 0; rep < result.selected_h.size(); ++rep) {
        os << "selected," << rep << ',' << estimator_tag(result.estimator) << ",,"
           << format_double(result.selected_h[rep]) << ",\n";
    }
}

void write_gof_csv(std::ostream& os, const GofTableResult& result) {
    os << "row_type,rep,estimator,statistic,p_value,reject05,rejections,reps,rate\n";
    for (const auto& row : result.rows) {
        os << "rep," << row.rep << ',' << estimator_tag(row.estimator) << ','
           << stat_tag(row.stat) << ',' << format_double(row.p_value) << ','
           << (row.reject05 ? 1 : 0) << ",,,\n";
    }
    for (const auto& s : result.summaries) {
        os << "summary,," << estimator_tag(s.estimator) << ',' << stat_tag(s.stat) << ",,,"
           << s.rejections << ',' << s.reps << ',' << format_double(s.rate) << '\n';
    }
}

}  // namespace copulakit
