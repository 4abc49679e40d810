#include "copulakit/gof.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "copulakit/errors.hpp"
#include "copulakit/quadrature.hpp"
#include "copulakit/special.hpp"

namespace copulakit {

namespace {

// Clamp a replicate tau into the family's attainable range, staying away from
// the ends; bootstrap replicates occasionally land outside under weak
// dependence and would otherwise abort a whole report.
double clamp_tau(Family family, double tau) {
    const TauRange range = family_tau_range(family);
    const double margin = 1e-4;
    return std::clamp(tau, range.lo + margin, range.hi - margin);
}

std::vector<double> elliptical_cdf_grid(const CopulaSpec& spec, const EvalGrid& grid) {
    const int m = grid.size();
    const bool normal = spec.family == Family::Normal;
    const double rho = spec.theta;
    auto quantile = [&](double p) {
        return normal ? norm_quantile(p) : student4_quantile(p);
    };
    auto cond = [&](double x, double y) {
        if (normal) return norm_cdf((y - rho * x) / std::sqrt(1.0 - rho * rho));
        const double scale = std::sqrt(5.0 / ((1.0 - rho * rho) * (4.0 + x * x)));
        return student5_cdf((y - rho * x) * scale);
    };

    const auto& gl8 = gauss_legendre_rule(8);
    // x-quantiles at the per-cell GL nodes, shared by all columns.
    std::vector<double> node_x(static_cast<std::size_t>(m - 1) * 8);
    for (int j = 0; j + 1 < m; ++j) {
        const double a = grid.points[j], b = grid.points[j + 1];
        for (int i = 0; i < 8; ++i) {
            const double sp = 0.5 * (a + b) + 0.5 * (b - a) * gl8.nodes[i];
            node_x[static_cast<std::size_t>(j) * 8 + i] =
                (sp <= 0.0 || sp >= 1.0) ? 0.0 : quantile(sp);
        }
    }

    std::vector<double> out(static_cast<std::size_t>(m) * m);
    for (int k = 0; k < m; ++k) {
        const double v = grid.points[k];
        if (v == 0.0) {
            for (int j = 0; j < m; ++j) out[static_cast<std::size_t>(j) * m + k] = 0.0;
            continue;
        }
        if (v == 1.0) {
            for (int j = 0; j < m; ++j) out[static_cast<std::size_t>(j) * m + k] = grid.points[j];
            continue;
        }
        const double y = quantile(v);
        double acc = 0.0;
        out[k] = 0.0;  // u = 0 row
        for (int j = 0; j + 1 < m; ++j) {
            const double a = grid.points[j], b = grid.points[j + 1];
            if (b >= 1.0) {
                acc = v;  // full conditional mass integrates back to the margin
            } else if (a <= 0.0) {
                // cusp cell: s = b z^4 substitution, handled adaptively once
                acc += integrate_adaptive(
                    [&](double z) {
                        const double z3 = z * z * z;
                        return cond(quantile(b * z3 * z), y) * 4.0 * b * z3;
                    },
                    0.0, 1.0, 1e-11, 24);
            } else {
                double cell = 0.0;
                for (int i = 0; i < 8; ++i) {
                    cell += gl8.weights[i] * cond(node_x[static_cast<std::size_t>(j) * 8 + i], y);
                }
                acc += 0.5 * (b - a) * cell;
            }
            out[static_cast<std::size_t>(j + 1) * m + k] = acc;
        }
    }
    return out;
}

}  // namespace

const char* stat_tag(StatKind s) {
    switch (s) {
        case StatKind::KS: return "ks";
        case StatKind::CM: return "cm";
        case StatKind::Q: return "q";
    }
    return "?";
}

StatKind stat_from_tag(const std::string& tag) {
    if (tag == "ks") return StatKind::KS;
    if (tag == "cm") return StatKind::CM;
    if (tag == "q") return StatKind::Q;
    throw ParameterDomainError("unknown statistic tag: " + tag);
}

std::vector<double> cdf_grid(const CopulaSpec& spec, const EvalGrid& grid) {
    const int m = grid.size();
    if (spec.family == Family::Normal || spec.family == Family::Student4) {
        return elliptical_cdf_grid(spec, grid);
    }
    std::vector<double> out(static_cast<std::size_t>(m) * m);
    for (int j = 0; j < m; ++j) {
        for (int k = 0; k < m; ++k) {
            out[static_cast<std::size_t>(j) * m + k] =
                copula_cdf(spec, grid.points[j], grid.points[k]);
        }
    }
    return out;
}

double stat_ks(const PseudoSample& ps, const EstimatorConfig& config, const CopulaSpec& null_spec,
               const EvalGrid& grid) {
    const auto est = evaluate_grid(ps, config, grid);
    const auto nul = cdf_grid(null_spec, grid);
    double maxdiff = 0.0;
    for (std::size_t i = 0; i < est.size(); ++i) {
        maxdiff = std::max(maxdiff, std::abs(est[i] - nul[i]));
    }
    return maxdiff;
}

double stat_cm(const PseudoSample& ps, const EstimatorConfig& config,
               const CopulaSpec& null_spec) {
    double acc = 0.0;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        const double d =
            estimate(ps, config, ps.u[i], ps.v[i]) - copula_cdf(null_spec, ps.u[i], ps.v[i]);
        acc += d * d;
    }
    return acc;
}

double stat_q(const PseudoSample& ps, const EstimatorConfig& config, const CopulaSpec& null_spec,
              const EvalGrid& grid) {
    const auto est = evaluate_grid(ps, config, grid);
    const auto nul = cdf_grid(null_spec, grid);
    double acc = 0.0;
    for (std::size_t i = 0; i < est.size(); ++i) {
        const double d = est[i] - nul[i];
        acc += d * d;
    }
    return acc / static_cast<double>(est.size());
}

double stat_value(StatKind kind, const PseudoSample& ps, const EstimatorConfig& config,
                  const CopulaSpec& null_spec, const EvalGrid& grid) {
    switch (kind) {
        case StatKind::KS: return stat_ks(ps, config, null_spec, grid);
        case StatKind::CM: return stat_cm(ps, config, null_spec);
        case StatKind::Q: return stat_q(ps, config, null_spec, grid);
    }
    throw ParameterDomainError("unknown statistic kind");
}

BootstrapReplicate bootstrap_replicate(const CopulaSpec& fitted, std::size_t n,
                                       EstimatorKind estimator, PseudoVariant variant,
                                       StatKind stat, const EvalGrid& grid, RngStream& rng) {
    const Sample stars = copula_sample(fitted, n, rng);
    const PseudoSample ps = pseudo_obs(stars, variant);
    const double tau_star = clamp_tau(fitted.family, kendall_tau(stars));
    const CopulaSpec refit = spec_from_tau(fitted.family, tau_star);

    BootstrapReplicate rep;
    rep.theta_star = refit.theta;
    EstimatorConfig config{estimator, 0.0, variant};
    if (estimator_uses_bandwidth(estimator)) {
        rep.h_star = auto_bandwidth(estimator, ps, n).h;
        config.h = rep.h_star;
    }
    rep.value = stat_value(stat, ps, config, refit, grid);
    return rep;
}

double bootstrap_p_value(const std::vector<double>& bootstrap_values, double observed) {
    std::size_t count = 0;
    for (double v : bootstrap_values) {
        if (v >= observed) ++count;
    }
    return static_cast<double>(1 + count) / static_cast<double>(bootstrap_values.size() + 1);
}

GofReport bootstrap_gof(const Sample& sample, Family null_family, EstimatorKind estimator,
                        PseudoVariant variant, StatKind stat, int B, std::uint64_t seed,
                        int grid_m, int threads) {
    if (B < 1) throw ParameterDomainError("bootstrap requires B >= 1");
    GofReport report;
    report.statistic = stat;
    report.estimator = estimator;
    report.null_family = null_family;
    report.B = B;
    report.seed = seed;

    const EvalGrid grid(grid_m);
    const std::size_t n = sample.size();
    double tau_hat = 0.0;
    try {
        tau_hat = kendall_tau(sample);
        const CopulaSpec fitted = spec_from_tau(null_family, tau_hat);
        report.theta_hat = fitted.theta;

        const PseudoSample ps = pseudo_obs(sample, variant);
        EstimatorConfig config{estimator, 0.0, variant};
        if (estimator_uses_bandwidth(estimator)) {
            report.h = auto_bandwidth(estimator, ps, n).h;
            config.h = report.h;
        }
        report.observed = stat_value(stat, ps, config, fitted, grid);

        report.bootstrap_values.assign(B, 0.0);
        if (threads <= 0) {
            const unsigned hw = std::thread::hardware_concurrency();
            threads = hw == 0 ? 1 : static_cast<int>(hw);
        }
        const int workers = std::max(1, std::min(threads, B));
        if (workers == 1) {
            for (int b = 0; b < B; ++b) {
                RngStream rng = RngStream::derive(seed, 0xb0, static_cast<std::uint64_t>(b));
                report.bootstrap_values[b] =
                    bootstrap_replicate(fitted, n, estimator, variant, stat, grid, rng).value;
            }
        } else {
            std::atomic<int> next{0};
            auto work = [&] {
                for (;;) {
                    const int b = next.fetch_add(1);
                    if (b >= B) return;
                    RngStream rng = RngStream::derive(seed, 0xb0, static_cast<std::uint64_t>(b));
                    report.bootstrap_values[b] =
                        bootstrap_replicate(fitted, n, estimator, variant, stat, grid, rng).value;
                }
            };
            std::vector<std::thread> pool;
            for (int t = 0; t < workers; ++t) pool.emplace_back(work);
            for (auto& t : pool) t.join();
        }
        report.p_value = bootstrap_p_value(report.bootstrap_values, report.observed);
    } catch (const Error& e) {
        report.error = e.what();
    }
    return report;
}

}  // namespace copulakit
