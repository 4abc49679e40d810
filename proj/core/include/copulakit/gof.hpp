#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "copulakit/bandwidth.hpp"
#include "copulakit/estimators.hpp"
#include "copulakit/families.hpp"

namespace copulakit {

enum class StatKind { KS, CM, Q };

const char* stat_tag(StatKind s);
StatKind stat_from_tag(const std::string& tag);

// Null-copula CDF on the full grid lattice; elliptical families use
// column-cumulative quadrature of the conditional.
std::vector<double> cdf_grid(const CopulaSpec& spec, const EvalGrid& grid);

// max over the grid of |C_hat - C_null|.
double stat_ks(const PseudoSample& ps, const EstimatorConfig& config, const CopulaSpec& null_spec,
               const EvalGrid& grid);

// sum over the pseudo-observations of (C_hat - C_null)^2.
double stat_cm(const PseudoSample& ps, const EstimatorConfig& config, const CopulaSpec& null_spec);

// grid mean of (C_hat - C_null)^2 (equal weights times unit area).
double stat_q(const PseudoSample& ps, const EstimatorConfig& config, const CopulaSpec& null_spec,
              const EvalGrid& grid);

double stat_value(StatKind kind, const PseudoSample& ps, const EstimatorConfig& config,
                  const CopulaSpec& null_spec, const EvalGrid& grid);

struct GofReport {
    StatKind statistic = StatKind::CM;
    EstimatorKind estimator = EstimatorKind::Empirical;
    Family null_family = Family::Frank;
    double observed = 0.0;
    std::vector<double> bootstrap_values;
    double p_value = 1.0;
    int B = 0;
    double theta_hat = 0.0;
    double h = 0.0;  // bandwidth used for the observed statistic
    std::uint64_t seed = 0;
    std::string error;  // non-empty when the fit failed

    bool ok() const { return error.empty(); }
};

// One parametric-bootstrap replicate: sample n pairs from the fitted null,
// re-rank, re-fit, re-select the bandwidth, recompute the statistic.
struct BootstrapReplicate {
    double value = 0.0;
    double theta_star = 0.0;
    double h_star = 0.0;
};

BootstrapReplicate bootstrap_replicate(const CopulaSpec& fitted, std::size_t n,
                                       EstimatorKind estimator, PseudoVariant variant,
                                       StatKind stat, const EvalGrid& grid, RngStream& rng);

// Parametric bootstrap p-value: fit by tau inversion, compute the observed
// statistic, draw B replicates on streams derived from (seed, b), and report
// p = (1 + #{replicates >= observed}) / (B + 1). Deterministic given the seed
// and independent of the thread count.
GofReport bootstrap_gof(const Sample& sample, Family null_family, EstimatorKind estimator,
                        PseudoVariant variant, StatKind stat, int B, std::uint64_t seed,
                        int grid_m = 101, int threads = 1);

double bootstrap_p_value(const std::vector<double>& bootstrap_values, double observed);

}  // namespace copulakit
