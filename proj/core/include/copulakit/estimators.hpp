#pragma once

#include <string>
#include <vector>

#include "copulakit/types.hpp"

namespace copulakit {

enum class PseudoVariant { ShiftedE, Centered };

enum class EstimatorKind {
    Empirical,             // e
    LocalLinear,           // ll
    LocalLinearShrunk,     // lls
    MirrorReflection,      // mr
    MirrorReflectionShrunk,  // mrs
    Transformation,        // t
};

const char* estimator_tag(EstimatorKind k);
EstimatorKind estimator_from_tag(const std::string& tag);
bool estimator_uses_bandwidth(EstimatorKind k);

// Rank-based surrogates for the unobservable uniform pairs. ShiftedE maps
// rank r to r/(n+1); Centered maps it to (2r-1)/(2n). Ties get average ranks.
struct PseudoSample {
    std::vector<double> u;
    std::vector<double> v;
    PseudoVariant variant = PseudoVariant::ShiftedE;
    bool had_ties = false;

    std::size_t size() const { return u.size(); }
};

PseudoSample pseudo_obs(const Sample& sample, PseudoVariant variant);

struct EstimatorConfig {
    EstimatorKind kind = EstimatorKind::Empirical;
    double h = 0.0;  // ignored for Empirical
    PseudoVariant variant = PseudoVariant::ShiftedE;
};

// Regular m x m lattice over [0,1]^2, endpoints included.
struct EvalGrid {
    std::vector<double> points;

    explicit EvalGrid(int m = 101);
    int size() const { return static_cast<int>(points.size()); }
};

double estimate_empirical(const PseudoSample& ps, double u, double v);
double estimate_local_linear(const PseudoSample& ps, double h, double u, double v);
double estimate_local_linear_shrunk(const PseudoSample& ps, double h, double u, double v);
double estimate_mirror(const PseudoSample& ps, double h, double u, double v);
double estimate_mirror_shrunk(const PseudoSample& ps, double h, double u, double v);
double estimate_transformation(const PseudoSample& ps, double h, double u, double v);

double estimate(const PseudoSample& ps, const EstimatorConfig& config, double u, double v);

// Row-major m x m matrix, element [j*m + k] = estimate at (grid[j], grid[k]).
// Bit-identical to the pointwise operations.
std::vector<double> evaluate_grid(const PseudoSample& ps, const EstimatorConfig& config,
                                  const EvalGrid& grid);

}  // namespace copulakit
