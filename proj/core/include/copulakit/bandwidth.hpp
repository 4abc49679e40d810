#pragma once

#include <string>

#include "copulakit/estimators.hpp"
#include "copulakit/families.hpp"

namespace copulakit {

// Pointwise asymptotic mean-squared-error pieces of the shrunk local-linear
// expansion: AMSE(h) = (avar_const - h * avar_h_factor) / n + (h^2 * abias_factor)^2.
struct AmseComponents {
    double abias_factor;   // h^2 coefficient of the bias
    double avar_const;     // leading variance (h-free)
    double avar_h_factor;  // h/n coefficient of the variance, >= 0
};

AmseComponents amse_components(const CopulaSpec& spec, double u, double v, bool shrink_on);

enum class BandwidthMethod { FrankReference, NormalReferenceT, FixedH };

const char* bandwidth_method_name(BandwidthMethod m);

struct BandwidthSelection {
    double h = 0.0;
    BandwidthMethod method = BandwidthMethod::FixedH;
    double reference_theta = 0.0;  // fitted Frank theta, or rho for the T rule
    double c1 = 0.0;               // averaged variance slope
    double c2 = 0.0;               // averaged squared bias factor
    bool fallback = false;         // degenerate reference, h = n^(-1/3) used
};

// Plug-in rule with a Frank reference copula fitted by tau inversion; the
// averaged AMSE -c1 h/n + c2 h^4 is minimized in closed form at
// h* = (c1 / (4 c2 n))^(1/3), clamped into (0, 1/4].
BandwidthSelection select_h_reference(const PseudoSample& ps, std::size_t n, bool shrink_on);

// Reference rule for the transformation estimator: bivariate-normal MISE
// surrogate on the transformed plane, minimized in closed form, then halved.
BandwidthSelection select_h_transform(const PseudoSample& ps, std::size_t n);

// Bandwidth for an estimator kind under the default rules (0 for Empirical).
BandwidthSelection auto_bandwidth(EstimatorKind kind, const PseudoSample& ps, std::size_t n);

}  // namespace copulakit
