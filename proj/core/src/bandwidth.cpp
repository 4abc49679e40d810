#include "copulakit/bandwidth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "copulakit/errors.hpp"
#include "copulakit/kernels.hpp"
#include "copulakit/quadrature.hpp"
#include "copulakit/special.hpp"

namespace copulakit {

namespace {

double closed_form_minimizer(double c1, double c2, std::size_t n) {
    return std::cbrt(c1 / (4.0 * c2 * static_cast<double>(n)));
}

}  // namespace

const char* bandwidth_method_name(BandwidthMethod m) {
    switch (m) {
        case BandwidthMethod::FrankReference: return "frank_reference";
        case BandwidthMethod::NormalReferenceT: return "normal_reference_t";
        case BandwidthMethod::FixedH: return "fixed_h";
    }
    return "?";
}

AmseComponents amse_components(const CopulaSpec& spec, double u, double v, bool shrink_on) {
    if (!(u > 0.0 && u < 1.0 && v > 0.0 && v < 1.0)) {
        throw ParameterDomainError("amse_components requires interior (u,v)");
    }
    const double bu = shrink_on ? bandwidth_shrink(u) : 1.0;
    const double bv = shrink_on ? bandwidth_shrink(v) : 1.0;
    const double c = copula_cdf(spec, u, v);
    const double cu = copula_du(spec, u, v);
    const double cv = copula_dv(spec, u, v);
    const auto second = copula_second_partials(spec, u, v);

    AmseComponents out;
    out.abias_factor =
        0.5 * kernel_second_moment() * (bu * bu * second.duu + bv * bv * second.dvv);
    out.avar_h_factor =
        kernel_covariance_constant() * (bu * cu * (1.0 - cu) + bv * cv * (1.0 - cv));
    // Var{ I{U<=u,V<=v} - cu I{U<=u} - cv I{V<=v} } expanded with the
    // cross-moments E[I I] = C(u,v).
    const double mean = c - cu * u - cv * v;
    out.avar_const = c + cu * cu * u + cv * cv * v - 2.0 * c * (cu + cv) + 2.0 * cu * cv * c -
                     mean * mean;
    return out;
}

BandwidthSelection select_h_reference(const PseudoSample& ps, std::size_t n, bool shrink_on) {
    if (ps.size() < 10 || n < 10) {
        throw InsufficientDataError("reference bandwidth rule requires n >= 10");
    }
    BandwidthSelection sel;
    sel.method = BandwidthMethod::FrankReference;

    Sample as_sample{ps.u, ps.v};
    const double tau = kendall_tau(as_sample);

    // Degenerate reference (Frank ~ independence): fall back to n^(-1/3).
    if (std::abs(tau) < 1e-4) {
        sel.fallback = true;
        sel.h = std::cbrt(1.0 / static_cast<double>(n));
        sel.h = std::min(sel.h, 0.25);
        return sel;
    }
    const CopulaSpec ref = spec_from_tau(Family::Frank, tau);
    sel.reference_theta = ref.theta;

    // Integrals against dC approximated by the pseudo-observation average.
    double c1 = 0.0, c2 = 0.0;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        const auto parts = amse_components(ref, ps.u[i], ps.v[i], shrink_on);
        c1 += parts.avar_h_factor;
        c2 += parts.abias_factor * parts.abias_factor;
    }
    c1 /= static_cast<double>(ps.size());
    c2 /= static_cast<double>(ps.size());
    sel.c1 = c1;
    sel.c2 = c2;
    if (!(c2 > 0.0)) {
        sel.fallback = true;
        sel.h = std::min(std::cbrt(1.0 / static_cast<double>(n)), 0.25);
        return sel;
    }
    sel.h = std::clamp(closed_form_minimizer(c1, c2, n), 1e-6, 0.25);
    return sel;
}

BandwidthSelection select_h_transform(const PseudoSample& ps, std::size_t n) {
    if (ps.size() < 10 || n < 10) {
        throw InsufficientDataError("transform bandwidth rule requires n >= 10");
    }
    Sample as_sample{ps.u, ps.v};
    const double tau = kendall_tau(as_sample);
    if (std::abs(tau) >= 0.99) {
        throw ParameterDomainError("transform reference is near-singular (|tau| >= 0.99)");
    }
    const double rho = std::sin(std::numbers::pi * tau / 2.0);
    const double s = std::sqrt(1.0 - rho * rho);

    // MISE surrogate of the product-kernel ECDF of the transformed pairs,
    // with a standard bivariate normal reference of correlation rho:
    //   bias factor   (sigma_K^2 / 2)(H_xx + H_yy)
    //   variance slope b_K [H_x (1 - H_x) + H_y (1 - H_y)]
    // averaged against the reference density over the plane.
    const auto& rule = gauss_legendre_rule(48);
    const double lim = 6.0;
    double c1 = 0.0, c2 = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double x = lim * rule.nodes[i];
        for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
            const double y = lim * rule.nodes[j];
            const double w = lim * lim * rule.weights[i] * rule.weights[j];
            const double zx = (y - rho * x) / s;
            const double zy = (x - rho * y) / s;
            const double hx = norm_pdf(x) * norm_cdf(zx);
            const double hy = norm_pdf(y) * norm_cdf(zy);
            const double hxx = -x * norm_pdf(x) * norm_cdf(zx) -
                               rho / s * norm_pdf(x) * norm_pdf(zx);
            const double hyy = -y * norm_pdf(y) * norm_cdf(zy) -
                               rho / s * norm_pdf(y) * norm_pdf(zy);
            const double dens =
                std::exp(-(x * x - 2.0 * rho * x * y + y * y) / (2.0 * s * s)) /
                (2.0 * std::numbers::pi * s);
            const double bias = 0.5 * kernel_second_moment() * (hxx + hyy);
            const double slope =
                kernel_covariance_constant() * (hx * (1.0 - hx) + hy * (1.0 - hy));
            c1 += w * slope * dens;
            c2 += w * bias * bias * dens;
        }
    }

    BandwidthSelection sel;
    sel.method = BandwidthMethod::NormalReferenceT;
    sel.reference_theta = rho;
    sel.c1 = c1;
    sel.c2 = c2;
    // Halving follows the reference rule's documented correction for working
    // with pseudo-observations instead of the latent pairs.
    sel.h = 0.5 * closed_form_minimizer(c1, c2, n);
    return sel;
}

BandwidthSelection auto_bandwidth(EstimatorKind kind, const PseudoSample& ps, std::size_t n) {
    switch (kind) {
        case EstimatorKind::Empirical: {
            BandwidthSelection sel;
            sel.method = BandwidthMethod::FixedH;
            return sel;
        }
        case EstimatorKind::LocalLinear:
        case EstimatorKind::MirrorReflection:
            return select_h_reference(ps, n, /*shrink_on=*/false);
        case EstimatorKind::LocalLinearShrunk:
        case EstimatorKind::MirrorReflectionShrunk:
            return select_h_reference(ps, n, /*shrink_on=*/true);
        case EstimatorKind::Transformation:
            return select_h_transform(ps, n);
    }
    throw ParameterDomainError("unknown estimator kind");
}

}  // namespace copulakit
