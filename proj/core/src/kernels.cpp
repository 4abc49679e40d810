#include "copulakit/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "copulakit/errors.hpp"

namespace copulakit {

namespace {

// Antiderivatives of t^l k(t) for the Epanechnikov kernel.
double anti0(double t) { return 0.75 * t - 0.25 * t * t * t; }
double anti1(double t) {
    const double t2 = t * t;
    return 0.375 * t2 - 0.1875 * t2 * t2;
}
double anti2(double t) {
    const double t3 = t * t * t;
    return 0.25 * t3 - 0.15 * t3 * t * t;
}

void check_bandwidth(double h) {
    if (!(h > 0.0) || h > 0.25) {
        throw ParameterDomainError("bandwidth must lie in (0, 1/4]");
    }
}

}  // namespace

double epanechnikov_pdf(double x) {
    if (x <= -1.0 || x >= 1.0) return 0.0;
    return 0.75 * (1.0 - x * x);
}

double epanechnikov_cdf(double x) {
    if (x <= -1.0) return 0.0;
    if (x >= 1.0) return 1.0;
    return 0.25 * (2.0 + 3.0 * x - x * x * x);
}

double truncated_moment(double u, double h, int l) {
    check_bandwidth(h);
    const double lo = std::max(-1.0, (u - 1.0) / h);
    const double hi = std::min(1.0, u / h);
    if (hi <= lo) return 0.0;
    switch (l) {
        case 0: return anti0(hi) - anti0(lo);
        case 1: return anti1(hi) - anti1(lo);
        case 2: return anti2(hi) - anti2(lo);
        default: throw ParameterDomainError("truncated_moment: l must be 0, 1 or 2");
    }
}

LocalKernelWindow::LocalKernelWindow(double u, double h) {
    check_bandwidth(h);
    lo = std::max(-1.0, (u - 1.0) / h);
    hi = std::min(1.0, u / h);
    a0 = anti0(hi) - anti0(lo);
    a1 = anti1(hi) - anti1(lo);
    a2 = anti2(hi) - anti2(lo);
    den = a0 * a2 - a1 * a1;
    // Strictly positive for h <= 1/4 by Cauchy-Schwarz; asserted, not special-cased.
    if (!(den > 0.0)) throw DegenerateKernelError("local-linear kernel denominator vanished");
}

double LocalKernelWindow::pdf(double x) const {
    if (x <= lo || x >= hi) return 0.0;
    return epanechnikov_pdf(x) * (a2 - a1 * x) / den;
}

double LocalKernelWindow::cdf(double x) const {
    if (x <= lo) return 0.0;
    if (x >= hi) return 1.0;
    return (a2 * (anti0(x) - anti0(lo)) - a1 * (anti1(x) - anti1(lo))) / den;
}

double local_linear_pdf(double u, double h, double x) { return LocalKernelWindow(u, h).pdf(x); }

double local_linear_cdf(double u, double h, double x) { return LocalKernelWindow(u, h).cdf(x); }

double bandwidth_shrink(double w) {
    if (w <= 0.0 || w >= 1.0) return 0.0;
    return std::sqrt(std::min(w, 1.0 - w));
}

}  // namespace copulakit
