#pragma once

namespace copulakit {

// Epanechnikov kernel 3/4 (1 - x^2) on [-1, 1] and its CDF.
double epanechnikov_pdf(double x);
double epanechnikov_cdf(double x);

// Kernel constants: second moment and the CDF-smoothing covariance constant.
constexpr double kernel_second_moment() { return 0.2; }        // int t^2 k(t) dt
constexpr double kernel_covariance_constant() { return 9.0 / 35.0; }  // 2 int t k(t) K(t) dt

// Truncated moment a_l(u, h) = int_{(u-1)/h}^{u/h} t^l k(t) dt, l in {0,1,2};
// exact piecewise polynomials.
double truncated_moment(double u, double h, int l);

// Local-linear boundary kernel window for a given (u, h); precomputing it
// keeps grid loops cheap. Requires h in (0, 1/4].
struct LocalKernelWindow {
    double lo, hi;       // effective support, clamped to [-1, 1]
    double a0, a1, a2;   // truncated moments
    double den;          // a0 a2 - a1^2 > 0

    LocalKernelWindow(double u, double h);

    double pdf(double x) const;
    double cdf(double x) const;  // exact piecewise-quartic antiderivative
};

double local_linear_pdf(double u, double h, double x);
double local_linear_cdf(double u, double h, double x);

// Bandwidth shrink factor min(sqrt(w), sqrt(1-w)).
double bandwidth_shrink(double w);

}  // namespace copulakit
