#include "copulakit/special.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace copulakit {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;

// Wichura's AS 241 (PPND16).
double ppnd16(double p) {
    const double q = p - 0.5;
    if (std::abs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        return q *
               (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r +
                     6.7265770927008700853e+4) *
                        r +
                    4.5921953931549871457e+4) *
                       r +
                   1.3731693765509461125e+4) *
                      r +
                  1.9715909503065514427e+3) *
                     r +
                 1.3314166789178437745e+2) *
                    r +
                3.3871328727963666080e+0) /
               (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r +
                     3.9307895800092710610e+4) *
                        r +
                    2.1213794301586595867e+4) *
                       r +
                   5.3941960214247511077e+3) *
                      r +
                  6.8718700749205790830e+2) *
                     r +
                 4.2313330701600911252e+1) *
                    r +
                1.0);
    }
    double r = q < 0.0 ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double z;
    if (r <= 5.0) {
        r -= 1.6;
        z = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                  2.41780725177450611770e-1) *
                     r +
                 1.27045825245236838258e+0) *
                    r +
                3.64784832476320460504e+0) *
                   r +
               5.76949722146069140550e+0) *
                  r +
              4.63033784615654529590e+0) *
                 r +
             1.42343711074968357734e+0) /
            (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                  1.51986665636164571966e-2) *
                     r +
                 1.48103976427480074590e-1) *
                    r +
                6.89767334985100004550e-1) *
                   r +
               1.67638483018380384940e+0) *
                  r +
              2.05319162663775882187e+0) *
                 r +
             1.0);
    } else {
        r -= 5.0;
        z = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                  1.24266094738807843860e-3) *
                     r +
                 2.65321895265761230930e-2) *
                    r +
                2.96560571828504891230e-1) *
                   r +
               1.78482653991729133580e+0) *
                  r +
              5.46378491116411436990e+0) *
                 r +
             6.65790464350110377720e+0) /
            (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                  1.84631831751005468180e-5) *
                     r +
                 7.86869131145613259100e-4) *
                    r +
                1.48753612908506148525e-2) *
                   r +
               1.36929880922735805310e-1) *
                  r +
              5.99832206555887937690e-1) *
                 r +
             1.0);
    }
    return q < 0.0 ? -z : z;
}

// (1+s)^2 (2-s) / 4, the shared cubic behind the Epanechnikov CDF and the
// t4 CDF; stable near s = -1.
double cubic_cdf_shape(double s) { return 0.25 * (1.0 + s) * (1.0 + s) * (2.0 - s); }

}  // namespace

double norm_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double norm_cdf(double x) { return 0.5 * std::erfc(-x * kInvSqrt2); }

double norm_quantile(double p) {
    if (p <= 0.0) return -std::numeric_limits<double>::infinity();
    if (p >= 1.0) return std::numeric_limits<double>::infinity();
    double z = ppnd16(p);
    const double d = norm_pdf(z);
    if (d > 1e-300) z -= (norm_cdf(z) - p) / d;
    return z;
}

double student4_pdf(double x) {
    const double w = 1.0 + 0.25 * x * x;
    return 0.375 / (w * w * std::sqrt(w));
}

double student4_pdf_deriv(double x) {
    const double w = 1.0 + 0.25 * x * x;
    return -0.46875 * x / (w * w * w * std::sqrt(w));
}

double student4_cdf(double x) {
    // s = x / sqrt(x^2+4); 1+s computed without cancellation for x < 0.
    const double r = std::sqrt(x * x + 4.0);
    if (x >= 0.0) return 1.0 - cubic_cdf_shape(-x / r);
    const double one_plus_s = 4.0 / (r * (r - x));
    return 0.25 * one_plus_s * one_plus_s * (3.0 - one_plus_s);
}

double student4_quantile(double p) {
    if (p <= 0.0) return -std::numeric_limits<double>::infinity();
    if (p >= 1.0) return std::numeric_limits<double>::infinity();
    // T4(x) = p reduces to s^3 - 3s + (4p-2) = 0 with s = x/sqrt(x^2+4);
    // the root in [-1,1] is 2 cos(psi - 2*pi/3), cos(3 psi) = 1 - 2p.
    const double psi = (p <= 0.5) ? 2.0 * std::asin(std::sqrt(p)) / 3.0
                                  : (std::numbers::pi - 2.0 * std::asin(std::sqrt(1.0 - p))) / 3.0;
    const double a = psi - 2.0 * std::numbers::pi / 3.0;
    const double s = 2.0 * std::cos(a);
    const double one_minus_s2 = -1.0 - 2.0 * std::cos(2.0 * a);  // 1 - 4cos^2(a)
    double x = 2.0 * s / std::sqrt(std::max(one_minus_s2, 1e-300));
    const double d = student4_pdf(x);
    if (d > 1e-300) x -= (student4_cdf(x) - p) / d;
    return x;
}

double student5_pdf(double x) {
    const double w = 1.0 + 0.2 * x * x;
    // 8 / (3 pi sqrt(5)) = Gamma(3) / (sqrt(5 pi) Gamma(5/2))
    return 0.37960668982249443117 / (w * w * w);
}

double student5_cdf(double x) {
    const double t = x / std::sqrt(5.0);
    const double w = 1.0 + t * t;
    return 0.5 +
           (std::atan(t) + t / w * (1.0 + 2.0 / (3.0 * w))) * std::numbers::inv_pi;
}

}  // namespace copulakit
