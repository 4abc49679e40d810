#include "copulakit/families.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>

#include "copulakit/errors.hpp"
#include "copulakit/quadrature.hpp"
#include "copulakit/special.hpp"

namespace copulakit {

namespace {

constexpr double kEdgeEps = 1e-12;

bool near_zero(double x) { return std::abs(x) < 1e-12; }

double clamp_interior(double w) { return std::clamp(w, kEdgeEps, 1.0 - kEdgeEps); }

// ---------------------------------------------------------------------------
// Archimedean generators: phi, phi', phi''.

struct Generator {
    double phi1;  // phi'(t)
    double phi2;  // phi''(t)
};

Generator clayton_gen(double t, double theta) {
    const double p = std::pow(t, -theta - 2.0);
    return {-p * t, (theta + 1.0) * p};
}

Generator gumbel_gen(double t, double theta) {
    const double lt = -std::log(t);
    const double d1 = -theta * std::pow(lt, theta - 1.0) / t;
    const double d2 = theta * std::pow(lt, theta - 2.0) * ((theta - 1.0) + lt) / (t * t);
    return {d1, d2};
}

Generator frank_gen(double t, double theta) {
    const double a = std::exp(-theta * t);
    const double am1 = std::expm1(-theta * t);
    return {theta * a / am1, theta * theta * a / (am1 * am1)};
}

double clayton_cdf(double u, double v, double theta) {
    return std::pow(std::pow(u, -theta) + std::pow(v, -theta) - 1.0, -1.0 / theta);
}

double gumbel_cdf(double u, double v, double theta) {
    const double s = std::pow(std::pow(-std::log(u), theta) + std::pow(-std::log(v), theta),
                              1.0 / theta);
    return std::exp(-s);
}

double frank_cdf(double u, double v, double theta) {
    return -std::log1p(std::expm1(-theta * u) * std::expm1(-theta * v) / std::expm1(-theta)) /
           theta;
}

// ---------------------------------------------------------------------------
// Plackett closed forms. C written as 2 theta u v / (S + D) to avoid the
// subtractive cancellation of the textbook root.

struct PlackettParts {
    double S, D;
};

PlackettParts plackett_parts(double u, double v, double theta) {
    const double S = 1.0 + (theta - 1.0) * (u + v);
    const double disc = S * S - 4.0 * theta * (theta - 1.0) * u * v;
    return {S, std::sqrt(disc)};
}

double plackett_cdf(double u, double v, double theta) {
    const auto [S, D] = plackett_parts(u, v, theta);
    return 2.0 * theta * u * v / (S + D);
}

double plackett_du(double u, double v, double theta) {
    const auto [S, D] = plackett_parts(u, v, theta);
    return 0.5 * (1.0 - (S - 2.0 * theta * v) / D);
}

// ---------------------------------------------------------------------------
// Elliptical conditionals (Appendix-style closed forms) and 1-D quadrature
// for the joint CDF.

double normal_cond(double rho, double x, double y) {
    return norm_cdf((y - rho * x) / std::sqrt(1.0 - rho * rho));
}

double student4_cond(double rho, double x, double y) {
    const double scale = std::sqrt(5.0 / ((1.0 - rho * rho) * (4.0 + x * x)));
    return student5_cdf((y - rho * x) * scale);
}

double normal_cdf_uv(double rho, double u, double v) {
    const double xu = norm_quantile(u);
    const double y = norm_quantile(v);
    const double s = std::sqrt(1.0 - rho * rho);
    const auto f = [&](double x) { return norm_pdf(x) * norm_cdf((y - rho * x) / s); };
    return integrate_adaptive(f, -9.0, xu, 1e-13);
}

double student4_cdf_uv(double rho, double u, double v) {
    const double y = student4_quantile(v);
    // s = w^4 removes the algebraic cusp of the conditional at s -> 0.
    const auto f = [&](double w) {
        const double w3 = w * w * w;
        return student4_cond(rho, student4_quantile(w3 * w), y) * 4.0 * w3;
    };
    return integrate_adaptive(f, 0.0, std::pow(u, 0.25), 1e-13);
}

// ---------------------------------------------------------------------------
// Kendall's tau maps.

double debye1(double theta) {
    // D1(theta) = (1/theta) int_0^theta t/(e^t - 1) dt, theta > 0.
    const auto f = [](double t) { return t < 1e-12 ? 1.0 : t / std::expm1(t); };
    return integrate_gl(f, 0.0, theta, 64) / theta;
}

double frank_tau(double theta) {
    if (theta < 0.0) return -frank_tau(-theta);
    return 1.0 - 4.0 / theta * (1.0 - debye1(theta));
}

double plackett_tau(double theta) {
    // tau = 1 - 4 int int C_u C_v du dv, 256x256 midpoint rule, memoized.
    static std::map<double, double> cache;
    static std::mutex mutex;
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(theta); it != cache.end()) return it->second;
    }
    constexpr int m = 256;
    double acc = 0.0;
    for (int j = 0; j < m; ++j) {
        const double u = (j + 0.5) / m;
        for (int k = 0; k < m; ++k) {
            const double v = (k + 0.5) / m;
            acc += plackett_du(u, v, theta) * plackett_du(v, u, theta);
        }
    }
    const double tau = 1.0 - 4.0 * acc / (static_cast<double>(m) * m);
    std::lock_guard lock(mutex);
    cache.emplace(theta, tau);
    return tau;
}

// Increasing map theta -> tau inverted by bisection on [lo, hi].
template <class F>
double invert_increasing(const F& f, double target, double lo, double hi) {
    double flo = f(lo), fhi = f(hi);
    if (target < flo || target > fhi) {
        throw InversionRangeError("tau inversion target outside bracket");
    }
    for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, std::abs(lo)); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) < target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------------------
// Sampling helpers.

// Positive stable S with Laplace transform exp(-t^alpha), alpha in (0,1);
// Chambers-Mallows-Stuck / Kanter representation.
double positive_stable(double alpha, RngStream& rng) {
    const double theta = std::numbers::pi * rng.uniform_open();
    const double w = rng.exponential();
    const double num = std::sin(alpha * theta);
    const double den = std::pow(std::sin(theta), 1.0 / alpha);
    return num / den * std::pow(std::sin((1.0 - alpha) * theta) / w, (1.0 - alpha) / alpha);
}

std::pair<double, double> sample_pair(const CopulaSpec& spec, RngStream& rng) {
    const double theta = spec.theta;
    switch (spec.family) {
        case Family::Independence:
            return {rng.uniform_open(), rng.uniform_open()};
        case Family::Clayton: {
            if (near_zero(theta)) return {rng.uniform_open(), rng.uniform_open()};
            // Marshall-Olkin gamma frailty.
            const double w = rng.gamma(1.0 / theta);
            const double e1 = rng.exponential();
            const double e2 = rng.exponential();
            return {std::pow(1.0 + e1 / w, -1.0 / theta), std::pow(1.0 + e2 / w, -1.0 / theta)};
        }
        case Family::Gumbel: {
            if (near_zero(theta - 1.0)) return {rng.uniform_open(), rng.uniform_open()};
            const double alpha = 1.0 / theta;
            const double s = positive_stable(alpha, rng);
            const double e1 = rng.exponential();
            const double e2 = rng.exponential();
            return {std::exp(-std::pow(e1 / s, alpha)), std::exp(-std::pow(e2 / s, alpha))};
        }
        case Family::Frank: {
            const double u = rng.uniform_open();
            const double p = rng.uniform_open();
            const double a = std::exp(-theta * u);
            const double b = 1.0 + p * std::expm1(-theta) / (a - p * (a - 1.0));
            return {u, -std::log(b) / theta};
        }
        case Family::Plackett: {
            // Conditional inversion in closed form (Johnson 1987).
            const double u = rng.uniform_open();
            const double t = rng.uniform_open();
            const double a = t * (1.0 - t);
            const double b = theta + a * (theta - 1.0) * (theta - 1.0);
            const double c =
                2.0 * a * (u * theta * theta + 1.0 - u) + theta * (1.0 - 2.0 * a);
            const double d = std::sqrt(theta) *
                             std::sqrt(theta + 4.0 * a * u * (1.0 - u) * (1.0 - theta) *
                                                   (1.0 - theta));
            return {u, (c - (1.0 - 2.0 * t) * d) / (2.0 * b)};
        }
        case Family::Normal: {
            const double z1 = rng.normal();
            const double z2 = rng.normal();
            const double y = theta * z1 + std::sqrt(1.0 - theta * theta) * z2;
            return {norm_cdf(z1), norm_cdf(y)};
        }
        case Family::Student4: {
            const double z1 = rng.normal();
            const double z2 = rng.normal();
            const double y = theta * z1 + std::sqrt(1.0 - theta * theta) * z2;
            const double chi2 = 2.0 * (rng.exponential() + rng.exponential());
            const double scale = std::sqrt(chi2 / 4.0);
            return {student4_cdf(z1 / scale), student4_cdf(y / scale)};
        }
    }
    throw ParameterDomainError("unknown family");
}

}  // namespace

const char* family_name(Family f) {
    switch (f) {
        case Family::Independence: return "independence";
        case Family::Clayton: return "clayton";
        case Family::Gumbel: return "gumbel";
        case Family::Frank: return "frank";
        case Family::Plackett: return "plackett";
        case Family::Normal: return "normal";
        case Family::Student4: return "student4";
    }
    return "?";
}

Family family_from_name(const std::string& name) {
    if (name == "independence") return Family::Independence;
    if (name == "clayton") return Family::Clayton;
    if (name == "gumbel") return Family::Gumbel;
    if (name == "frank") return Family::Frank;
    if (name == "plackett") return Family::Plackett;
    if (name == "normal") return Family::Normal;
    if (name == "student4") return Family::Student4;
    throw ParameterDomainError("unknown copula family: " + name);
}

CopulaSpec::CopulaSpec(Family f, double t) : family(f), theta(t) {
    switch (f) {
        case Family::Independence:
            theta = 0.0;
            return;
        case Family::Clayton:
            if (!(t >= 0.0)) throw ParameterDomainError("Clayton requires theta >= 0");
            return;
        case Family::Gumbel:
            if (!(t >= 1.0)) throw ParameterDomainError("Gumbel requires theta >= 1");
            return;
        case Family::Frank:
            if (near_zero(t)) throw ParameterDomainError("Frank requires theta != 0");
            return;
        case Family::Plackett:
            if (!(t > 0.0) || near_zero(t - 1.0))
                throw ParameterDomainError("Plackett requires theta > 0, theta != 1");
            return;
        case Family::Normal:
        case Family::Student4:
            if (!(t > -1.0 && t < 1.0))
                throw ParameterDomainError("correlation must lie in (-1, 1)");
            return;
    }
    throw ParameterDomainError("unknown family");
}

double copula_cdf(const CopulaSpec& spec, double u, double v) {
    if (u < 0.0 || u > 1.0 || v < 0.0 || v > 1.0) {
        throw ParameterDomainError("copula_cdf arguments must lie in [0,1]");
    }
    if (u == 0.0 || v == 0.0) return 0.0;
    if (u == 1.0) return v;
    if (v == 1.0) return u;
    const double theta = spec.theta;
    switch (spec.family) {
        case Family::Independence: return u * v;
        case Family::Clayton: return near_zero(theta) ? u * v : clayton_cdf(u, v, theta);
        case Family::Gumbel: return gumbel_cdf(u, v, theta);
        case Family::Frank: return frank_cdf(u, v, theta);
        case Family::Plackett: return plackett_cdf(u, v, theta);
        case Family::Normal: return normal_cdf_uv(theta, u, v);
        case Family::Student4: return student4_cdf_uv(theta, u, v);
    }
    throw ParameterDomainError("unknown family");
}

double copula_du(const CopulaSpec& spec, double u, double v) {
    if (v <= 0.0) return 0.0;
    if (v >= 1.0) return 1.0;
    u = clamp_interior(u);
    const double theta = spec.theta;
    switch (spec.family) {
        case Family::Independence: return v;
        case Family::Clayton: {
            if (near_zero(theta)) return v;
            const double c = clayton_cdf(u, v, theta);
            return clayton_gen(u, theta).phi1 / clayton_gen(c, theta).phi1;
        }
        case Family::Gumbel: {
            const double c = gumbel_cdf(u, v, theta);
            return gumbel_gen(u, theta).phi1 / gumbel_gen(c, theta).phi1;
        }
        case Family::Frank: {
            const double c = frank_cdf(u, v, theta);
            return frank_gen(u, theta).phi1 / frank_gen(c, theta).phi1;
        }
        case Family::Plackett: return plackett_du(u, v, theta);
        case Family::Normal: return normal_cond(theta, norm_quantile(u), norm_quantile(v));
        case Family::Student4:
            return student4_cond(theta, student4_quantile(u), student4_quantile(v));
    }
    throw ParameterDomainError("unknown family");
}

double copula_dv(const CopulaSpec& spec, double u, double v) {
    // All families here are exchangeable, so dC/dv(u,v) = dC/du(v,u).
    return copula_du(spec, v, u);
}

SecondPartials copula_second_partials(const CopulaSpec& spec, double u, double v) {
    if (!(u > 0.0 && u < 1.0 && v > 0.0 && v < 1.0)) {
        throw ParameterDomainError("second partials require interior (u,v)");
    }
    const double theta = spec.theta;
    switch (spec.family) {
        case Family::Independence: return {0.0, 1.0, 0.0};
        case Family::Clayton:
        case Family::Gumbel:
        case Family::Frank: {
            if (spec.family == Family::Clayton && near_zero(theta)) return {0.0, 1.0, 0.0};
            double c;
            Generator gu, gv, gc;
            if (spec.family == Family::Clayton) {
                c = clayton_cdf(u, v, theta);
                gu = clayton_gen(u, theta);
                gv = clayton_gen(v, theta);
                gc = clayton_gen(c, theta);
            } else if (spec.family == Family::Gumbel) {
                c = gumbel_cdf(u, v, theta);
                gu = gumbel_gen(u, theta);
                gv = gumbel_gen(v, theta);
                gc = gumbel_gen(c, theta);
            } else {
                c = frank_cdf(u, v, theta);
                gu = frank_gen(u, theta);
                gv = frank_gen(v, theta);
                gc = frank_gen(c, theta);
            }
            const double pc3 = gc.phi1 * gc.phi1 * gc.phi1;
            return {gu.phi2 / gc.phi1 - gu.phi1 * gu.phi1 * gc.phi2 / pc3,
                    -gu.phi1 * gv.phi1 * gc.phi2 / pc3,
                    gv.phi2 / gc.phi1 - gv.phi1 * gv.phi1 * gc.phi2 / pc3};
        }
        case Family::Plackett: {
            const auto [S, D] = plackett_parts(u, v, theta);
            const double d3 = D * D * D;
            const double tm1 = theta - 1.0;
            return {-2.0 * theta * tm1 * v * (1.0 - v) / d3,
                    theta * (1.0 + tm1 * (u + v - 2.0 * u * v)) / d3,
                    -2.0 * theta * tm1 * u * (1.0 - u) / d3};
        }
        case Family::Normal: {
            const double x = norm_quantile(u), y = norm_quantile(v);
            const double s = std::sqrt(1.0 - theta * theta);
            const double duu = -theta / s * norm_pdf((y - theta * x) / s) / norm_pdf(x);
            const double dvv = -theta / s * norm_pdf((x - theta * y) / s) / norm_pdf(y);
            const double duv = norm_pdf((y - theta * x) / s) / (s * norm_pdf(y));
            return {duu, duv, dvv};
        }
        case Family::Student4: {
            const double x = student4_quantile(u), y = student4_quantile(v);
            const double s2 = 1.0 - theta * theta;
            const double kx = std::sqrt(5.0 / (s2 * (4.0 + x * x)));
            const double ky = std::sqrt(5.0 / (s2 * (4.0 + y * y)));
            const double gx = (y - theta * x) * kx;
            const double gy = (x - theta * y) * ky;
            const double duu = -student5_pdf(gx) * kx * (4.0 * theta + x * y) /
                               ((4.0 + x * x) * student4_pdf(x));
            const double dvv = -student5_pdf(gy) * ky * (4.0 * theta + x * y) /
                               ((4.0 + y * y) * student4_pdf(y));
            const double duv = student5_pdf(gx) * kx / student4_pdf(y);
            return {duu, duv, dvv};
        }
    }
    throw ParameterDomainError("unknown family");
}

Sample copula_sample(const CopulaSpec& spec, std::size_t n, RngStream& rng) {
    if (n < 1) throw InsufficientDataError("sample size must be >= 1");
    Sample out;
    out.x.reserve(n);
    out.y.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto [u, v] = sample_pair(spec, rng);
        out.x.push_back(u);
        out.y.push_back(v);
    }
    return out;
}

double tau_from_theta(const CopulaSpec& spec) {
    const double theta = spec.theta;
    switch (spec.family) {
        case Family::Independence: return 0.0;
        case Family::Clayton: return theta / (theta + 2.0);
        case Family::Gumbel: return 1.0 - 1.0 / theta;
        case Family::Frank: return frank_tau(theta);
        case Family::Plackett: return plackett_tau(theta);
        case Family::Normal:
        case Family::Student4: return 2.0 / std::numbers::pi * std::asin(theta);
    }
    throw ParameterDomainError("unknown family");
}

TauRange family_tau_range(Family family) {
    switch (family) {
        case Family::Independence: return {0.0, 0.0};
        case Family::Clayton: return {0.0, 1.0};
        case Family::Gumbel: return {0.0, 1.0};
        case Family::Frank: return {-1.0, 1.0};
        case Family::Plackett: return {-1.0, 1.0};
        case Family::Normal:
        case Family::Student4: return {-1.0, 1.0};
    }
    throw ParameterDomainError("unknown family");
}

CopulaSpec spec_from_tau(Family family, double tau) {
    switch (family) {
        case Family::Independence:
            if (std::abs(tau) > 1e-12)
                throw InversionRangeError("independence attains only tau = 0");
            return {family, 0.0};
        case Family::Clayton:
            if (!(tau > 0.0 && tau < 1.0))
                throw InversionRangeError("Clayton requires tau in (0,1)");
            return {family, 2.0 * tau / (1.0 - tau)};
        case Family::Gumbel:
            if (!(tau > 0.0 && tau < 1.0))
                throw InversionRangeError("Gumbel requires tau in (0,1)");
            return {family, 1.0 / (1.0 - tau)};
        case Family::Frank: {
            if (!(std::abs(tau) < 0.999) || near_zero(tau))
                throw InversionRangeError("Frank tau inversion requires 0 < |tau| < 0.999");
            const double mag = invert_increasing(frank_tau, std::abs(tau), 1e-9, 700.0);
            return {family, tau > 0.0 ? mag : -mag};
        }
        case Family::Plackett: {
            if (!(std::abs(tau) < 0.999) || near_zero(tau))
                throw InversionRangeError("Plackett tau inversion requires 0 < |tau| < 0.999");
            if (tau > 0.0) {
                return {family, invert_increasing(plackett_tau, tau, 1.0 + 1e-9, 1e8)};
            }
            return {family, invert_increasing(plackett_tau, tau, 1e-9, 1.0 - 1e-9)};
        }
        case Family::Normal:
        case Family::Student4:
            if (!(std::abs(tau) < 1.0))
                throw InversionRangeError("elliptical tau inversion requires |tau| < 1");
            return {family, std::sin(std::numbers::pi * tau / 2.0)};
    }
    throw ParameterDomainError("unknown family");
}

double tau_brute(const CopulaSpec& spec, int grid) {
    if (grid < 64) throw ParameterDomainError("tau_brute requires grid >= 64");
    const int m = grid;
    const bool elliptical = spec.family == Family::Normal || spec.family == Family::Student4;
    std::vector<double> lattice(static_cast<std::size_t>(m + 1) * (m + 1));
    auto at = [&](int j, int k) -> double& {
        return lattice[static_cast<std::size_t>(j) * (m + 1) + k];
    };

    if (!elliptical) {
        for (int j = 0; j <= m; ++j) {
            const double u = static_cast<double>(j) / m;
            for (int k = 0; k <= m; ++k) {
                at(j, k) = copula_cdf(spec, u, static_cast<double>(k) / m);
            }
        }
    } else {
        // Column-cumulative quadrature of the conditional; GL8 per lattice
        // cell, the cusp cell at u = 0 via a w^4 substitution.
        const auto& gl8 = gauss_legendre_rule(8);
        const auto& gl32 = gauss_legendre_rule(32);
        const bool normal = spec.family == Family::Normal;
        const double rho = spec.theta;
        // Quantiles of the GL abscissae are shared across columns.
        std::vector<double> cell_x(static_cast<std::size_t>(m) * 8);
        for (int j = 1; j < m; ++j) {
            for (int i = 0; i < 8; ++i) {
                const double s =
                    (j + 0.5 * (1.0 + gl8.nodes[i])) / m;
                cell_x[static_cast<std::size_t>(j) * 8 + i] =
                    normal ? norm_quantile(s) : student4_quantile(s);
            }
        }
        std::vector<double> head_x(32);
        const double delta = 1.0 / m;
        for (int i = 0; i < 32; ++i) {
            const double w = 0.5 * (1.0 + gl32.nodes[i]);
            const double s = delta * w * w * w * w;
            head_x[i] = normal ? norm_quantile(s) : student4_quantile(s);
        }
        for (int k = 0; k <= m; ++k) {
            const double v = static_cast<double>(k) / m;
            if (k == 0) {
                for (int j = 0; j <= m; ++j) at(j, 0) = 0.0;
                continue;
            }
            if (k == m) {
                for (int j = 0; j <= m; ++j) at(j, m) = static_cast<double>(j) / m;
                continue;
            }
            const double y = normal ? norm_quantile(v) : student4_quantile(v);
            auto cond = [&](double x) {
                return normal ? normal_cond(rho, x, y) : student4_cond(rho, x, y);
            };
            at(0, k) = 0.0;
            double head = 0.0;  // int_0^delta of the conditional, w-substituted
            for (int i = 0; i < 32; ++i) {
                const double w = 0.5 * (1.0 + gl32.nodes[i]);
                head += gl32.weights[i] * cond(head_x[i]) * 4.0 * delta * w * w * w;
            }
            at(1, k) = 0.5 * head;
            for (int j = 1; j < m; ++j) {
                double cell = 0.0;
                for (int i = 0; i < 8; ++i) {
                    cell += gl8.weights[i] * cond(cell_x[static_cast<std::size_t>(j) * 8 + i]);
                }
                at(j + 1, k) = at(j, k) + 0.5 * delta * cell;
            }
        }
    }

    double acc = 0.0;
    for (int j = 0; j < m; ++j) {
        for (int k = 0; k < m; ++k) {
            const double mass = at(j + 1, k + 1) - at(j + 1, k) - at(j, k + 1) + at(j, k);
            const double mean = 0.25 * (at(j, k) + at(j + 1, k) + at(j, k + 1) + at(j + 1, k + 1));
            acc += mean * mass;
        }
    }
    return 4.0 * acc - 1.0;
}

double kendall_tau(const Sample& sample) {
    const std::size_t n = sample.size();
    if (n < 2) throw InsufficientDataError("Kendall's tau requires n >= 2");
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        if (sample.x[a] != sample.x[b]) return sample.x[a] < sample.x[b];
        return sample.y[a] < sample.y[b];
    });

    auto pairs_in_runs = [](const std::vector<double>& sorted) {
        double ties = 0.0;
        std::size_t run = 1;
        for (std::size_t i = 1; i <= sorted.size(); ++i) {
            if (i < sorted.size() && sorted[i] == sorted[i - 1]) {
                ++run;
            } else {
                ties += 0.5 * static_cast<double>(run) * (run - 1);
                run = 1;
            }
        }
        return ties;
    };

    std::vector<double> xs(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = sample.x[idx[i]];
        ys[i] = sample.y[idx[i]];
    }
    double tie_x = pairs_in_runs(xs);
    double tie_xy = 0.0;
    {
        std::size_t run = 1;
        for (std::size_t i = 1; i <= n; ++i) {
            if (i < n && xs[i] == xs[i - 1] && ys[i] == ys[i - 1]) {
                ++run;
            } else {
                tie_xy += 0.5 * static_cast<double>(run) * (run - 1);
                run = 1;
            }
        }
    }

    // Strict-inversion count by merge sort on the y sequence.
    std::vector<double> work(n), buf(n);
    work = ys;
    double discordant = 0.0;
    for (std::size_t width = 1; width < n; width *= 2) {
        for (std::size_t lo = 0; lo + width < n; lo += 2 * width) {
            const std::size_t mid = lo + width;
            const std::size_t hi = std::min(lo + 2 * width, n);
            std::size_t li = lo, ri = mid, o = lo;
            while (li < mid && ri < hi) {
                if (work[ri] < work[li]) {
                    discordant += static_cast<double>(mid - li);
                    buf[o++] = work[ri++];
                } else {
                    buf[o++] = work[li++];
                }
            }
            while (li < mid) buf[o++] = work[li++];
            while (ri < hi) buf[o++] = work[ri++];
            std::copy(buf.begin() + lo, buf.begin() + hi, work.begin() + lo);
        }
    }
    std::sort(ys.begin(), ys.end());
    const double tie_y = pairs_in_runs(ys);
    const double total = 0.5 * static_cast<double>(n) * (n - 1);
    return (total - 2.0 * discordant - tie_x - tie_y + tie_xy) / total;
}

}  // namespace copulakit
