#include "copulakit/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace copulakit {

namespace {

GaussLegendreRule make_rule(int n) {
    GaussLegendreRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            // Legendre recurrence for P_n(x) and P_n'(x).
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

double gl_on_interval(const std::function<double(double)>& f, double a, double b,
                      const GaussLegendreRule& rule) {
    const double mid = 0.5 * (a + b);
    const double hw = 0.5 * (b - a);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        sum += rule.weights[i] * f(mid + hw * rule.nodes[i]);
    }
    return hw * sum;
}

double adapt(const std::function<double(double)>& f, double a, double b, double tol, int depth,
             const GaussLegendreRule& lo, const GaussLegendreRule& hi) {
    const double coarse = gl_on_interval(f, a, b, lo);
    const double fine = gl_on_interval(f, a, b, hi);
    // The relative floor stops subdivision once the panel is converged to
    // machine precision, whatever the requested tolerance.
    const double floor = 1e-15 * (std::abs(fine) + std::abs(coarse));
    if (std::abs(fine - coarse) <= std::max(tol, floor) || depth <= 0) return fine;
    const double mid = 0.5 * (a + b);
    return adapt(f, a, mid, 0.5 * tol, depth - 1, lo, hi) +
           adapt(f, mid, b, 0.5 * tol, depth - 1, lo, hi);
}

}  // namespace

const GaussLegendreRule& gauss_legendre_rule(int order) {
    static std::map<int, GaussLegendreRule> cache;
    static std::mutex mutex;
    std::lock_guard lock(mutex);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, make_rule(order)).first;
    return it->second;
}

double integrate_gl(const std::function<double(double)>& f, double a, double b, int order) {
    return gl_on_interval(f, a, b, gauss_legendre_rule(order));
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol, int max_depth) {
    if (a == b) return 0.0;
    const auto& lo = gauss_legendre_rule(15);
    const auto& hi = gauss_legendre_rule(31);
    return adapt(f, a, b, abs_tol, max_depth, lo, hi);
}

}  // namespace copulakit
