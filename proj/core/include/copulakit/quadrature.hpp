#pragma once

#include <functional>
#include <vector>

namespace copulakit {

// Gauss-Legendre rule on [-1, 1]; nodes/weights are computed on first use and
// cached per order.
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

const GaussLegendreRule& gauss_legendre_rule(int order);

double integrate_gl(const std::function<double(double)>& f, double a, double b, int order = 32);

// Adaptive bisection driven by a GL15/GL31 error estimate.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol = 1e-12, int max_depth = 48);

}  // namespace copulakit
