#include "copulakit/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

#include "copulakit/errors.hpp"
#include "copulakit/kernels.hpp"
#include "copulakit/special.hpp"

namespace copulakit {

namespace {

void validate_config(EstimatorKind kind, double h) {
    switch (kind) {
        case EstimatorKind::Empirical:
            return;
        case EstimatorKind::Transformation:
            if (!(h > 0.0)) throw ParameterDomainError("transformation estimator requires h > 0");
            return;
        default:
            if (!(h > 0.0) || h > 0.25) {
                throw ParameterDomainError("kernel estimators require h in (0, 1/4]");
            }
    }
}

double unit_step(double x) {
    if (x < 0.0) return 0.0;
    if (x > 0.0) return 1.0;
    return 0.5;
}

// Per-evaluation-coordinate state; both the pointwise operations and the grid
// evaluator go through this so that their arithmetic is identical.
class CoordFactor {
public:
    CoordFactor(EstimatorKind kind, double w, double h) : kind_(kind), w_(w), h_(h) {
        switch (kind_) {
            case EstimatorKind::LocalLinear:
                win_.emplace(w, h);
                inv_h_ = 1.0 / h;
                break;
            case EstimatorKind::LocalLinearShrunk:
                if (w > 0.0 && w < 1.0) {
                    win_.emplace(w, h);
                    inv_h_ = 1.0 / (bandwidth_shrink(w) * h);
                }
                break;
            case EstimatorKind::MirrorReflection:
                inv_h_ = 1.0 / h;
                break;
            case EstimatorKind::MirrorReflectionShrunk: {
                const double bw = bandwidth_shrink(w) * h;
                if (bw > 0.0) inv_h_ = 1.0 / bw;
                shrink_degenerate_ = bw == 0.0;
                break;
            }
            case EstimatorKind::Transformation:
                zw_ = norm_quantile(w);
                inv_h_ = 1.0 / h;
                break;
            case EstimatorKind::Empirical:
                break;
        }
    }

    // xi: data coordinate; zi: its normal transform (Transformation only).
    double eval(double xi, double zi) const {
        switch (kind_) {
            case EstimatorKind::Empirical:
                return xi <= w_ ? 1.0 : 0.0;
            case EstimatorKind::LocalLinear:
                return win_->cdf((w_ - xi) * inv_h_);
            case EstimatorKind::LocalLinearShrunk:
                if (w_ <= 0.0) return 0.0;
                if (w_ >= 1.0) return 1.0;
                return win_->cdf((w_ - xi) * inv_h_);
            case EstimatorKind::MirrorReflection:
                // the nine-term bracket sum telescopes to exactly 0 / 1 at the
                // edges for any h <= 1/4
                if (w_ == 0.0) return 0.0;
                if (w_ == 1.0) return 1.0;
                return mirror_sum(xi, inv_h_);
            case EstimatorKind::MirrorReflectionShrunk:
                if (shrink_degenerate_) return mirror_step_sum(xi);
                return mirror_sum(xi, inv_h_);
            case EstimatorKind::Transformation:
                return epanechnikov_cdf((zw_ - zi) * inv_h_);
        }
        return 0.0;
    }

private:
    double mirror_sum(double xi, double inv_h) const {
        double acc = 0.0;
        const double refl[3] = {xi, -xi, 2.0 - xi};
        for (double a : refl) {
            acc += epanechnikov_cdf((w_ - a) * inv_h) - epanechnikov_cdf(-a * inv_h);
        }
        return acc;
    }

    double mirror_step_sum(double xi) const {
        double acc = 0.0;
        const double refl[3] = {xi, -xi, 2.0 - xi};
        for (double a : refl) acc += unit_step(w_ - a) - unit_step(-a);
        return acc;
    }

    EstimatorKind kind_;
    double w_, h_;
    double inv_h_ = 0.0;
    double zw_ = 0.0;
    bool shrink_degenerate_ = false;
    std::optional<LocalKernelWindow> win_;
};

std::vector<double> transform_coords(const std::vector<double>& c, EstimatorKind kind) {
    std::vector<double> z;
    if (kind != EstimatorKind::Transformation) return z;
    z.resize(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) z[i] = norm_quantile(c[i]);
    return z;
}

double estimate_point(const PseudoSample& ps, EstimatorKind kind, double h, double u, double v) {
    validate_config(kind, h);
    const std::size_t n = ps.size();
    if (n == 0) throw InsufficientDataError("empty pseudo-sample");
    const CoordFactor fu(kind, u, h);
    const CoordFactor fv(kind, v, h);
    const std::vector<double> zu = transform_coords(ps.u, kind);
    const std::vector<double> zv = transform_coords(ps.v, kind);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double a = fu.eval(ps.u[i], zu.empty() ? 0.0 : zu[i]);
        const double b = fv.eval(ps.v[i], zv.empty() ? 0.0 : zv[i]);
        const double prod = a * b;
        acc += prod;
    }
    return acc / static_cast<double>(n);
}

std::vector<double> ranks_with_ties(const std::vector<double>& values, bool* had_ties) {
    const std::size_t n = values.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[idx[j + 1]] == values[idx[i]]) ++j;
        if (j > i) *had_ties = true;
        const double avg = 0.5 * static_cast<double>(i + j) + 1.0;  // average 1-based rank
        for (std::size_t k = i; k <= j; ++k) ranks[idx[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

}  // namespace

const char* estimator_tag(EstimatorKind k) {
    switch (k) {
        case EstimatorKind::Empirical: return "e";
        case EstimatorKind::LocalLinear: return "ll";
        case EstimatorKind::LocalLinearShrunk: return "lls";
        case EstimatorKind::MirrorReflection: return "mr";
        case EstimatorKind::MirrorReflectionShrunk: return "mrs";
        case EstimatorKind::Transformation: return "t";
    }
    return "?";
}

EstimatorKind estimator_from_tag(const std::string& tag) {
    if (tag == "e") return EstimatorKind::Empirical;
    if (tag == "ll") return EstimatorKind::LocalLinear;
    if (tag == "lls") return EstimatorKind::LocalLinearShrunk;
    if (tag == "mr") return EstimatorKind::MirrorReflection;
    if (tag == "mrs") return EstimatorKind::MirrorReflectionShrunk;
    if (tag == "t") return EstimatorKind::Transformation;
    throw ParameterDomainError("unknown estimator tag: " + tag);
}

bool estimator_uses_bandwidth(EstimatorKind k) { return k != EstimatorKind::Empirical; }

PseudoSample pseudo_obs(const Sample& sample, PseudoVariant variant) {
    const std::size_t n = sample.size();
    if (n < 2) throw InsufficientDataError("pseudo-observations require n >= 2");
    PseudoSample ps;
    ps.variant = variant;
    const auto rx = ranks_with_ties(sample.x, &ps.had_ties);
    const auto ry = ranks_with_ties(sample.y, &ps.had_ties);
    ps.u.resize(n);
    ps.v.resize(n);
    const double dn = static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (variant == PseudoVariant::ShiftedE) {
            ps.u[i] = rx[i] / (dn + 1.0);
            ps.v[i] = ry[i] / (dn + 1.0);
        } else {
            ps.u[i] = (2.0 * rx[i] - 1.0) / (2.0 * dn);
            ps.v[i] = (2.0 * ry[i] - 1.0) / (2.0 * dn);
        }
    }
    return ps;
}

EvalGrid::EvalGrid(int m) {
    if (m < 2) throw ParameterDomainError("grid needs at least 2 points per axis");
    points.resize(m);
    for (int j = 0; j < m; ++j) points[j] = static_cast<double>(j) / (m - 1);
    points.front() = 0.0;
    points.back() = 1.0;
}

double estimate_empirical(const PseudoSample& ps, double u, double v) {
    return estimate_point(ps, EstimatorKind::Empirical, 0.0, u, v);
}

double estimate_local_linear(const PseudoSample& ps, double h, double u, double v) {
    return estimate_point(ps, EstimatorKind::LocalLinear, h, u, v);
}

double estimate_local_linear_shrunk(const PseudoSample& ps, double h, double u, double v) {
    return estimate_point(ps, EstimatorKind::LocalLinearShrunk, h, u, v);
}

double estimate_mirror(const PseudoSample& ps, double h, double u, double v) {
    return estimate_point(ps, EstimatorKind::MirrorReflection, h, u, v);
}

double estimate_mirror_shrunk(const PseudoSample& ps, double h, double u, double v) {
    return estimate_point(ps, EstimatorKind::MirrorReflectionShrunk, h, u, v);
}

double estimate_transformation(const PseudoSample& ps, double h, double u, double v) {
    return estimate_point(ps, EstimatorKind::Transformation, h, u, v);
}

double estimate(const PseudoSample& ps, const EstimatorConfig& config, double u, double v) {
    return estimate_point(ps, config.kind, config.h, u, v);
}

std::vector<double> evaluate_grid(const PseudoSample& ps, const EstimatorConfig& config,
                                  const EvalGrid& grid) {
    validate_config(config.kind, config.h);
    const std::size_t n = ps.size();
    if (n == 0) throw InsufficientDataError("empty pseudo-sample");
    const int m = grid.size();
    const std::vector<double> zu = transform_coords(ps.u, config.kind);
    const std::vector<double> zv = transform_coords(ps.v, config.kind);

    auto factors = [&](const std::vector<double>& coords, const std::vector<double>& z) {
        std::vector<double> f(static_cast<std::size_t>(m) * n);
        for (int j = 0; j < m; ++j) {
            const CoordFactor cf(config.kind, grid.points[j], config.h);
            double* row = f.data() + static_cast<std::size_t>(j) * n;
            for (std::size_t i = 0; i < n; ++i) {
                row[i] = cf.eval(coords[i], z.empty() ? 0.0 : z[i]);
            }
        }
        return f;
    };
    const std::vector<double> fu = factors(ps.u, zu);
    const std::vector<double> fv = factors(ps.v, zv);

    std::vector<double> out(static_cast<std::size_t>(m) * m);
    for (int j = 0; j < m; ++j) {
        const double* ru = fu.data() + static_cast<std::size_t>(j) * n;
        for (int k = 0; k < m; ++k) {
            const double* rv = fv.data() + static_cast<std::size_t>(k) * n;
            double acc = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double prod = ru[i] * rv[i];
                acc += prod;
            }
            out[static_cast<std::size_t>(j) * m + k] = acc / static_cast<double>(n);
        }
    }
    return out;
}

}  // namespace copulakit
