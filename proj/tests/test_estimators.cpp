#include <cmath>
#include <doctest.h>
#include <vector>

#include "copulakit/errors.hpp"
#include "copulakit/estimators.hpp"
#include "copulakit/families.hpp"
#include "copulakit/kernels.hpp"
#include "copulakit/special.hpp"

using namespace copulakit;

namespace {

PseudoSample make_ps(std::vector<double> u, std::vector<double> v) {
    PseudoSample ps;
    ps.u = std::move(u);
    ps.v = std::move(v);
    return ps;
}

PseudoSample random_ps(std::size_t n, std::uint64_t seed, double tau = 0.5) {
    RngStream rng(seed);
    const Sample s = copula_sample(spec_from_tau(Family::Frank, tau), n, rng);
    return pseudo_obs(s, PseudoVariant::ShiftedE);
}

const std::vector<EstimatorKind> kKernelKinds = {
    EstimatorKind::LocalLinear, EstimatorKind::LocalLinearShrunk,
    EstimatorKind::MirrorReflection, EstimatorKind::MirrorReflectionShrunk,
    EstimatorKind::Transformation};

const std::vector<EstimatorKind> kCornerExact = {
    EstimatorKind::Empirical, EstimatorKind::MirrorReflection,
    EstimatorKind::MirrorReflectionShrunk, EstimatorKind::Transformation};

}  // namespace

TEST_CASE("pseudo-observations: rank transforms") {
    const Sample s{{10.0, 20.0, 30.0}, {3.0, 1.0, 2.0}};
    const PseudoSample shifted = pseudo_obs(s, PseudoVariant::ShiftedE);
    CHECK(shifted.u[0] == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(shifted.u[1] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(shifted.u[2] == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(shifted.v[0] == doctest::Approx(0.75).epsilon(1e-15));
    const PseudoSample centered = pseudo_obs(s, PseudoVariant::Centered);
    CHECK(centered.u[0] == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    CHECK(centered.u[1] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(centered.u[2] == doctest::Approx(5.0 / 6.0).epsilon(1e-15));
    CHECK_FALSE(shifted.had_ties);

    const Sample tiny{{1.0}, {2.0}};
    CHECK_THROWS_AS(pseudo_obs(tiny, PseudoVariant::ShiftedE), InsufficientDataError);
}

TEST_CASE("pseudo-observations: monotone-transform invariance and ties") {
    RngStream rng(3);
    Sample s = copula_sample(CopulaSpec(Family::Clayton, 2.0), 60, rng);
    Sample warped = s;
    for (auto& x : warped.x) x = std::exp(x);
    for (auto& y : warped.y) y = -1.0 / (1.0 + y);
    const PseudoSample a = pseudo_obs(s, PseudoVariant::ShiftedE);
    const PseudoSample b = pseudo_obs(warped, PseudoVariant::ShiftedE);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a.u[i] == b.u[i]);
        CHECK(a.v[i] == b.v[i]);
    }

    const Sample tied{{1.0, 1.0, 5.0}, {0.5, 1.5, 2.5}};
    const PseudoSample tp = pseudo_obs(tied, PseudoVariant::ShiftedE);
    CHECK(tp.had_ties);
    CHECK(tp.u[0] == doctest::Approx(1.5 / 4.0).epsilon(1e-15));  // average rank 1.5
    CHECK(tp.u[1] == doctest::Approx(1.5 / 4.0).epsilon(1e-15));
}

TEST_CASE("empirical estimator counts dominated pairs") {
    const PseudoSample ps = make_ps({0.25, 0.75}, {0.25, 0.75});
    CHECK(estimate_empirical(ps, 1.0, 1.0) == 1.0);
    CHECK(estimate_empirical(ps, 0.0, 0.0) == 0.0);
    CHECK(estimate_empirical(ps, 0.5, 0.5) == 0.5);
    CHECK(estimate_empirical(ps, 0.25, 0.25) == 0.5);  // closed on the atoms
}

TEST_CASE("single-point interior estimates equal K(0)^2") {
    const PseudoSample one = make_ps({0.5}, {0.5});
    CHECK(estimate_local_linear(one, 0.1, 0.5, 0.5) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(estimate_local_linear_shrunk(one, 0.1, 0.5, 0.5) ==
          doctest::Approx(0.25).epsilon(1e-14));
    CHECK(estimate_mirror(one, 0.1, 0.5, 0.5) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(estimate_mirror_shrunk(one, 0.1, 0.5, 0.5) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(estimate_transformation(one, 0.1, 0.5, 0.5) == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("local-linear estimator at (1,1) with data clear of the corner") {
    PseudoSample ps = random_ps(40, 17);
    for (auto& u : ps.u) u = 0.2 + 0.6 * u;
    for (auto& v : ps.v) v = 0.2 + 0.6 * v;
    CHECK(std::abs(estimate_local_linear(ps, 0.1, 1.0, 1.0) - 1.0) < 1e-12);
}

TEST_CASE("shrunk local-linear at the edges") {
    const PseudoSample ps = random_ps(30, 5);
    for (double v : {0.0, 0.3, 0.8, 1.0}) {
        CHECK(estimate_local_linear_shrunk(ps, 0.1, 0.0, v) == 0.0);
    }
    // u = 1: exactly the v-coordinate smoothing
    for (double v : {0.2, 0.55, 0.9}) {
        double expect = 0.0;
        const LocalKernelWindow win(v, 0.1);
        for (std::size_t i = 0; i < ps.size(); ++i) {
            expect += win.cdf((v - ps.v[i]) * (1.0 / (bandwidth_shrink(v) * 0.1)));
        }
        expect /= static_cast<double>(ps.size());
        CHECK(estimate_local_linear_shrunk(ps, 0.1, 1.0, v) ==
              doctest::Approx(expect).epsilon(1e-12));
    }
    CHECK(std::abs(estimate_local_linear_shrunk(ps, 0.1, 1.0, 1.0) - 1.0) < 1e-12);
}

TEST_CASE("shrunk local-linear far from data equals the empirical estimator exactly") {
    const PseudoSample ps = make_ps({0.48, 0.5, 0.52}, {0.5, 0.49, 0.51});
    // b(0.9) h = sqrt(0.1) * 0.02 ~ 0.0063; all data at least 0.38 away
    CHECK(estimate_local_linear_shrunk(ps, 0.02, 0.9, 0.9) ==
          estimate_empirical(ps, 0.9, 0.9));
    CHECK(estimate_local_linear_shrunk(ps, 0.02, 0.2, 0.9) ==
          estimate_empirical(ps, 0.2, 0.9));
}

TEST_CASE("mirror estimators vanish on the zero edges") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const PseudoSample ps = random_ps(25, 100 + seed);
        const double h = 0.03 + 0.2 * static_cast<double>(seed % 7) / 7.0;
        for (double w : {0.0, 0.2, 0.77, 1.0}) {
            CHECK(estimate_mirror(ps, h, 0.0, w) == 0.0);
            CHECK(estimate_mirror(ps, h, w, 0.0) == 0.0);
            CHECK(estimate_mirror_shrunk(ps, h, 0.0, w) == 0.0);
            CHECK(estimate_mirror_shrunk(ps, h, w, 0.0) == 0.0);
        }
    }
}

TEST_CASE("corner values are exact for E, MR, MRS, T") {
    const PseudoSample ps = random_ps(35, 77);
    for (EstimatorKind kind : kCornerExact) {
        EstimatorConfig config{kind, 0.2, PseudoVariant::ShiftedE};
        CHECK(estimate(ps, config, 0.0, 0.0) == 0.0);
        CHECK(estimate(ps, config, 0.0, 1.0) == 0.0);
        CHECK(estimate(ps, config, 1.0, 0.0) == 0.0);
        CHECK(estimate(ps, config, 1.0, 1.0) == 1.0);
    }
}

TEST_CASE("transformation estimator margins") {
    const PseudoSample ps = random_ps(20, 9);
    const double h = 0.15;
    for (double v : {0.1, 0.6, 0.95}) {
        CHECK(estimate_transformation(ps, h, 0.0, v) == 0.0);
    }
    for (double u : {0.3, 0.7}) {
        double expect = 0.0;
        const double zu = norm_quantile(u);
        for (std::size_t i = 0; i < ps.size(); ++i) {
            expect += epanechnikov_cdf((zu - norm_quantile(ps.u[i])) * (1.0 / h));
        }
        expect /= static_cast<double>(ps.size());
        CHECK(estimate_transformation(ps, h, u, 1.0) == doctest::Approx(expect).epsilon(1e-13));
    }
}

TEST_CASE("kernel estimators degenerate to the empirical copula as h -> 0") {
    const PseudoSample ps = random_ps(150, 404);
    const EvalGrid grid(101);
    const std::vector<double> emp =
        evaluate_grid(ps, {EstimatorKind::Empirical, 0.0, PseudoVariant::ShiftedE}, grid);
    for (EstimatorKind kind : kKernelKinds) {
        const std::vector<double> est =
            evaluate_grid(ps, {kind, 1e-9, PseudoVariant::ShiftedE}, grid);
        double sup = 0.0;
        for (std::size_t i = 0; i < est.size(); ++i) {
            sup = std::max(sup, std::abs(est[i] - emp[i]));
        }
        CHECK(sup < 1e-9);
    }
}

TEST_CASE("exchangeable samples give symmetric estimates") {
    PseudoSample base = random_ps(20, 55);
    PseudoSample sym;
    sym.u = base.u;
    sym.v = base.v;
    sym.u.insert(sym.u.end(), base.v.begin(), base.v.end());
    sym.v.insert(sym.v.end(), base.u.begin(), base.u.end());
    for (EstimatorKind kind :
         {EstimatorKind::Empirical, EstimatorKind::LocalLinear, EstimatorKind::LocalLinearShrunk,
          EstimatorKind::MirrorReflection, EstimatorKind::MirrorReflectionShrunk,
          EstimatorKind::Transformation}) {
        const EstimatorConfig config{kind, 0.12, PseudoVariant::ShiftedE};
        for (double u = 0.0; u <= 1.0; u += 0.125) {
            for (double v = 0.0; v < u; v += 0.125) {
                CHECK(std::abs(estimate(sym, config, u, v) - estimate(sym, config, v, u)) <
                      1e-12);
            }
        }
    }
}

TEST_CASE("E, MR, MRS, T are nondecreasing along grid rows and columns") {
    const PseudoSample ps = random_ps(40, 31);
    const EvalGrid grid(21);
    for (EstimatorKind kind : kCornerExact) {
        const EstimatorConfig config{kind, 0.18, PseudoVariant::ShiftedE};
        const std::vector<double> values = evaluate_grid(ps, config, grid);
        const int m = grid.size();
        for (int j = 0; j < m; ++j) {
            for (int k = 0; k + 1 < m; ++k) {
                CHECK(values[j * m + k + 1] >= values[j * m + k] - 1e-10);
                CHECK(values[(k + 1) * m + j] >= values[k * m + j] - 1e-10);
            }
        }
    }
}

TEST_CASE("estimates stay in a tight range on the full grid") {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const PseudoSample ps = random_ps(50 + 25 * seed, 900 + seed);
        const EvalGrid grid(101);
        for (EstimatorKind kind : kKernelKinds) {
            const EstimatorConfig config{kind, 0.1, PseudoVariant::ShiftedE};
            const std::vector<double> values = evaluate_grid(ps, config, grid);
            const bool loose = kind == EstimatorKind::LocalLinear ||
                               kind == EstimatorKind::LocalLinearShrunk;
            const double lo = loose ? -0.05 : -1e-12;
            const double hi = loose ? 1.05 : 1.0 + 1e-12;
            for (double x : values) {
                CHECK(x >= lo);
                CHECK(x <= hi);
            }
        }
    }
}

TEST_CASE("grid evaluation is bit-identical to the pointwise loop") {
    const PseudoSample ps = random_ps(20, 12);
    const EvalGrid grid(11);
    for (EstimatorKind kind :
         {EstimatorKind::Empirical, EstimatorKind::LocalLinear, EstimatorKind::LocalLinearShrunk,
          EstimatorKind::MirrorReflection, EstimatorKind::MirrorReflectionShrunk,
          EstimatorKind::Transformation}) {
        const EstimatorConfig config{kind, 0.2, PseudoVariant::ShiftedE};
        const std::vector<double> batch = evaluate_grid(ps, config, grid);
        for (int j = 0; j < grid.size(); ++j) {
            for (int k = 0; k < grid.size(); ++k) {
                CHECK(batch[j * grid.size() + k] ==
                      estimate(ps, config, grid.points[j], grid.points[k]));
            }
        }
    }
}

TEST_CASE("empirical grid on the 3x3 lattice") {
    const PseudoSample ps = make_ps({0.25, 0.75}, {0.25, 0.75});
    const EvalGrid grid(3);
    const std::vector<double> values =
        evaluate_grid(ps, {EstimatorKind::Empirical, 0.0, PseudoVariant::ShiftedE}, grid);
    for (int k = 0; k < 3; ++k) {
        CHECK(values[0 * 3 + k] == 0.0);
        CHECK(values[k * 3 + 0] == 0.0);
    }
    CHECK(values[2 * 3 + 2] == 1.0);
    CHECK(values[1 * 3 + 1] == 0.5);
}

TEST_CASE("bandwidth domain validation") {
    const PseudoSample ps = random_ps(10, 2);
    CHECK_THROWS_AS(estimate_local_linear(ps, 0.3, 0.5, 0.5), ParameterDomainError);
    CHECK_THROWS_AS(estimate_mirror(ps, 0.0, 0.5, 0.5), ParameterDomainError);
    CHECK_NOTHROW(estimate_transformation(ps, 0.6, 0.5, 0.5));
}
