#pragma once

#include <string>

#include "copulakit/rng.hpp"
#include "copulakit/types.hpp"

namespace copulakit {

enum class Family { Independence, Clayton, Gumbel, Frank, Plackett, Normal, Student4 };

const char* family_name(Family f);
Family family_from_name(const std::string& name);

// Parametric bivariate copula. For Normal/Student4 the parameter is the
// correlation rho in (-1,1); Student degrees of freedom are fixed at 4.
struct CopulaSpec {
    Family family;
    double theta;

    CopulaSpec(Family f, double t);  // validates the parameter domain
};

// C(u,v) for u,v in [0,1]. Elliptical families are evaluated by adaptive
// quadrature of the closed-form conditional; everything else is closed form.
double copula_cdf(const CopulaSpec& spec, double u, double v);

// First partials dC/du and dC/dv. Interior arguments are clamped into
// [eps, 1-eps]; the other coordinate at 0/1 returns the exact limit.
double copula_du(const CopulaSpec& spec, double u, double v);
double copula_dv(const CopulaSpec& spec, double u, double v);

struct SecondPartials {
    double duu, duv, dvv;
};

// Second partials on the open square; throws ParameterDomainError at the edges.
SecondPartials copula_second_partials(const CopulaSpec& spec, double u, double v);

// n i.i.d. pairs from the copula, deterministic given the stream state.
Sample copula_sample(const CopulaSpec& spec, std::size_t n, RngStream& rng);

// Kendall's tau of the family at its parameter (closed form where available,
// Debye quadrature for Frank, grid quadrature for Plackett).
double tau_from_theta(const CopulaSpec& spec);

// Parameter with the given population tau; throws InversionRangeError when
// tau is not attainable for the family.
CopulaSpec spec_from_tau(Family family, double tau);

// Independent oracle: tau = 4 int int C dC - 1 via rectangle-increment cell
// masses on a (grid+1)^2 lattice of C values. Test use only.
double tau_brute(const CopulaSpec& spec, int grid);

// Empirical Kendall's tau (tau-a): (concordant - discordant) / (n(n-1)/2),
// ties counting as neither. O(n log n).
double kendall_tau(const Sample& sample);

// Attainable open tau range of a family, used for inversion checks.
struct TauRange {
    double lo, hi;
};
TauRange family_tau_range(Family family);

}  // namespace copulakit
