#pragma once

#include <complex>

#include "lab/grid.hpp"

namespace lab {

using cplx = std::complex<double>;

// Wigner semicircle of given radius, unit mass:
//   rho(x) = 2 sqrt((r^2 - x^2)_+) / (pi r^2).
struct SemicircleLaw {
    double radius = 2.0;

    explicit SemicircleLaw(double r = 2.0);

    double density(double x) const;
    double cdf(double x) const;
    // Antiderivative of the CDF with cdf_antiderivative(-radius) = 0; closed
    // form, used for exact piecewise Wasserstein-1 integrals.
    double cdf_antiderivative(double x) const;
    // Inverse CDF on (0,1); bisection + Newton polish.
    double quantile(double u) const;
};

// The explicit one-parameter family of spreading densities
//   rho(x,t) = sqrt((2 sigma(t) - x^2)_+) / (pi sigma(t)),
// with sigma(t) = 1/gamma - (1 - gamma sigma0) e^{-2 gamma t}/gamma for gamma > 0
// and sigma(t) = sigma0 + 2t for gamma = 0. Support is |x| <= sqrt(2 sigma),
// mass is 1, and the velocity u = pi H rho is x/sigma inside the support.
struct SelfSimilarSolution {
    double gamma = 0.0;
    double sigma0 = 0.0;

    SelfSimilarSolution(double g, double s0);

    double sigma(double t) const;
    double half_width(double t) const { return std::sqrt(2.0 * sigma(t)); }
};

double rho_selfsim(double x, double t, const SelfSimilarSolution& sol);
double u_selfsim(double x, double t, const SelfSimilarSolution& sol);

// Closed-form second moment of the evolving density:
//   gamma > 0: mass^2/(2 gamma) - (mass^2 - 2 gamma m2_0) e^{-2 gamma t}/(2 gamma)
//   gamma = 0: m2_0 + mass^2 t
double second_moment_law(double t, double gamma, double mass, double m2_0);

enum class TraceSide { interior, upper_trace, lower_trace };

// Stieltjes transform of the semicircle law,
//   S(z) = (2/r^2) (z - sqrt(z^2 - r^2)),
// with the branch sqrt(z - r) * sqrt(z + r) (principal factors), cut on
// [-r, r] and Im S < 0 on the upper half plane. Points on the cut
// (|Im z| < 1e-14 and |Re z| <= r) need an explicit trace side; `interior`
// there is rejected. On the trace, S = u - i pi rho from above.
cplx stieltjes_semicircle(cplx z, TraceSide side, double radius = 2.0);

// Time/space change mapping the gamma > 0 flow onto the gamma = 0 one:
//   tau = (e^{2 gamma t} - 1) / (2 gamma),  scale = e^{gamma t};
// rho_{gamma}(x, t; sigma0) = scale * rho_0(scale * x, tau + sigma0/2).
struct RescaledTime {
    double tau;
    double scale;
};
RescaledTime rescale_gamma_to_zero(double gamma, double t);

}  // namespace lab
