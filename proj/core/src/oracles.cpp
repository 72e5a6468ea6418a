#include "lab/oracles.hpp"

#include <cmath>
#include <numbers>

#include "lab/util.hpp"

namespace lab {

namespace {
constexpr double kPi = std::numbers::pi;
}

SemicircleLaw::SemicircleLaw(double r) : radius(r) {
    if (!(r > 0.0)) throw config_error("semicircle radius must be positive");
}

double SemicircleLaw::density(double x) const {
    const double d = radius * radius - x * x;
    if (d <= 0.0) return 0.0;
    return 2.0 * std::sqrt(d) / (kPi * radius * radius);
}

double SemicircleLaw::cdf(double x) const {
    if (x <= -radius) return 0.0;
    if (x >= radius) return 1.0;
    const double r2 = radius * radius;
    return 0.5 + x * std::sqrt(r2 - x * x) / (kPi * r2) + std::asin(x / radius) / kPi;
}

double SemicircleLaw::cdf_antiderivative(double x) const {
    if (x <= -radius) return 0.0;
    if (x >= radius) return radius + (x - radius);
    const double r2 = radius * radius;
    const double s = std::sqrt(r2 - x * x);
    return 0.5 * x - s * s * s / (3.0 * kPi * r2) + (x * std::asin(x / radius) + s) / kPi;
}

double SemicircleLaw::quantile(double u) const {
    if (!(u > 0.0 && u < 1.0)) throw config_error("quantile argument must lie in (0,1)");
    double lo = -radius, hi = radius;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (cdf(mid) < u)
            lo = mid;
        else
            hi = mid;
        const double rho = density(mid);
        if (rho > 1e-8) {
            // Newton polish once the bracket is tight.
            double x = mid + (u - cdf(mid)) / rho;
            if (x > lo && x < hi && std::abs(hi - lo) < 1e-6 * radius) {
                for (int k = 0; k < 4; ++k) x += (u - cdf(x)) / density(x);
                return x;
            }
        }
        if (hi - lo < 1e-15 * radius) break;
    }
    return 0.5 * (lo + hi);
}

SelfSimilarSolution::SelfSimilarSolution(double g, double s0) : gamma(g), sigma0(s0) {
    if (gamma < 0.0) throw config_error("confinement strength must be nonnegative");
    if (!(sigma0 >= 0.0)) throw config_error("sigma0 must be nonnegative");
}

double SelfSimilarSolution::sigma(double t) const {
    if (gamma == 0.0) return sigma0 + 2.0 * t;
    return (1.0 - (1.0 - gamma * sigma0) * std::exp(-2.0 * gamma * t)) / gamma;
}

double rho_selfsim(double x, double t, const SelfSimilarSolution& sol) {
    const double s = sol.sigma(t);
    if (!(s > 0.0)) throw numeric_error("degenerate spread: sigma(t) <= 0");
    const double d = 2.0 * s - x * x;
    if (d <= 0.0) return 0.0;
    return std::sqrt(d) / (kPi * s);
}

double u_selfsim(double x, double t, const SelfSimilarSolution& sol) {
    const double s = sol.sigma(t);
    if (!(s > 0.0)) throw numeric_error("degenerate spread: sigma(t) <= 0");
    const double d = x * x - 2.0 * s;
    if (d <= 0.0) return x / s;
    // Outside the support the velocity continues as the decaying branch of
    // the same quadratic; it matches x/sigma at the edge and decays like 1/x.
    const double root = std::sqrt(d);
    return (x > 0.0 ? x - root : x + root) / s;
}

double second_moment_law(double t, double gamma, double mass, double m2_0) {
    if (gamma == 0.0) return m2_0 + mass * mass * t;
    const double limit = mass * mass / (2.0 * gamma);
    return limit - (limit - m2_0) * std::exp(-2.0 * gamma * t);
}

cplx stieltjes_semicircle(cplx z, TraceSide side, double radius) {
    if (!(radius > 0.0)) throw config_error("semicircle radius must be positive");
    const bool on_cut = std::abs(z.imag()) < 1e-14 && std::abs(z.real()) <= radius;
    if (on_cut) {
        if (side == TraceSide::interior)
            throw config_error("point lies on the branch cut; pick a trace side");
        const double x = z.real();
        const double s = std::sqrt(std::max(radius * radius - x * x, 0.0));
        const cplx root = (side == TraceSide::upper_trace) ? cplx(0.0, s) : cplx(0.0, -s);
        return 2.0 / (radius * radius) * (cplx(x, 0.0) - root);
    }
    // Principal square roots of (z - r) and (z + r): the product has its only
    // cut on [-r, r] and behaves like z at infinity.
    const cplx root = std::sqrt(z - radius) * std::sqrt(z + radius);
    return 2.0 / (radius * radius) * (z - root);
}

RescaledTime rescale_gamma_to_zero(double gamma, double t) {
    if (gamma < 0.0) throw config_error("confinement strength must be nonnegative");
    if (gamma == 0.0) return {t, 1.0};
    return {std::expm1(2.0 * gamma * t) / (2.0 * gamma), std::exp(gamma * t)};
}

}  // namespace lab
