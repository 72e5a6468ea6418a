#pragma once

#include <complex>
#include <numbers>
#include <vector>

#include "lab/grid.hpp"
#include "lab/oracles.hpp"

namespace lab {

// Initial data for the upper-half-plane transport solver. The holomorphic
// datum is f0(w) = (c/pi) * integral rho0(s)/(w - s) ds with c the velocity
// scale: on the real axis f0 = c*(H rho0 - i rho0), so c = pi gives the
// physical pairing u = pi H rho while c = 1 gives u = H rho.
enum class DataKind { grid_density, cauchy, semicircle };

struct InitialData {
    DataKind kind = DataKind::cauchy;
    double velocity_scale = std::numbers::pi;

    // cauchy: rho0 = (mass/pi) eps / (x^2 + eps^2)
    double epsilon = 1.0;
    double mass = 1.0;

    // semicircle: unit-mass law of the given radius
    double radius = 2.0;

    // grid_density: sampled density, compactly supported on its grid
    GridField rho0;

    static InitialData cauchy_data(double eps, double mass = 1.0,
                                   double velocity_scale = std::numbers::pi);
    static InitialData semicircle_data(double radius,
                                       double velocity_scale = std::numbers::pi);
    static InitialData grid_data(GridField rho0,
                                 double velocity_scale = std::numbers::pi);
};

// Evaluate f0 and f0' anywhere on the closed upper half plane. Grid data uses
// singularity-subtracted midpoint sums (local value and slope removed and
// reintegrated in closed form), which stay accurate uniformly down to the
// real axis where the plain kernel sum loses all digits.
cplx f0_eval(const InitialData& data, cplx w);
cplx f0_derivative(const InitialData& data, cplx w);

struct CharacteristicSolve {
    double gamma = 0.0;
    double t = 0.0;
    double newton_tol = 1e-12;
    int newton_max_iter = 60;
};

// Flow map Z(w,t) = w e^{-gamma t} + f0(w) sinh(gamma t)/gamma (limit w + f0(w) t
// at gamma = 0) and its w-derivative.
cplx flow_map(const InitialData& data, const CharacteristicSolve& cs, cplx w);
cplx flow_map_derivative(const InitialData& data, const CharacteristicSolve& cs, cplx w);

// Push one interior point forward; rejects Im w <= 0.
cplx forward_characteristic(const InitialData& data, const CharacteristicSolve& cs,
                            UpperHalfPoint w);

// Invert the flow map: find w with Z(w,t) = z, Im w >= 0. Damped Newton from
// a cold start (or the supplied warm start), with a two-stage bisection
// fallback that exploits monotonicity of the real system. Requires
// |Z'(w)|^2 bounded away from zero along the way; throws numeric_error on
// breakdown.
cplx backward_characteristic(const InitialData& data, const CharacteristicSolve& cs,
                             cplx z, const cplx* warm_start = nullptr);

// Solution along the real axis at time t: rho(x,t) and u(x,t) on out_grid,
// via f(x + i0, t) = f0(w) e^{gamma t} at the inverted characteristic root.
// Roots are continued point-to-point (warm starts) across the grid.
struct TraceResult {
    GridField rho;
    GridField u;
    std::vector<double> root_im;  // Im w per sample; ~0 in vacuum
};
TraceResult trace_density(const InitialData& data, const CharacteristicSolve& cs,
                          const Grid& out_grid);

// Gradient-catastrophe diagnostics for the unconfined flow (gamma = 0).
// The slope of u along the characteristic through x0 obeys a Riccati
// equation, so the first blow-up time is
//   t* = -1 / min_x d/dx u0(x),  u0 = c H rho0,
// attained where the initial slope is most negative.
struct BlowupEstimate {
    double x0 = 0.0;        // argmin of the initial slope
    double slope0 = 0.0;    // d/dx u0(x0) (negative)
    double t_star = 0.0;    // -1/slope0
};
BlowupEstimate blowup_estimate(const InitialData& data, const std::vector<double>& probes);

// Slope of u at the trace point x at time t, computed from the inverted
// characteristic: d/dx u(x,t) = Re[ c' f0'(w) / Z'(w) ] with c' = e^{gamma t}
// factors folded in. Used to monitor steepening up to the catastrophe.
double trace_velocity_slope(const InitialData& data, const CharacteristicSolve& cs, double x);

// Largest t <= t_max with min_x d/dx u(x,t) > -threshold, located by
// bisection over t using the probe set; pairs with blowup_estimate.
double steepening_time(const InitialData& data, double gamma, double threshold,
                       const std::vector<double>& probes, double t_max);

}  // namespace lab
