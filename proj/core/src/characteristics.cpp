#include "lab/characteristics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lab/util.hpp"

namespace lab {

namespace {

constexpr double kPi = std::numbers::pi;

// sqrt(w^2 - r^2) with the cut on [-r, r]: product of principal roots.
// On the cut the upper-trace limit i*sqrt(r^2 - x^2) is returned.
cplx cut_root(cplx w, double r) {
    if (std::abs(w.imag()) < 1e-14 && std::abs(w.real()) <= r) {
        const double x = w.real();
        return cplx(0.0, std::sqrt(std::max(r * r - x * x, 0.0)));
    }
    return std::sqrt(w - r) * std::sqrt(w + r);
}

// Local density value A and slope B at x by cubic Lagrange interpolation on
// the four nearest samples. The subtraction scheme multiplies A's error by
// the O(1/dx) near-singular kernel sum, so linear interpolation (O(dx^2))
// would cost a whole order of accuracy; cubic keeps the scheme O(dx^2).
void local_density(const GridField& rho0, double x, double& A, double& B) {
    const Grid& g = rho0.grid;
    const int n = rho0.size();
    const double dx = g.dx();
    A = 0.0;
    B = 0.0;
    if (x < g.x_min || x > g.x_max) return;
    const double u = (x - g.center(0)) / dx;
    const int j0 = std::clamp(static_cast<int>(std::floor(u)) - 1, 0, n - 4);
    const double xi = u - j0;
    const double c0 = rho0.values[j0], c1 = rho0.values[j0 + 1];
    const double c2 = rho0.values[j0 + 2], c3 = rho0.values[j0 + 3];
    const double w0 = -(xi - 1.0) * (xi - 2.0) * (xi - 3.0) / 6.0;
    const double w1 = xi * (xi - 2.0) * (xi - 3.0) / 2.0;
    const double w2 = -xi * (xi - 1.0) * (xi - 3.0) / 2.0;
    const double w3 = xi * (xi - 1.0) * (xi - 2.0) / 6.0;
    A = w0 * c0 + w1 * c1 + w2 * c2 + w3 * c3;
    const double d0 = -((xi - 2.0) * (xi - 3.0) + (xi - 1.0) * (xi - 3.0) +
                        (xi - 1.0) * (xi - 2.0)) / 6.0;
    const double d1 = ((xi - 2.0) * (xi - 3.0) + xi * (xi - 3.0) + xi * (xi - 2.0)) / 2.0;
    const double d2 = -((xi - 1.0) * (xi - 3.0) + xi * (xi - 3.0) + xi * (xi - 1.0)) / 2.0;
    const double d3 = ((xi - 1.0) * (xi - 2.0) + xi * (xi - 1.0) + xi * (xi - 2.0)) / 6.0;
    B = (d0 * c0 + d1 * c1 + d2 * c2 + d3 * c3) / dx;
}

double rho0_sup(const InitialData& data) {
    switch (data.kind) {
        case DataKind::cauchy:
            return data.mass / (kPi * data.epsilon);
        case DataKind::semicircle:
            return 2.0 / (kPi * data.radius);
        case DataKind::grid_density: {
            double m = 0.0;
            for (double v : data.rho0.values) m = std::max(m, v);
            return m;
        }
    }
    throw config_error("unknown initial data kind");
}

// Cauchy integral of grid data, singularity-subtracted. For Im w > 0 the
// local value A is removed from the midpoint sum and reintegrated exactly
// via the log; at Im w = 0 the principal value is formed the same way with
// the trace's -i pi A supplied explicitly. Without the subtraction the sum
// loses all accuracy once Im w << dx.
cplx grid_f0(const GridField& rho0, double c, cplx w) {
    const Grid& g = rho0.grid;
    const int n = rho0.size();
    const double dx = g.dx();
    const double a = g.x_min, b = g.x_max;
    const double x = w.real();
    double A, B;
    local_density(rho0, x, A, B);

    if (w.imag() > 0.0) {
        cplx acc(0.0, 0.0);
        for (int j = 0; j < n; ++j) acc += (rho0.values[j] - A) / (w - g.center(j));
        cplx out = acc * dx;
        if (A != 0.0) out += A * std::log((w - a) / (w - b));
        return (c / kPi) * out;
    }

    // Real axis: PV with value and slope removed; each removed piece has an
    // elementary principal value on [a, b].
    double acc = 0.0;
    for (int j = 0; j < n; ++j) {
        const double d = x - g.center(j);
        if (std::abs(d) < 1e-9 * dx) continue;  // removed integrand vanishes here
        acc += (rho0.values[j] - A - B * (g.center(j) - x)) / d;
    }
    double pv = acc * dx;
    if (x > a && x < b)
        pv += A * std::log((x - a) / (b - x)) - B * (b - a);
    return cplx(c / kPi * pv, -c * A);
}

cplx grid_f0_derivative(const GridField& rho0, double c, cplx w) {
    const Grid& g = rho0.grid;
    const int n = rho0.size();
    const double dx = g.dx();
    const double a = g.x_min, b = g.x_max;
    const double x = w.real();
    double A, B;
    local_density(rho0, x, A, B);

    if (w.imag() > 0.0) {
        cplx acc(0.0, 0.0);
        for (int j = 0; j < n; ++j) {
            const cplx d = w - g.center(j);
            acc += (rho0.values[j] - A - B * (g.center(j) - x)) / (d * d);
        }
        cplx out = acc * dx;
        if (A != 0.0 || B != 0.0) {
            const cplx i2 = 1.0 / (w - b) - 1.0 / (w - a);
            const cplx j1 = -std::log((w - a) / (w - b)) + (w - x) * i2;
            out += A * i2 + B * j1;
        }
        return -(c / kPi) * out;
    }

    double acc = 0.0;
    for (int j = 0; j < n; ++j) {
        const double d = x - g.center(j);
        if (std::abs(d) < 1e-9 * dx) {
            // quadratic remainder: integrand tends to rho''/2
            if (j > 0 && j < n - 1)
                acc += (rho0.values[j + 1] - 2.0 * rho0.values[j] + rho0.values[j - 1]) /
                       (2.0 * dx * dx);
            continue;
        }
        acc += (rho0.values[j] - A - B * (g.center(j) - x)) / (d * d);
    }
    double re = acc * dx;
    if (x > a && x < b)
        re += A * (1.0 / (x - b) - 1.0 / (x - a)) - B * std::log((x - a) / (b - x));
    return cplx(-(c / kPi) * re, -c * B);
}

struct FlowCoeffs {
    double a;  // e^{-gamma t}
    double b;  // sinh(gamma t)/gamma, or t when gamma = 0
};

FlowCoeffs coeffs(const CharacteristicSolve& cs) {
    if (cs.gamma < 0.0) throw config_error("confinement strength must be nonnegative");
    if (cs.t < 0.0) throw config_error("time must be nonnegative");
    if (cs.gamma == 0.0) return {1.0, cs.t};
    return {std::exp(-cs.gamma * cs.t), std::sinh(cs.gamma * cs.t) / cs.gamma};
}

}  // namespace

InitialData InitialData::cauchy_data(double eps, double mass, double velocity_scale) {
    if (!(eps > 0.0)) throw config_error("cauchy scale must be positive");
    if (!(mass > 0.0)) throw config_error("mass must be positive");
    InitialData d;
    d.kind = DataKind::cauchy;
    d.epsilon = eps;
    d.mass = mass;
    d.velocity_scale = velocity_scale;
    return d;
}

InitialData InitialData::semicircle_data(double radius, double velocity_scale) {
    if (!(radius > 0.0)) throw config_error("semicircle radius must be positive");
    InitialData d;
    d.kind = DataKind::semicircle;
    d.radius = radius;
    d.mass = 1.0;
    d.velocity_scale = velocity_scale;
    return d;
}

InitialData InitialData::grid_data(GridField rho0, double velocity_scale) {
    if (rho0.size() < 8) throw config_error("grid density needs at least 8 samples");
    if (!rho0.all_finite()) throw numeric_error("grid density has non-finite samples");
    double mass = 0.0;
    for (double v : rho0.values) {
        if (v < 0.0) throw config_error("density samples must be nonnegative");
        mass += v;
    }
    InitialData d;
    d.kind = DataKind::grid_density;
    d.mass = mass * rho0.grid.dx();
    d.velocity_scale = velocity_scale;
    d.rho0 = std::move(rho0);
    return d;
}

cplx f0_eval(const InitialData& data, cplx w) {
    if (w.imag() < -1e-12) throw config_error("f0 is defined on the closed upper half plane");
    if (w.imag() < 0.0) w = cplx(w.real(), 0.0);
    const double c = data.velocity_scale;
    switch (data.kind) {
        case DataKind::cauchy:
            return (c * data.mass / kPi) / (w + cplx(0.0, data.epsilon));
        case DataKind::semicircle: {
            const double r = data.radius;
            return (c / kPi) * (2.0 / (r * r)) * (w - cut_root(w, r));
        }
        case DataKind::grid_density:
            return grid_f0(data.rho0, c, w);
    }
    throw config_error("unknown initial data kind");
}

cplx f0_derivative(const InitialData& data, cplx w) {
    if (w.imag() < -1e-12) throw config_error("f0 is defined on the closed upper half plane");
    if (w.imag() < 0.0) w = cplx(w.real(), 0.0);
    const double c = data.velocity_scale;
    switch (data.kind) {
        case DataKind::cauchy: {
            const cplx d = w + cplx(0.0, data.epsilon);
            return -(c * data.mass / kPi) / (d * d);
        }
        case DataKind::semicircle: {
            const double r = data.radius;
            return (c / kPi) * (2.0 / (r * r)) * (1.0 - w / cut_root(w, r));
        }
        case DataKind::grid_density:
            return grid_f0_derivative(data.rho0, c, w);
    }
    throw config_error("unknown initial data kind");
}

cplx flow_map(const InitialData& data, const CharacteristicSolve& cs, cplx w) {
    const FlowCoeffs fc = coeffs(cs);
    return fc.a * w + fc.b * f0_eval(data, w);
}

cplx flow_map_derivative(const InitialData& data, const CharacteristicSolve& cs, cplx w) {
    const FlowCoeffs fc = coeffs(cs);
    return fc.a + fc.b * f0_derivative(data, w);
}

cplx forward_characteristic(const InitialData& data, const CharacteristicSolve& cs,
                            UpperHalfPoint w) {
    if (!(w.im > 0.0)) throw config_error("forward map needs a strictly interior point");
    return flow_map(data, cs, cplx(w.re, w.im));
}

namespace {

// Two-stage bisection for Z(w) = z. Stage one solves the imaginary equation
// in q for fixed p (bracketed by 0 <= a q - Y <= b * sup|Im f0|); stage two
// scans p in the real equation, which is monotone when the flow map is
// invertible. Slow but unconditionally convergent; used when Newton stalls.
cplx bisect_backward(const InitialData& data, const CharacteristicSolve& cs, cplx z) {
    const FlowCoeffs fc = coeffs(cs);
    const double sup = data.velocity_scale * rho0_sup(data);
    const double X = z.real(), Y = z.imag();

    auto q_of_p = [&](double p) {
        double lo = Y / fc.a;
        double hi = (Y + fc.b * sup) / fc.a + 1e-30;
        for (int i = 0; i < 200; ++i) {
            const double q = 0.5 * (lo + hi);
            const double g = fc.a * q + fc.b * f0_eval(data, cplx(p, q)).imag() - Y;
            (g < 0.0 ? lo : hi) = q;
            if (hi - lo < 1e-15 * (1.0 + hi)) break;
        }
        return 0.5 * (lo + hi);
    };
    auto h = [&](double p) {
        return fc.a * p + fc.b * f0_eval(data, cplx(p, q_of_p(p))).real() - X;
    };

    double span = std::max(1.0, (std::abs(X) + fc.b * sup) / fc.a);
    double lo = X / fc.a - span, hi = X / fc.a + span;
    for (int i = 0; i < 60 && h(lo) > 0.0; ++i) lo -= span, span *= 2.0;
    for (int i = 0; i < 60 && h(hi) < 0.0; ++i) hi += span, span *= 2.0;
    if (h(lo) > 0.0 || h(hi) < 0.0)
        throw numeric_error("characteristic inversion: bisection bracket not found");
    for (int i = 0; i < 200; ++i) {
        const double p = 0.5 * (lo + hi);
        (h(p) < 0.0 ? lo : hi) = p;
        if (hi - lo < 1e-16 * (1.0 + std::abs(hi))) break;
    }
    const double p = 0.5 * (lo + hi);
    return cplx(p, q_of_p(p));
}

}  // namespace

cplx backward_characteristic(const InitialData& data, const CharacteristicSolve& cs, cplx z,
                             const cplx* warm_start) {
    if (z.imag() < 0.0) throw config_error("target must lie in the closed upper half plane");
    const FlowCoeffs fc = coeffs(cs);
    if (cs.t == 0.0) return z;

    // Candidate starts: warm start if supplied, else roots of the far-field
    // model a w^2 - z w + b m c/pi = 0 plus a generic interior point.
    std::vector<cplx> starts;
    if (warm_start) starts.push_back(*warm_start);
    const double mt = data.mass * data.velocity_scale / kPi;
    const cplx disc = std::sqrt(z * z - 4.0 * fc.a * fc.b * mt);
    for (cplx cand : {(z + disc) / (2.0 * fc.a), (z - disc) / (2.0 * fc.a)})
        if (cand.imag() >= 0.0) starts.push_back(cand);
    starts.push_back(cplx(z.real(), std::max(1.0, std::sqrt(fc.b))));

    cplx w = starts.front();
    double best = std::numeric_limits<double>::infinity();
    for (cplx s : starts) {
        const double r = std::abs(flow_map(data, cs, s) - z);
        if (r < best) best = r, w = s;
    }

    const double tol = cs.newton_tol * (1.0 + std::abs(z));
    double res = best;
    for (int it = 0; it < cs.newton_max_iter && res > tol; ++it) {
        const cplx dz = flow_map_derivative(data, cs, w);
        if (std::norm(dz) < 1e-28) break;  // Jacobian degenerate: fall back
        const cplx step = (flow_map(data, cs, w) - z) / dz;
        double lambda = 1.0;
        bool improved = false;
        for (int k = 0; k < 10; ++k, lambda *= 0.5) {
            cplx trial = w - lambda * step;
            if (trial.imag() < 0.0) trial = cplx(trial.real(), 0.0);
            const double r = std::abs(flow_map(data, cs, trial) - z);
            if (r < res) {
                w = trial;
                res = r;
                improved = true;
                break;
            }
        }
        if (!improved) break;
    }
    if (res <= tol) return w;

    const cplx wb = bisect_backward(data, cs, z);
    if (std::abs(flow_map(data, cs, wb) - z) > std::sqrt(tol) * (1.0 + std::abs(z)))
        throw numeric_error("characteristic inversion did not converge");
    return wb;
}

TraceResult trace_density(const InitialData& data, const CharacteristicSolve& cs,
                          const Grid& out_grid) {
    const double c = data.velocity_scale;
    const double growth = std::exp(cs.gamma * cs.t);
    const int n = out_grid.n_cells;
    TraceResult out;
    out.rho = GridField(out_grid, std::vector<double>(n, 0.0), FieldKind::density);
    out.u = GridField(out_grid, std::vector<double>(n, 0.0), FieldKind::velocity);
    out.root_im.resize(n);

    cplx w;
    bool have_prev = false;
    for (int j = 0; j < n; ++j) {
        const cplx z(out_grid.center(j), 0.0);
        w = backward_characteristic(data, cs, z, have_prev ? &w : nullptr);
        have_prev = true;
        const cplx f = f0_eval(data, w) * growth;
        out.rho.values[j] = std::max(0.0, -f.imag() / c);
        out.u.values[j] = f.real();
        out.root_im[j] = w.imag();
    }
    return out;
}

BlowupEstimate blowup_estimate(const InitialData& data, const std::vector<double>& probes) {
    if (probes.empty()) throw config_error("blowup estimate needs at least one probe");
    BlowupEstimate est;
    est.slope0 = std::numeric_limits<double>::infinity();
    for (double x : probes) {
        const double s = f0_derivative(data, cplx(x, 0.0)).real();
        if (s < est.slope0) {
            est.slope0 = s;
            est.x0 = x;
        }
    }
    if (est.slope0 >= 0.0)
        throw numeric_error("initial profile never steepens: min slope is nonnegative");
    est.t_star = -1.0 / est.slope0;
    return est;
}

double trace_velocity_slope(const InitialData& data, const CharacteristicSolve& cs, double x) {
    const cplx w = backward_characteristic(data, cs, cplx(x, 0.0));
    const cplx dz = flow_map_derivative(data, cs, w);
    if (std::norm(dz) < 1e-28) throw numeric_error("velocity slope: flow map degenerate");
    return (std::exp(cs.gamma * cs.t) * f0_derivative(data, w) / dz).real();
}

double steepening_time(const InitialData& data, double gamma, double threshold,
                       const std::vector<double>& probes, double t_max) {
    if (!(threshold > 0.0)) throw config_error("steepening threshold must be positive");
    if (!(t_max > 0.0)) throw config_error("steepening horizon must be positive");
    auto min_slope = [&](double t) {
        CharacteristicSolve cs{gamma, t, 1e-12, 60};
        double m = std::numeric_limits<double>::infinity();
        for (double x : probes) m = std::min(m, trace_velocity_slope(data, cs, x));
        return m;
    };
    // The monitor diverges like -1/(t*-t) and turns benign again past the
    // fold, so the crossing window is narrow: march toward the pole taking
    // half the estimated time-to-blow-up per step (exact for gamma = 0) to
    // bracket the first crossing, then bisect.
    auto crossed = [&](double t) {
        try {
            return min_slope(t) <= -threshold;
        } catch (const numeric_error&) {
            return true;  // backward solve only degrades at/past the fold
        }
    };
    double s = min_slope(0.0);
    if (s <= -threshold) return 0.0;
    double lo = 0.0, hi = -1.0;
    for (int i = 0; i < 400 && hi < 0.0; ++i) {
        double step = (s < 0.0) ? 0.5 / (-s) : t_max / 64.0;
        step = std::min(step, t_max / 16.0);
        const double tn = std::min(lo + step, t_max);
        if (crossed(tn)) {
            hi = tn;
            break;
        }
        if (tn >= t_max) return t_max;
        lo = tn;
        s = min_slope(tn);
    }
    if (hi < 0.0) return t_max;
    for (int i = 0; i < 80; ++i) {
        const double mid = 0.5 * (lo + hi);
        (crossed(mid) ? hi : lo) = mid;
        if (hi - lo < 1e-13 * t_max) break;
    }
    return 0.5 * (lo + hi);
}

}  // namespace lab
