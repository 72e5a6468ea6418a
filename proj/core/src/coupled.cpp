#include "lab/coupled.hpp"

#include <algorithm>
#include <cmath>

#include "lab/util.hpp"

namespace lab {

namespace {

void validate(const CoupledState& s, const CoupledOptions& opt) {
    if (!(opt.alpha > 0.0)) throw config_error("coupling alpha must be positive");
    if (!(opt.cfl > 0.0 && opt.cfl < 0.5))
        throw config_error("cfl must lie in (0, 0.5): the entropy argument needs <= 1/2");
    if (!(opt.t_end > 0.0)) throw config_error("t_end must be positive");
    if (!(s.rho.grid == s.u.grid)) throw config_error("rho and u live on different grids");
    if (!s.rho.all_finite() || !s.u.all_finite())
        throw numeric_error("initial state has non-finite entries");
    for (double r : s.rho.values)
        if (r < 0.0) throw config_error("initial density must be nonnegative");
}

inline int wrap(int i, int n) { return (i % n + n) % n; }

// cell index of the left neighbor of interface i (i = 0..n), honoring bc
inline double at(const std::vector<double>& f, int i, Boundary bc) {
    const int n = static_cast<int>(f.size());
    if (bc == Boundary::periodic) return f[static_cast<size_t>(wrap(i, n))];
    return f[static_cast<size_t>(std::clamp(i, 0, n - 1))];
}

void interface_states(const std::vector<double>& f, Boundary bc, std::vector<double>& w) {
    const int n = static_cast<int>(f.size());
    w.resize(static_cast<size_t>(n) + 1);
    for (int i = 0; i <= n; ++i)
        w[static_cast<size_t>(i)] = riemann_interface_state(at(f, i - 1, bc), at(f, i, bc));
}

}  // namespace

double riemann_interface_state(double fl, double fr) {
    if (fl >= fr) {
        // shock at speed (fl + fr)/2
        return (fl + fr > 0.0) ? fl : fr;
    }
    if (fl > 0.0) return fl;
    if (fr < 0.0) return fr;
    return 0.0;  // sonic point inside the fan
}

double godunov_flux(double fl, double fr) {
    const double w = riemann_interface_state(fl, fr);
    return 0.5 * w * w;
}

std::pair<std::vector<double>, std::vector<double>> to_invariants(const CoupledState& s,
                                                                  double alpha) {
    const double sa = std::sqrt(alpha);
    const size_t n = s.rho.values.size();
    std::vector<double> fp(n), fm(n);
    for (size_t j = 0; j < n; ++j) {
        fp[j] = s.u.values[j] + sa * s.rho.values[j];
        fm[j] = s.u.values[j] - sa * s.rho.values[j];
    }
    return {std::move(fp), std::move(fm)};
}

CoupledState from_invariants(const Grid& g, const std::vector<double>& fp,
                             const std::vector<double>& fm, double alpha) {
    const double sa = std::sqrt(alpha);
    const size_t n = fp.size();
    CoupledState s;
    s.rho = GridField(g, std::vector<double>(n), FieldKind::density);
    s.u = GridField(g, std::vector<double>(n), FieldKind::velocity);
    for (size_t j = 0; j < n; ++j) {
        s.rho.values[j] = std::max(0.0, (fp[j] - fm[j]) / (2.0 * sa));
        s.u.values[j] = 0.5 * (fp[j] + fm[j]);
    }
    return s;
}

CoupledResult evolve_coupled(const CoupledState& init, const CoupledOptions& opt,
                             const StepObserver& observe) {
    validate(init, opt);
    const Grid g = init.rho.grid;
    const double dx = g.dx();
    auto [fp, fm] = to_invariants(init, opt.alpha);
    const size_t n = fp.size();

    std::vector<double> wp, wm;
    double t = 0.0;
    long steps = 0;
    while (t < opt.t_end) {
        if (++steps > opt.max_steps) throw numeric_error("step budget exhausted");
        double speed = 1e-300;
        for (size_t j = 0; j < n; ++j)
            speed = std::max({speed, std::abs(fp[j]), std::abs(fm[j])});
        const double dt = std::min(opt.cfl * dx / speed, opt.t_end - t);

        interface_states(fp, opt.bc, wp);
        interface_states(fm, opt.bc, wm);
        const double lam = dt / dx;
        for (size_t j = 0; j < n; ++j) {
            fp[j] -= lam * 0.5 * (wp[j + 1] * wp[j + 1] - wp[j] * wp[j]);
            fm[j] -= lam * 0.5 * (wm[j + 1] * wm[j + 1] - wm[j] * wm[j]);
        }
        t += dt;
        if (observe) {
            StepView v;
            v.t_new = t;
            v.dt = dt;
            v.iface_plus = &wp;
            v.iface_minus = &wm;
            v.f_plus = &fp;
            v.f_minus = &fm;
            observe(v);
        }
    }

    CoupledResult out;
    out.state = from_invariants(g, fp, fm, opt.alpha);
    out.steps = steps;
    out.t = t;
    return out;
}

CoupledResult evolve_gas(const CoupledState& init, const CoupledOptions& opt) {
    validate(init, opt);
    const Grid g = init.rho.grid;
    const double dx = g.dx();
    const double sa = std::sqrt(opt.alpha);
    const size_t n = init.rho.values.size();

    std::vector<double> rho = init.rho.values, m(n);
    for (size_t j = 0; j < n; ++j) m[j] = rho[j] * init.u.values[j];

    auto vel = [&](double r, double mm) { return r > 1e-300 ? mm / r : 0.0; };
    auto flux = [&](double r, double mm, double& F0, double& F1) {
        const double u = vel(r, mm);
        F0 = mm;
        F1 = mm * u + opt.alpha * r * r * r / 3.0;
    };

    std::vector<double> nrho(n), nm(n);
    double t = 0.0;
    long steps = 0;
    while (t < opt.t_end) {
        if (++steps > opt.max_steps) throw numeric_error("step budget exhausted");
        double speed = 1e-300;
        for (size_t j = 0; j < n; ++j)
            speed = std::max(speed, std::abs(vel(rho[j], m[j])) + sa * rho[j]);
        const double dt = std::min(opt.cfl * dx / speed, opt.t_end - t);
        const double lam = dt / dx;

        auto cell = [&](int i, double& r, double& mm) {
            const int nn = static_cast<int>(n);
            const int k = opt.bc == Boundary::periodic ? wrap(i, nn) : std::clamp(i, 0, nn - 1);
            r = rho[static_cast<size_t>(k)];
            mm = m[static_cast<size_t>(k)];
        };
        // HLL with Davis speed bounds u ± sqrt(alpha) rho
        auto hll = [&](int i, double& F0, double& F1) {
            double rl, ml, rr, mr;
            cell(i - 1, rl, ml);
            cell(i, rr, mr);
            const double ul = vel(rl, ml), ur = vel(rr, mr);
            const double sl = std::min(ul - sa * rl, ur - sa * rr);
            const double sr = std::max(ul + sa * rl, ur + sa * rr);
            double Fl0, Fl1, Fr0, Fr1;
            flux(rl, ml, Fl0, Fl1);
            flux(rr, mr, Fr0, Fr1);
            if (sl >= 0.0) {
                F0 = Fl0;
                F1 = Fl1;
            } else if (sr <= 0.0) {
                F0 = Fr0;
                F1 = Fr1;
            } else {
                const double inv = 1.0 / (sr - sl);
                F0 = (sr * Fl0 - sl * Fr0 + sl * sr * (rr - rl)) * inv;
                F1 = (sr * Fl1 - sl * Fr1 + sl * sr * (mr - ml)) * inv;
            }
        };

        double Fl0, Fl1;
        hll(0, Fl0, Fl1);
        for (size_t j = 0; j < n; ++j) {
            double Fr0, Fr1;
            hll(static_cast<int>(j) + 1, Fr0, Fr1);
            nrho[j] = rho[j] - lam * (Fr0 - Fl0);
            nm[j] = m[j] - lam * (Fr1 - Fl1);
            Fl0 = Fr0;
            Fl1 = Fr1;
        }
        rho.swap(nrho);
        m.swap(nm);
        t += dt;
    }

    CoupledResult out;
    out.state.rho = GridField(g, rho, FieldKind::density);
    std::vector<double> u(n);
    for (size_t j = 0; j < n; ++j) u[j] = vel(rho[j], m[j]);
    out.state.u = GridField(g, std::move(u), FieldKind::velocity);
    out.steps = steps;
    out.t = t;
    return out;
}

EntropyPair::EntropyPair(Kind k, double param, double wp, double wm, double alpha)
    : kind_(k), param_(param), wp_(wp), wm_(wm), alpha_(alpha) {
    if (!(alpha > 0.0)) throw config_error("coupling alpha must be positive");
}

EntropyPair EntropyPair::square(double k1, double k2, double alpha) {
    if (k1 < 0.0 || k2 < 0.0) throw config_error("combination weights must be nonnegative");
    return EntropyPair(Kind::square, 0.0, k1, k2, alpha);
}

EntropyPair EntropyPair::exponential(double k, double k1, double k2, double alpha) {
    if (k1 < 0.0 || k2 < 0.0) throw config_error("combination weights must be nonnegative");
    if (k == 0.0) throw config_error("exponential entropy needs k != 0");
    return EntropyPair(Kind::exponential, k, k1, k2, alpha);
}

EntropyPair EntropyPair::abs_shifted(double c, double k1, double k2, double alpha) {
    if (k1 < 0.0 || k2 < 0.0) throw config_error("combination weights must be nonnegative");
    return EntropyPair(Kind::abs_shifted, c, k1, k2, alpha);
}

EntropyPair EntropyPair::signed_exponential(double k, double alpha) {
    if (k == 0.0) throw config_error("signed exponential entropy needs k != 0");
    const double w = 1.0 / (2.0 * std::sqrt(alpha) * k);
    return EntropyPair(Kind::exponential, k, w, -w, alpha);
}

double EntropyPair::scalar_psi(double v) const {
    switch (kind_) {
        case Kind::square:
            return 0.5 * v * v;
        case Kind::exponential:
            return std::exp(param_ * v);
        case Kind::abs_shifted:
            return std::abs(v - param_);
    }
    return 0.0;
}

double EntropyPair::scalar_phi(double v) const {
    switch (kind_) {
        case Kind::square:
            return v * v * v / 3.0;
        case Kind::exponential: {
            const double k = param_;
            return (v - 1.0 / k) * std::exp(k * v);
        }
        case Kind::abs_shifted: {
            const double c = param_;
            const double s = v >= c ? 1.0 : -1.0;
            return 0.5 * s * (v * v - c * c);
        }
    }
    return 0.0;
}

double EntropyPair::eta(double rho, double u) const {
    const double sa = std::sqrt(alpha_);
    return wp_ * scalar_psi(u + sa * rho) + wm_ * scalar_psi(u - sa * rho);
}

double EntropyPair::entropy_flux(double rho, double u) const {
    const double sa = std::sqrt(alpha_);
    return wp_ * scalar_phi(u + sa * rho) + wm_ * scalar_phi(u - sa * rho);
}

GridField entropy_residual(const CoupledState& init, const CoupledOptions& opt,
                           const EntropyPair& pair) {
    validate(init, opt);
    const Grid g = init.rho.grid;
    const size_t n = init.rho.values.size();
    const double dx = g.dx();

    auto [fp0, fm0] = to_invariants(init, opt.alpha);
    std::vector<double> eta0(n);
    for (size_t j = 0; j < n; ++j)
        eta0[j] = pair.weight_plus() * pair.scalar_psi(fp0[j]) +
                  pair.weight_minus() * pair.scalar_psi(fm0[j]);

    std::vector<double> flux_sum(n, 0.0);
    std::vector<double> eta_end = eta0;
    const StepObserver observe = [&](const StepView& v) {
        const std::vector<double>& wp = *v.iface_plus;
        const std::vector<double>& wm = *v.iface_minus;
        for (size_t j = 0; j < n; ++j) {
            const double ql = pair.weight_plus() * pair.scalar_phi(wp[j]) +
                              pair.weight_minus() * pair.scalar_phi(wm[j]);
            const double qr = pair.weight_plus() * pair.scalar_phi(wp[j + 1]) +
                              pair.weight_minus() * pair.scalar_phi(wm[j + 1]);
            flux_sum[j] += v.dt * (qr - ql);
        }
        for (size_t j = 0; j < n; ++j)
            eta_end[j] = pair.weight_plus() * pair.scalar_psi((*v.f_plus)[j]) +
                         pair.weight_minus() * pair.scalar_psi((*v.f_minus)[j]);
    };

    evolve_coupled(init, opt, observe);

    std::vector<double> res(n);
    for (size_t j = 0; j < n; ++j)
        res[j] = (eta_end[j] - eta0[j] + flux_sum[j] / dx) / opt.t_end;
    return GridField(g, std::move(res), FieldKind::generic);
}

}  // namespace lab
