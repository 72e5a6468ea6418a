#include "lab/lagrangian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lab/util.hpp"

namespace lab {

namespace {

constexpr double kPi = std::numbers::pi;

void require_increasing(const std::vector<double>& x, const char* who) {
    for (size_t j = 1; j < x.size(); ++j)
        if (!(x[j] > x[j - 1]))
            throw numeric_error(std::string(who) + ": positions must stay strictly increasing");
}

// X_xi^{-3} at the M (periodic) or M-1 (free) faces; free ends replicate the
// nearest interior face, which makes the end fluxes cancel (zero-gradient).
std::vector<double> face_cubed(const std::vector<double>& X, bool periodic, double period,
                               double dxi) {
    const size_t m = X.size();
    std::vector<double> f(periodic ? m : m - 1);
    for (size_t j = 0; j + 1 < m; ++j) {
        const double xi = (X[j + 1] - X[j]) / dxi;
        if (!(xi > 0.0)) throw numeric_error("flow map folded: X_xi <= 0 at a face");
        f[j] = 1.0 / (xi * xi * xi);
    }
    if (periodic) {
        const double xi = (X[0] + period - X[m - 1]) / dxi;
        if (!(xi > 0.0)) throw numeric_error("flow map folded: X_xi <= 0 at the wrap face");
        f[m - 1] = 1.0 / (xi * xi * xi);
    }
    return f;
}

std::vector<double> flow_accel(const std::vector<double>& X, double alpha, bool periodic,
                               double period, double dxi) {
    const size_t m = X.size();
    const std::vector<double> fc = face_cubed(X, periodic, period, dxi);
    std::vector<double> a(m);
    const double c = -alpha / (3.0 * dxi);
    for (size_t j = 0; j < m; ++j) {
        double left, right;
        if (periodic) {
            left = fc[(j + m - 1) % m];
            right = fc[j];
        } else {
            left = fc[j == 0 ? 0 : j - 1];
            right = fc[j == m - 1 ? m - 2 : j];
        }
        a[j] = c * (right - left);
    }
    return a;
}

}  // namespace

std::vector<double> chain_force(const std::vector<double>& x, ChainModel model, double alpha) {
    const size_t n = x.size();
    if (n < 2) throw config_error("chain needs at least two particles");
    const double nn = static_cast<double>(n);
    std::vector<double> f(n, 0.0);
    if (model == ChainModel::nearest_neighbor) {
        const double c = alpha / (3.0 * nn * nn);
        for (size_t j = 0; j < n; ++j) {
            double acc = 0.0;
            if (j + 1 < n) {
                const double d = x[j + 1] - x[j];
                acc += 1.0 / (d * d * d);
            }
            if (j > 0) {
                const double d = x[j - 1] - x[j];
                acc += 1.0 / (d * d * d);
            }
            f[j] = c * acc;
        }
    } else {
        const double c = 4.0 * alpha / (nn * nn * kPi * kPi);
        for (size_t j = 0; j < n; ++j) {
            double acc = 0.0;
            for (size_t k = 0; k < n; ++k) {
                if (k == j) continue;
                const double d = x[j] - x[k];
                acc += 1.0 / (d * d * d);
            }
            f[j] = c * acc;
        }
    }
    return f;
}

double chain_hamiltonian(const ChainState& s, ChainModel model, double alpha) {
    const size_t n = s.x.size();
    const double nn = static_cast<double>(n);
    double kin = 0.0;
    for (double v : s.v) kin += v * v;
    kin /= 2.0 * nn;  // (N/2) sum (v/N)^2

    double pot = 0.0;
    if (model == ChainModel::nearest_neighbor) {
        for (size_t j = 0; j + 1 < n; ++j) {
            const double d = s.x[j + 1] - s.x[j];
            pot += 2.0 / (d * d);  // each adjacent pair appears from both sides
        }
        pot *= -alpha / (12.0 * nn * nn * nn);
    } else {
        for (size_t j = 0; j < n; ++j)
            for (size_t k = j + 1; k < n; ++k) {
                const double d = s.x[j] - s.x[k];
                pot += 2.0 / (d * d);
            }
        pot *= alpha / (nn * nn * nn * kPi * kPi);
    }
    return kin + pot;
}

double chain_momentum(const ChainState& s) {
    double p = 0.0;
    for (double v : s.v) p += v;
    return p / static_cast<double>(s.x.size());
}

ChainRun run_chain(ChainState init, const ChainOptions& opt) {
    if (init.x.size() != init.v.size()) throw config_error("x and v differ in size");
    require_increasing(init.x, "chain");
    if (!(opt.dt > 0.0) || opt.steps < 1) throw config_error("bad chain time grid");
    if (opt.record_every < 1) throw config_error("record_every must be >= 1");

    ChainRun run;
    const size_t n = init.x.size();
    std::vector<double> acc = chain_force(init.x, opt.model, opt.alpha);

    auto record = [&](long step) {
        run.times.push_back(step * opt.dt);
        run.energy.push_back(chain_hamiltonian(init, opt.model, opt.alpha));
        run.momentum.push_back(chain_momentum(init));
    };
    record(0);

    for (long step = 1; step <= opt.steps; ++step) {
        for (size_t j = 0; j < n; ++j)
            init.x[j] += opt.dt * (init.v[j] + 0.5 * opt.dt * acc[j]);
        require_increasing(init.x, "chain");
        const std::vector<double> acc_new = chain_force(init.x, opt.model, opt.alpha);
        for (size_t j = 0; j < n; ++j) init.v[j] += 0.5 * opt.dt * (acc[j] + acc_new[j]);
        acc = acc_new;
        if (step % opt.record_every == 0 || step == opt.steps) record(step);
    }
    run.state = std::move(init);
    return run;
}

double continuum_force_target(ChainModel model, double alpha, double x_xi, double x_xixi) {
    if (!(x_xi > 0.0)) throw config_error("continuum target needs X_xi > 0");
    const double base = alpha * x_xixi / (x_xi * x_xi * x_xi * x_xi);
    return model == ChainModel::nearest_neighbor ? -base : 2.0 * base;
}

double continuum_limit_residual(ChainModel model, double alpha, int n,
                                const std::function<double(double)>& X,
                                const std::function<double(double)>& X_xi,
                                const std::function<double(double)>& X_xixi) {
    if (n < 8) throw config_error("need at least 8 particles for the limit probe");
    std::vector<double> x(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) x[static_cast<size_t>(j)] = X((j + 0.5) / n);
    require_increasing(x, "limit probe");
    const std::vector<double> f = chain_force(x, model, alpha);
    double worst = 0.0;
    for (int j = 0; j < n; ++j) {
        const double xi = (j + 0.5) / n;
        if (xi < 0.25 || xi > 0.75) continue;
        const double target = continuum_force_target(model, alpha, X_xi(xi), X_xixi(xi));
        worst = std::max(worst, std::abs(f[static_cast<size_t>(j)] - target));
    }
    return worst;
}

LagrangianState flow_map_from_density(const GridField& rho0, const GridField& u0, int M) {
    if (!(rho0.grid == u0.grid)) throw config_error("rho0 and u0 live on different grids");
    if (M < 4) throw config_error("need at least 4 material nodes");
    const Grid& g = rho0.grid;
    const int n = rho0.size();
    const double dx = g.dx();

    // cumulative mass at cell right edges
    std::vector<double> F(static_cast<size_t>(n) + 1, 0.0);
    for (int k = 0; k < n; ++k) {
        const double r = rho0.values[static_cast<size_t>(k)];
        if (r < 0.0) throw config_error("density must be nonnegative");
        F[static_cast<size_t>(k) + 1] = F[static_cast<size_t>(k)] + r * dx;
    }
    const double mass = F.back();
    if (!(mass > 0.0)) throw config_error("density carries no mass");

    LagrangianState s;
    s.X.resize(static_cast<size_t>(M));
    s.V.resize(static_cast<size_t>(M));
    int k = 0;
    for (int j = 0; j < M; ++j) {
        const double target = mass * (j + 0.5) / M;
        while (k + 1 < n && F[static_cast<size_t>(k) + 1] < target) ++k;
        const double r = rho0.values[static_cast<size_t>(k)];
        const double left = g.x_min + k * dx;
        const double x =
            r > 1e-300 ? left + (target - F[static_cast<size_t>(k)]) / r : left + dx;
        s.X[static_cast<size_t>(j)] = x;

        // sample u0 at x (linear between cell centers, clamped)
        const double t = std::clamp((x - g.center(0)) / dx, 0.0, static_cast<double>(n - 1));
        const int i0 = std::min(static_cast<int>(t), n - 2);
        const double w = t - i0;
        s.V[static_cast<size_t>(j)] = (1.0 - w) * u0.values[static_cast<size_t>(i0)] +
                                      w * u0.values[static_cast<size_t>(i0) + 1];
    }
    require_increasing(s.X, "flow map");
    return s;
}

LagrangianRun evolve_lagrangian(LagrangianState init, const LagrangianOptions& opt) {
    if (init.X.size() != init.V.size()) throw config_error("X and V differ in size");
    require_increasing(init.X, "flow map");
    if (!(opt.dt > 0.0) || !(opt.t_end > 0.0)) throw config_error("bad time grid");
    if (opt.periodic && !(opt.period > 0.0)) throw config_error("period must be positive");

    const size_t m = init.X.size();
    const double dxi = 1.0 / static_cast<double>(m);
    const long steps = std::lround(std::ceil(opt.t_end / opt.dt - 1e-12));
    const double dt = opt.t_end / static_cast<double>(steps);

    LagrangianRun run;
    std::vector<double> acc = flow_accel(init.X, opt.alpha, opt.periodic, opt.period, dxi);
    run.times.push_back(0.0);
    run.energy.push_back(lagrangian_energy(init, opt.alpha, opt.periodic, opt.period));
    if (opt.store_frames) run.frames.push_back(init);

    for (long s = 1; s <= steps; ++s) {
        for (size_t j = 0; j < m; ++j) init.X[j] += dt * (init.V[j] + 0.5 * dt * acc[j]);
        const std::vector<double> acc_new =
            flow_accel(init.X, opt.alpha, opt.periodic, opt.period, dxi);
        for (size_t j = 0; j < m; ++j) init.V[j] += 0.5 * dt * (acc[j] + acc_new[j]);
        acc = acc_new;
        run.times.push_back(s * dt);
        run.energy.push_back(lagrangian_energy(init, opt.alpha, opt.periodic, opt.period));
        if (opt.store_frames) run.frames.push_back(init);
    }
    run.state = std::move(init);
    return run;
}

GridField density_from_flow(const LagrangianState& s, double mass, const Grid& out,
                            bool periodic, double period) {
    const size_t m = s.X.size();
    if (m < 2) throw config_error("need at least two material nodes");
    if (!(mass > 0.0)) throw config_error("mass must be positive");
    const double span = out.x_max - out.x_min;
    if (periodic && std::abs(span - period) > 1e-9 * period)
        throw config_error("output grid must span exactly one period");

    std::vector<double> rho(static_cast<size_t>(out.n_cells), 0.0);
    const double dx = out.dx();
    const double chunk = mass / static_cast<double>(m);  // mass per material interval

    // add `w * length` of mass uniformly over [a,b] clipped to the domain
    auto deposit = [&](double a, double b, double w) {
        if (!(b > a)) return;
        const int j0 = std::max(0, static_cast<int>(std::floor((a - out.x_min) / dx)));
        const int j1 = std::min(out.n_cells - 1, static_cast<int>(std::floor((b - out.x_min) / dx)));
        for (int j = j0; j <= j1; ++j) {
            const double lo = std::max(a, out.x_min + j * dx);
            const double hi = std::min(b, out.x_min + (j + 1) * dx);
            if (hi > lo) rho[static_cast<size_t>(j)] += w * (hi - lo);
        }
    };

    const size_t n_int = periodic ? m : m - 1;
    for (size_t i = 0; i < n_int; ++i) {
        double a = s.X[i];
        double b = (i + 1 < m) ? s.X[i + 1] : s.X[0] + period;
        const double len = b - a;
        if (!(len > 0.0)) throw numeric_error("flow map folded: interval of length <= 0");
        const double dens = chunk / len;  // uniform density carried by the interval
        if (periodic) {
            // fold into [x_min, x_min + period)
            const double shift = std::floor((a - out.x_min) / period) * period;
            a -= shift;
            b -= shift;
            if (b <= out.x_min + period) {
                deposit(a, b, dens);
            } else {
                deposit(a, out.x_min + period, dens);
                deposit(out.x_min, b - period, dens);
            }
        } else {
            deposit(std::max(a, out.x_min), std::min(b, out.x_max), dens);
        }
    }
    for (double& v : rho) v /= dx;
    return GridField(out, std::move(rho), FieldKind::density);
}

double lagrangian_energy(const LagrangianState& s, double alpha, bool periodic, double period) {
    const size_t m = s.X.size();
    const double dxi = 1.0 / static_cast<double>(m);
    double kin = 0.0;
    for (double v : s.V) kin += 0.5 * v * v;
    double pot = 0.0;
    const size_t n_faces = periodic ? m : m - 1;
    for (size_t j = 0; j < n_faces; ++j) {
        const double right = (j + 1 < m) ? s.X[j + 1] : s.X[0] + period;
        const double xi = (right - s.X[j]) / dxi;
        pot += alpha / (6.0 * xi * xi);
    }
    return (kin + pot) * dxi;
}

double discrete_action(const std::vector<LagrangianState>& frames, double dt, double alpha,
                       bool periodic, double period) {
    if (frames.size() < 2) throw config_error("action needs at least two frames");
    if (!(dt > 0.0)) throw config_error("dt must be positive");
    const size_t m = frames.front().X.size();
    const double dxi = 1.0 / static_cast<double>(m);

    auto potential = [&](const LagrangianState& f) {
        double pot = 0.0;
        const size_t n_faces = periodic ? m : m - 1;
        for (size_t j = 0; j < n_faces; ++j) {
            const double right = (j + 1 < m) ? f.X[j + 1] : f.X[0] + period;
            const double xi = (right - f.X[j]) / dxi;
            pot += alpha / (6.0 * xi * xi);
        }
        return pot * dxi;
    };

    double S = 0.0;
    for (size_t n = 0; n + 1 < frames.size(); ++n) {
        double kin = 0.0;
        for (size_t j = 0; j < m; ++j) {
            const double d = frames[n + 1].X[j] - frames[n].X[j];
            kin += 0.5 * d * d / (dt * dt);
        }
        S += dt * (kin * dxi - 0.5 * (potential(frames[n]) + potential(frames[n + 1])));
    }
    return S;
}

}  // namespace lab
