#include "lab/dyson.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lab {

namespace {

void require_sorted(const std::vector<double>& lambda, const char* who) {
    for (size_t j = 1; j < lambda.size(); ++j)
        if (!(lambda[j] > lambda[j - 1]))
            throw config_error(std::string(who) + ": particles must be strictly increasing");
}

double span(const std::vector<double>& lambda) {
    return std::max(lambda.back() - lambda.front(), 1.0);
}

double min_gap(const std::vector<double>& lambda) {
    double g = std::numeric_limits<double>::infinity();
    for (size_t j = 1; j < lambda.size(); ++j) g = std::min(g, lambda[j] - lambda[j - 1]);
    return g;
}

}  // namespace

std::vector<double> dyson_drift(const std::vector<double>& lambda, double gamma) {
    const size_t n = lambda.size();
    if (n < 2) throw config_error("drift needs at least two particles");
    std::vector<double> d(n, 0.0);
    for (size_t j = 0; j < n; ++j) {
        double acc = 0.0;
        for (size_t k = 0; k < n; ++k) {
            if (k == j) continue;
            acc += 1.0 / (lambda[j] - lambda[k]);
        }
        d[j] = acc / static_cast<double>(n) - gamma * lambda[j];
    }
    return d;
}

double log_potential(const std::vector<double>& lambda, double gamma) {
    const size_t n = lambda.size();
    double quad = 0.0, logs = 0.0;
    for (size_t j = 0; j < n; ++j) {
        quad += lambda[j] * lambda[j];
        for (size_t k = j + 1; k < n; ++k) logs += std::log(std::abs(lambda[j] - lambda[k]));
    }
    return 0.5 * gamma * quad - logs / static_cast<double>(n);
}

double second_moment(const std::vector<double>& lambda) {
    double s = 0.0;
    for (double x : lambda) s += x * x;
    return s / static_cast<double>(lambda.size());
}

DysonTrajectory evolve_deterministic(std::vector<double> lambda0, const DysonOptions& opt,
                                     int n_snapshots) {
    require_sorted(lambda0, "deterministic flow");
    if (!(opt.t_end > 0.0)) throw config_error("t_end must be positive");
    if (n_snapshots < 1) throw config_error("need at least one snapshot");

    DysonTrajectory traj;
    const size_t n = lambda0.size();
    double t = 0.0, dt = opt.dt_init;
    int next_snap = 1;

    auto record = [&](const std::vector<double>& s) {
        traj.times.push_back(t);
        traj.potential.push_back(log_potential(s, opt.gamma));
        traj.m2.push_back(second_moment(s));
    };
    record(lambda0);

    std::vector<double> trial(n);
    int halvings_in_a_row = 0;
    while (t < opt.t_end) {
        const double target = opt.t_end * next_snap / n_snapshots;
        dt = std::min({dt, opt.dt_max, target - t});

        const std::vector<double> k1 = dyson_drift(lambda0, opt.gamma);
        for (size_t j = 0; j < n; ++j) trial[j] = lambda0[j] + dt * k1[j];
        bool ok = std::is_sorted(trial.begin(), trial.end());
        double err = 0.0;
        if (ok) {
            const std::vector<double> k2 = dyson_drift(trial, opt.gamma);
            for (size_t j = 0; j < n; ++j) {
                err = std::max(err, std::abs(k2[j] - k1[j]) * dt * 0.5);
                trial[j] = lambda0[j] + 0.5 * dt * (k1[j] + k2[j]);
            }
            ok = err <= opt.tol && std::is_sorted(trial.begin(), trial.end());
        }
        if (!ok) {
            dt *= 0.5;
            if (++halvings_in_a_row > 60)
                throw numeric_error("adaptive step underflow: particles collide");
            continue;
        }
        halvings_in_a_row = 0;
        lambda0.swap(trial);
        t += dt;
        if (min_gap(lambda0) < opt.gap_floor_rel * span(lambda0))
            throw numeric_error("particle gap below collision floor");
        record(lambda0);
        if (t >= target - 1e-15 * opt.t_end) {
            traj.snapshot_times.push_back(t);
            traj.snapshots.push_back(lambda0);
            ++next_snap;
        }
        dt *= 1.6;
    }
    return traj;
}

DysonTrajectory evolve_stochastic(std::vector<double> lambda0, const DysonOptions& opt,
                                  double dt, Rng& rng, int n_snapshots) {
    require_sorted(lambda0, "stochastic flow");
    if (!(dt > 0.0)) throw config_error("dt must be positive");
    if (n_snapshots < 1) throw config_error("need at least one snapshot");

    DysonTrajectory traj;
    const size_t n = lambda0.size();
    const double noise = std::sqrt(dt / static_cast<double>(n));
    double t = 0.0;
    int next_snap = 1;

    auto record = [&](const std::vector<double>& s) {
        traj.times.push_back(t);
        traj.potential.push_back(log_potential(s, opt.gamma));
        traj.m2.push_back(second_moment(s));
    };
    record(lambda0);

    while (t < opt.t_end - 1e-15 * opt.t_end) {
        const double target = opt.t_end * next_snap / n_snapshots;
        const double h = std::min(dt, target - t);
        const double scale = std::sqrt(h / dt);  // partial steps keep variance h/N
        const std::vector<double> k = dyson_drift(lambda0, opt.gamma);
        for (size_t j = 0; j < n; ++j) {
            // near-collision the repulsion is stiff and a raw Euler kick can
            // throw a particle across several neighbors; cap the drift
            // displacement at a quarter of the tighter adjacent gap
            double cap = std::numeric_limits<double>::infinity();
            if (j > 0) cap = lambda0[j] - lambda0[j - 1];
            if (j + 1 < n) cap = std::min(cap, lambda0[j + 1] - lambda0[j]);
            cap *= 0.25;
            const double move = std::clamp(h * k[j], -cap, cap);
            lambda0[j] += move + scale * noise * rng.normal();
        }
        std::sort(lambda0.begin(), lambda0.end());
        if (min_gap(lambda0) < 1e-14 * span(lambda0))
            throw numeric_error("stochastic step produced a particle collision");
        t += h;
        record(lambda0);
        if (t >= target - 1e-15 * opt.t_end) {
            traj.snapshot_times.push_back(t);
            traj.snapshots.push_back(lambda0);
            ++next_snap;
        }
    }
    return traj;
}

double w1_particles(std::vector<double> a, std::vector<double> b) {
    if (a.size() != b.size() || a.empty())
        throw config_error("wasserstein distance needs equal nonempty sets");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double s = 0.0;
    for (size_t j = 0; j < a.size(); ++j) s += std::abs(a[j] - b[j]);
    return s / static_cast<double>(a.size());
}

double w2_particles(std::vector<double> a, std::vector<double> b) {
    if (a.size() != b.size() || a.empty())
        throw config_error("wasserstein distance needs equal nonempty sets");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double s = 0.0;
    for (size_t j = 0; j < a.size(); ++j) s += (a[j] - b[j]) * (a[j] - b[j]);
    return std::sqrt(s / static_cast<double>(a.size()));
}

double w1_to_semicircle(std::vector<double> lambda, const SemicircleLaw& law) {
    if (lambda.empty()) throw config_error("empty particle set");
    std::sort(lambda.begin(), lambda.end());
    const size_t n = lambda.size();
    const double lo = std::min(lambda.front(), -law.radius);
    const double hi = std::max(lambda.back(), law.radius);

    // Between consecutive order statistics F_N is the constant c = i/N;
    // |c - F| integrates in closed form on each side of the crossing.
    auto piece = [&](double p, double q, double c) {
        if (q <= p) return 0.0;
        auto area = [&](double u, double v) { return law.cdf_antiderivative(v) - law.cdf_antiderivative(u); };
        if (law.cdf(p) >= c) return area(p, q) - c * (q - p);
        if (law.cdf(q) <= c) return c * (q - p) - area(p, q);
        const double xc = law.quantile(c);
        return c * (xc - p) - area(p, xc) + area(xc, q) - c * (q - xc);
    };

    double total = piece(lo, lambda[0], 0.0);
    for (size_t i = 1; i < n; ++i)
        total += piece(lambda[i - 1], lambda[i], static_cast<double>(i) / n);
    total += piece(lambda[n - 1], hi, 1.0);
    return total;
}

std::vector<double> pole_acceleration(const std::vector<double>& x) {
    const size_t n = x.size();
    if (n < 2) throw config_error("pole system needs at least two particles");
    const double c = -2.0 / (static_cast<double>(n) * static_cast<double>(n));
    std::vector<double> a(n, 0.0);
    for (size_t j = 0; j < n; ++j) {
        double acc = 0.0;
        for (size_t k = 0; k < n; ++k) {
            if (k == j) continue;
            const double d = x[j] - x[k];
            acc += 1.0 / (d * d * d);
        }
        a[j] = c * acc;
    }
    return a;
}

PoleTrajectory evolve_poles(std::vector<double> x0, std::vector<double> v0,
                            const PoleOptions& opt, int n_snapshots) {
    require_sorted(x0, "pole system");
    if (x0.size() != v0.size()) throw config_error("positions and velocities differ in size");
    if (!(opt.dt > 0.0) || !(opt.t_end > opt.t_start)) throw config_error("bad pole time grid");
    if (n_snapshots < 1) throw config_error("need at least one snapshot");

    PoleTrajectory traj;
    const size_t n = x0.size();
    const double horizon = opt.t_end - opt.t_start;
    double t = opt.t_start;
    int next_snap = 1;
    std::vector<double> acc = pole_acceleration(x0);

    traj.times.push_back(t);
    traj.positions.push_back(x0);
    traj.velocities.push_back(v0);

    while (t < opt.t_end - 1e-15 * horizon) {
        const double target = opt.t_start + horizon * next_snap / n_snapshots;
        const double h = std::min(opt.dt, target - t);
        for (size_t j = 0; j < n; ++j) x0[j] += h * (v0[j] + 0.5 * h * acc[j]);
        if (!std::is_sorted(x0.begin(), x0.end()))
            throw numeric_error("pole crossing: time step does not resolve the repulsion");
        const std::vector<double> acc_new = pole_acceleration(x0);
        for (size_t j = 0; j < n; ++j) v0[j] += 0.5 * h * (acc[j] + acc_new[j]);
        acc = acc_new;
        t += h;
        if (t >= target - 1e-15 * horizon) {
            traj.times.push_back(t);
            traj.positions.push_back(x0);
            traj.velocities.push_back(v0);
            ++next_snap;
        }
    }
    return traj;
}

SeededPoles seed_poles_from_point(int n, double eps) {
    if (n < 2) throw config_error("need at least two particles");
    if (!(eps > 0.0)) throw config_error("seed time must be positive");
    SeededPoles s;
    const SemicircleLaw unit(1.0);
    const double radius = 2.0 * std::sqrt(eps);
    s.x.resize(n);
    s.v.resize(n);
    for (int j = 0; j < n; ++j) {
        const double q = unit.quantile((j + 0.5) / n);
        s.x[j] = radius * q;
        s.v[j] = s.x[j] / (2.0 * eps);  // self-similar spread: positions grow like sqrt(t)
    }
    return s;
}

}  // namespace lab
