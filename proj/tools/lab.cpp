// lab: command-line driver for the solver library. Each scenario reads a
// flat JSON config (all keys optional unless noted), writes CSV tables and a
// run_record.json into --out, and reports scalar results in the record's
// metrics block. Exit codes: 0 ok, 2 bad configuration, 3 numerical failure.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>

#include <CLI11.hpp>

#include "lab/analysis.hpp"
#include "lab/characteristics.hpp"
#include "lab/coupled.hpp"
#include "lab/dyson.hpp"
#include "lab/grid.hpp"
#include "lab/hamiltonian.hpp"
#include "lab/lagrangian.hpp"
#include "lab/oracles.hpp"
#include "lab/runconfig.hpp"
#include "lab/util.hpp"

namespace {

using namespace lab;
constexpr double kPi = std::numbers::pi;

struct Ctx {
    RunConfig cfg;
    RunRecord rec;
    std::string out_dir = ".";
    bool plot = false;
    std::uint64_t seed = 12345;

    std::string path(const std::string& name) const { return out_dir + "/" + name; }
    void wrote(const std::string& name) { rec.outputs.push_back(name); }
};

void maybe_plot(Ctx& c, const std::string& svg_name, const std::string& title,
                const std::vector<double>& x, const std::vector<PlotSeries>& series) {
    if (!c.plot) return;
    write_svg_plot(c.path(svg_name), title, x, series);
    c.wrote(svg_name);
}

// ---------------------------------------------------------------- scenarios

void scenario_oracle_tables(Ctx& c) {
    const double gamma = c.cfg.number("gamma", 0.0);
    const double sigma0 = c.cfg.number("sigma0", 1.0);
    const std::vector<double> times = c.cfg.number_list("times", {0.5, 1.0, 2.0});
    const int n = static_cast<int>(c.cfg.integer("n", 512));
    const double x_min = c.cfg.number("x_min", -4.0);
    const double x_max = c.cfg.number("x_max", 4.0);
    c.cfg.reject_unknown();

    const SelfSimilarSolution sol(gamma, sigma0);
    const Grid g(x_min, x_max, n);
    const std::vector<double> xs = g.centers();

    std::vector<CsvColumn> cols{{"x", &xs}};
    std::vector<std::vector<double>> store;
    store.reserve(2 * times.size());
    for (double t : times) {
        std::vector<double> rho(xs.size()), u(xs.size());
        for (size_t j = 0; j < xs.size(); ++j) {
            rho[j] = rho_selfsim(xs[j], t, sol);
            u[j] = u_selfsim(xs[j], t, sol);
        }
        store.push_back(std::move(rho));
        store.push_back(std::move(u));
        c.rec.metrics["m2_law_t" + fmt_double(t)] = second_moment_law(t, gamma, 1.0, sigma0 / 2.0);
        c.rec.metrics["half_width_t" + fmt_double(t)] = sol.half_width(t);
    }
    for (size_t i = 0; i < times.size(); ++i) {
        cols.push_back({"rho_t" + fmt_double(times[i]), &store[2 * i]});
        cols.push_back({"u_t" + fmt_double(times[i]), &store[2 * i + 1]});
    }
    write_csv(c.path("selfsim.csv"), cols);
    c.wrote("selfsim.csv");

    std::vector<PlotSeries> ps;
    for (size_t i = 0; i < times.size(); ++i)
        ps.push_back({"rho t=" + fmt_double(times[i]), &store[2 * i]});
    maybe_plot(c, "selfsim.svg", "spreading density", xs, ps);
}

InitialData data_from_config(Ctx& c) {
    const std::string kind = c.cfg.text("data", "cauchy");
    const double vs = c.cfg.number("velocity_scale", kPi);
    if (kind == "cauchy")
        return InitialData::cauchy_data(c.cfg.number("epsilon", 1.0), c.cfg.number("mass", 1.0),
                                        vs);
    if (kind == "semicircle") return InitialData::semicircle_data(c.cfg.number("radius", 2.0), vs);
    if (kind == "bump") {
        // rho0 = (2/sqrt(pi)) x^2 exp(-x^2), sampled; steepens and blows up
        const int n = static_cast<int>(c.cfg.integer("data_n", 2048));
        const Grid g(c.cfg.number("data_x_min", -8.0), c.cfg.number("data_x_max", 8.0), n);
        std::vector<double> rho(static_cast<size_t>(n));
        for (int j = 0; j < n; ++j) {
            const double x = g.center(j);
            rho[static_cast<size_t>(j)] = 2.0 / std::sqrt(kPi) * x * x * std::exp(-x * x);
        }
        return InitialData::grid_data(GridField(g, std::move(rho), FieldKind::density), vs);
    }
    throw config_error("data must be cauchy, semicircle, or bump");
}

void scenario_characteristics_trace(Ctx& c) {
    InitialData data = data_from_config(c);
    CharacteristicSolve cs;
    cs.gamma = c.cfg.number("gamma", 0.0);
    cs.t = c.cfg.number("t", 1.0);
    cs.newton_tol = c.cfg.number("newton_tol", 1e-12);
    const int n = static_cast<int>(c.cfg.integer("n", 512));
    const Grid g(c.cfg.number("x_min", -4.0), c.cfg.number("x_max", 4.0), n);
    c.cfg.reject_unknown();

    const TraceResult tr = trace_density(data, cs, g);
    const std::vector<double> xs = g.centers();
    write_csv(c.path("trace.csv"), {{"x", &xs},
                                    {"rho", &tr.rho.values},
                                    {"u", &tr.u.values},
                                    {"root_im", &tr.root_im}});
    c.wrote("trace.csv");

    double mass = 0.0, peak = 0.0;
    for (double r : tr.rho.values) {
        mass += r * g.dx();
        peak = std::max(peak, r);
    }
    c.rec.metrics["mass"] = mass;
    c.rec.metrics["peak_rho"] = peak;
    maybe_plot(c, "trace.svg", "density and velocity at t=" + fmt_double(cs.t), xs,
               {{"rho", &tr.rho.values}, {"u", &tr.u.values}});
}

void scenario_blowup(Ctx& c) {
    c.cfg.apply_override("velocity_scale=1.0");  // slope convention u = H rho
    InitialData data = data_from_config(c);
    const double t_max = c.cfg.number("t_max", 4.0);
    const double threshold = c.cfg.number("threshold", 1e3);
    const int n_monitor = static_cast<int>(c.cfg.integer("n_monitor", 64));
    c.cfg.reject_unknown();

    std::vector<double> probes{0.0};
    for (int k = 0; k < 17; ++k) {
        const double x = std::pow(10.0, -4.0 + 4.0 * k / 16.0);
        probes.push_back(x);
        probes.push_back(-x);
    }

    const BlowupEstimate est = blowup_estimate(data, probes);
    const double t_cross = steepening_time(data, 0.0, threshold, probes, t_max);
    c.rec.metrics["x0"] = est.x0;
    c.rec.metrics["slope0"] = est.slope0;
    c.rec.metrics["t_star"] = est.t_star;
    c.rec.metrics["t_cross"] = t_cross;

    std::vector<double> ts(static_cast<size_t>(n_monitor)), slopes(static_cast<size_t>(n_monitor));
    for (int k = 0; k < n_monitor; ++k) {
        const double t = t_cross * (k + 1) / (n_monitor + 1);
        CharacteristicSolve cs{0.0, t, 1e-12, 60};
        double m = 1e300;
        for (double x : probes) m = std::min(m, trace_velocity_slope(data, cs, x));
        ts[static_cast<size_t>(k)] = t;
        slopes[static_cast<size_t>(k)] = m;
    }
    write_csv(c.path("steepening.csv"), {{"t", &ts}, {"min_slope", &slopes}});
    c.wrote("steepening.csv");
    maybe_plot(c, "steepening.svg", "steepest velocity slope", ts, {{"min slope", &slopes}});
}

void scenario_dyson_particles(Ctx& c) {
    DysonOptions opt;
    opt.gamma = c.cfg.number("gamma", 1.0);
    opt.t_end = c.cfg.number("t_end", 10.0);
    opt.tol = c.cfg.number("tol", 1e-7);
    const int n = static_cast<int>(c.cfg.integer("n", 400));
    const bool stochastic = c.cfg.flag("stochastic", false);
    const double dt = c.cfg.number("dt", 6.7e-4);
    const std::string init = c.cfg.text("init", "uniform");
    const double lo = c.cfg.number("init_min", -3.0), hi = c.cfg.number("init_max", 3.0);
    const int snaps = static_cast<int>(c.cfg.integer("snapshots", 10));
    c.cfg.reject_unknown();

    Rng rng(c.seed);
    std::vector<double> lam(static_cast<size_t>(n));
    if (init == "uniform") {
        for (int j = 0; j < n; ++j)
            lam[static_cast<size_t>(j)] = lo + (hi - lo) * (j + 0.5) / n;
    } else if (init == "uniform_random") {
        // sorted iid samples start with O(1/n^2) gaps; stochastic stepping
        // relies on the drift cap to survive those
        for (double& v : lam) v = rng.uniform(lo, hi);
        std::sort(lam.begin(), lam.end());
        for (size_t j = 1; j < lam.size(); ++j)
            if (lam[j] <= lam[j - 1]) lam[j] = std::nextafter(lam[j - 1], 1e300);
    } else if (init == "semicircle_quantiles") {
        const SemicircleLaw law(c.cfg.number("init_radius", 2.0));
        for (int j = 0; j < n; ++j) lam[static_cast<size_t>(j)] = law.quantile((j + 0.5) / n);
    } else {
        throw config_error("init must be uniform, uniform_random or semicircle_quantiles");
    }

    const DysonTrajectory traj = stochastic ? evolve_stochastic(lam, opt, dt, rng, snaps)
                                            : evolve_deterministic(lam, opt, snaps);
    write_csv(c.path("observables.csv"),
              {{"t", &traj.times}, {"potential", &traj.potential}, {"m2", &traj.m2}});
    c.wrote("observables.csv");

    const std::vector<double>& last = traj.snapshots.back();
    std::vector<double> idx(last.size());
    for (size_t j = 0; j < idx.size(); ++j) idx[j] = static_cast<double>(j);
    write_csv(c.path("particles.csv"), {{"index", &idx}, {"lambda", &last}});
    c.wrote("particles.csv");

    if (opt.gamma > 0.0) {
        const SemicircleLaw limit(std::sqrt(2.0 / opt.gamma));
        c.rec.metrics["w1_to_limit_law"] = w1_to_semicircle(last, limit);
    }
    c.rec.metrics["m2_final"] = traj.m2.back();
    c.rec.metrics["m2_law_final"] =
        second_moment_law(opt.t_end, opt.gamma, 1.0, second_moment(lam));
    double worst_rise = 0.0;
    for (size_t j = 1; j < traj.potential.size(); ++j)
        worst_rise = std::max(worst_rise, traj.potential[j] - traj.potential[j - 1]);
    c.rec.metrics["potential_worst_rise"] = worst_rise;
    maybe_plot(c, "observables.svg", "potential and second moment", traj.times,
               {{"potential", &traj.potential}, {"m2", &traj.m2}});
}

CoupledState riemann_state(Ctx& c, const Grid& g) {
    const double rl = c.cfg.number("rho_l", 1.5), ul = c.cfg.number("u_l", 0.2);
    const double rr = c.cfg.number("rho_r", 0.5), ur = c.cfg.number("u_r", -0.1);
    CoupledState s;
    std::vector<double> rho(static_cast<size_t>(g.n_cells)), u(static_cast<size_t>(g.n_cells));
    for (int j = 0; j < g.n_cells; ++j) {
        const bool left = g.center(j) < 0.0;
        rho[static_cast<size_t>(j)] = left ? rl : rr;
        u[static_cast<size_t>(j)] = left ? ul : ur;
    }
    s.rho = GridField(g, std::move(rho), FieldKind::density);
    s.u = GridField(g, std::move(u), FieldKind::velocity);
    return s;
}

void scenario_coupled_riemann(Ctx& c) {
    CoupledOptions opt;
    opt.alpha = c.cfg.number("alpha", 1.0);
    opt.cfl = c.cfg.number("cfl", 0.45);
    opt.t_end = c.cfg.number("t_end", 0.5);
    const int n = static_cast<int>(c.cfg.integer("n", 2048));
    const Grid g(c.cfg.number("x_min", -2.0), c.cfg.number("x_max", 2.0), n);
    const CoupledState init = riemann_state(c, g);
    c.cfg.reject_unknown();

    const CoupledResult res = evolve_coupled(init, opt);
    auto [fp, fm] = to_invariants(res.state, opt.alpha);
    const std::vector<double> xs = g.centers();
    write_csv(c.path("state.csv"), {{"x", &xs},
                                    {"rho", &res.state.rho.values},
                                    {"u", &res.state.u.values},
                                    {"f_plus", &fp},
                                    {"f_minus", &fm}});
    c.wrote("state.csv");
    c.rec.metrics["steps"] = res.steps;
    maybe_plot(c, "state.svg", "coupled Riemann problem at t=" + fmt_double(opt.t_end), xs,
               {{"rho", &res.state.rho.values}, {"u", &res.state.u.values}});
}

void scenario_gas_compare(Ctx& c) {
    CoupledOptions opt;
    opt.alpha = c.cfg.number("alpha", 1.0);
    opt.cfl = c.cfg.number("cfl", 0.45);
    opt.t_end = c.cfg.number("t_end", 0.5);
    const int n = static_cast<int>(c.cfg.integer("n", 2048));
    const Grid g(c.cfg.number("x_min", -2.0), c.cfg.number("x_max", 2.0), n);
    const CoupledState init = riemann_state(c, g);
    c.cfg.reject_unknown();

    const CoupledResult a = evolve_coupled(init, opt);
    const CoupledResult b = evolve_gas(init, opt);
    const std::vector<double> xs = g.centers();
    write_csv(c.path("compare.csv"), {{"x", &xs},
                                      {"rho_invariant", &a.state.rho.values},
                                      {"u_invariant", &a.state.u.values},
                                      {"rho_gas", &b.state.rho.values},
                                      {"u_gas", &b.state.u.values}});
    c.wrote("compare.csv");

    double l1 = 0.0;
    for (int j = 0; j < n; ++j)
        l1 += std::abs(a.state.rho.values[static_cast<size_t>(j)] -
                       b.state.rho.values[static_cast<size_t>(j)]) *
              g.dx();
    c.rec.metrics["l1_rho_diff"] = l1;
    maybe_plot(c, "compare.svg", "invariant-wise vs conservative", xs,
               {{"rho invariant", &a.state.rho.values}, {"rho gas", &b.state.rho.values}});
}

void scenario_hamiltonian_verify(Ctx& c) {
    const int n = static_cast<int>(c.cfg.integer("n", 128));
    const double period = c.cfg.number("period", 2.0 * kPi);
    const double alpha = c.cfg.number("alpha", 1.3);
    c.cfg.reject_unknown();

    Rng rng(c.seed);
    // random smooth periodic fields: low trig polynomials, rho/eta kept positive
    auto field = [&](double base) {
        std::vector<double> f(static_cast<size_t>(n));
        const double a1 = rng.uniform(-0.3, 0.3), a2 = rng.uniform(-0.2, 0.2);
        const double p1 = rng.uniform(0.0, 2.0 * kPi), p2 = rng.uniform(0.0, 2.0 * kPi);
        for (int j = 0; j < n; ++j) {
            const double x = period * j / n;
            f[static_cast<size_t>(j)] = base + a1 * std::sin(2.0 * kPi * x / period + p1) +
                                        a2 * std::cos(4.0 * kPi * x / period + p2);
        }
        return f;
    };
    const std::vector<double> rho = field(1.0), u = field(0.0);
    const double dx = period / n;

    std::vector<double> m(rho.size());
    for (size_t j = 0; j < m.size(); ++j) m[j] = rho[j] * u[j];

    auto linf = [](const FieldPair& a, const FieldPair& b) {
        double worst = 0.0;
        for (size_t j = 0; j < a.a.size(); ++j) {
            worst = std::max(worst, std::abs(a.a[j] - b.a[j]));
            worst = std::max(worst, std::abs(a.b[j] - b.b[j]));
        }
        return worst;
    };
    const FieldPair lhs1 = apply_J(grad_H1_velocity(rho, u, alpha), alpha, period);
    const FieldPair rhs1 = apply_K(grad_H2_velocity(rho, u, alpha), period);
    c.rec.metrics["velocity_chart_mismatch"] = linf(lhs1, rhs1);

    const FieldPair lhs2 =
        apply_J_tilde(grad_H1_momentum(rho, m, alpha), rho, u, alpha, period);
    const FieldPair rhs2 = apply_K_tilde(grad_H2_momentum(rho, m, alpha), rho, u, period);
    c.rec.metrics["momentum_chart_mismatch"] = linf(lhs2, rhs2);

    const std::vector<double> eta = field(1.0), V = field(0.0);
    const FieldPair lhs3 = apply_P1(grad_H1_lagrangian(eta, V, alpha), eta, V, alpha, period);
    const FieldPair rhs3 = apply_P2(grad_H2_lagrangian(eta, V, alpha), eta, period);
    c.rec.metrics["lagrangian_chart_mismatch"] = linf(lhs3, rhs3);

    std::vector<double> xs(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) xs[static_cast<size_t>(j)] = period * j / n;
    write_csv(c.path("fields.csv"),
              {{"x", &xs}, {"rho", &rho}, {"u", &u}, {"eta", &eta}, {"V", &V}});
    c.wrote("fields.csv");
}

void run_chain_scenario(Ctx& c, ChainModel model) {
    ChainOptions opt;
    opt.model = model;
    opt.alpha = c.cfg.number("alpha", model == ChainModel::all_pairs ? -kPi * kPi : 1.0);
    opt.dt = c.cfg.number("dt", 1e-3);
    opt.steps = c.cfg.integer("steps", 10000);
    opt.record_every = static_cast<int>(c.cfg.integer("record_every", 10));
    const int n = static_cast<int>(c.cfg.integer("n", 16));
    const double spread = c.cfg.number("spread", 2.0);
    c.cfg.reject_unknown();

    // positions on the quantiles of a wide semicircle, velocities v = x:
    // an expanding state that never collides for either force sign
    ChainState init;
    const SemicircleLaw law(2.0);
    init.x.resize(static_cast<size_t>(n));
    init.v.resize(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
        init.x[static_cast<size_t>(j)] = spread * law.quantile((j + 0.5) / n);
        init.v[static_cast<size_t>(j)] = init.x[static_cast<size_t>(j)];
    }

    const ChainRun run = run_chain(init, opt);
    write_csv(c.path("observables.csv"),
              {{"t", &run.times}, {"energy", &run.energy}, {"momentum", &run.momentum}});
    c.wrote("observables.csv");
    std::vector<double> idx(run.state.x.size());
    for (size_t j = 0; j < idx.size(); ++j) idx[j] = static_cast<double>(j);
    write_csv(c.path("final.csv"), {{"index", &idx}, {"x", &run.state.x}, {"v", &run.state.v}});
    c.wrote("final.csv");

    double drift = 0.0, pdrift = 0.0;
    for (double e : run.energy) drift = std::max(drift, std::abs(e - run.energy.front()));
    for (double p : run.momentum) pdrift = std::max(pdrift, std::abs(p - run.momentum.front()));
    c.rec.metrics["energy_drift"] = drift;
    c.rec.metrics["momentum_drift"] = pdrift;
    maybe_plot(c, "observables.svg", "chain invariants", run.times,
               {{"energy", &run.energy}, {"momentum", &run.momentum}});
}

void scenario_fput_chain(Ctx& c) { run_chain_scenario(c, ChainModel::nearest_neighbor); }
void scenario_cm_chain(Ctx& c) { run_chain_scenario(c, ChainModel::all_pairs); }

void scenario_continuum_limit(Ctx& c) {
    const std::string model_name = c.cfg.text("model", "nearest_neighbor");
    const double alpha = c.cfg.number("alpha", 1.0);
    const std::vector<double> n_list = c.cfg.number_list("n_list", {64, 128, 256, 512, 1024});
    c.cfg.reject_unknown();
    ChainModel model;
    if (model_name == "nearest_neighbor")
        model = ChainModel::nearest_neighbor;
    else if (model_name == "all_pairs")
        model = ChainModel::all_pairs;
    else
        throw config_error("model must be nearest_neighbor or all_pairs");

    const auto X = [](double xi) { return xi + 0.1 * std::sin(2.0 * kPi * xi); };
    const auto Xxi = [](double xi) { return 1.0 + 0.2 * kPi * std::cos(2.0 * kPi * xi); };
    const auto Xxixi = [](double xi) { return -0.4 * kPi * kPi * std::sin(2.0 * kPi * xi); };

    std::vector<double> ns, res;
    for (double nd : n_list) {
        ns.push_back(nd);
        res.push_back(continuum_limit_residual(model, alpha, static_cast<int>(nd), X, Xxi, Xxixi));
    }
    write_csv(c.path("residuals.csv"), {{"n", &ns}, {"residual", &res}});
    c.wrote("residuals.csv");

    // least-squares slope of log(residual) against log(1/n)
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t k = 0; k < ns.size(); ++k) {
        const double lx = -std::log(ns[k]), ly = std::log(res[k]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double kk = static_cast<double>(ns.size());
    c.rec.metrics["order_fit"] = (kk * sxy - sx * sy) / (kk * sxx - sx * sx);
    maybe_plot(c, "residuals.svg", "continuum limit residual", ns, {{"residual", &res}});
}

void scenario_lagrangian_pde(Ctx& c) {
    LagrangianOptions opt;
    opt.alpha = c.cfg.number("alpha", 1.0);
    opt.dt = c.cfg.number("dt", 1e-4);
    opt.t_end = c.cfg.number("t_end", 0.1);
    opt.periodic = c.cfg.flag("periodic", true);
    opt.period = c.cfg.number("period", 2.0);
    const int M = static_cast<int>(c.cfg.integer("m_nodes", 1024));
    const int out_n = static_cast<int>(c.cfg.integer("out_n", 512));
    const double mean = c.cfg.number("rho_mean", 0.5);
    const double amp = c.cfg.number("rho_amp", 0.15);
    const double uamp = c.cfg.number("u_amp", 0.05);
    c.cfg.reject_unknown();

    const Grid g(-1.0, 1.0, 1024);
    std::vector<double> rho0(1024), u0(1024);
    for (int j = 0; j < 1024; ++j) {
        const double x = g.center(j);
        rho0[static_cast<size_t>(j)] = mean + amp * std::cos(kPi * x);
        u0[static_cast<size_t>(j)] = uamp * std::sin(kPi * x);
    }
    const GridField rf(g, rho0, FieldKind::density), uf(g, u0, FieldKind::velocity);

    LagrangianState init = flow_map_from_density(rf, uf, M);
    const double mass = 2.0 * mean;  // cos integrates away over a full period
    const LagrangianRun run = evolve_lagrangian(std::move(init), opt);

    const Grid out(-1.0, 1.0, out_n);
    const GridField rho = density_from_flow(run.state, mass, out, opt.periodic, opt.period);
    const std::vector<double> xs = out.centers();
    write_csv(c.path("density.csv"), {{"x", &xs}, {"rho", &rho.values}});
    c.wrote("density.csv");
    write_csv(c.path("energy.csv"), {{"t", &run.times}, {"energy", &run.energy}});
    c.wrote("energy.csv");

    double drift = 0.0;
    for (double e : run.energy) drift = std::max(drift, std::abs(e - run.energy.front()));
    c.rec.metrics["energy_drift"] = drift;
    maybe_plot(c, "density.svg", "flow-map density at t=" + fmt_double(opt.t_end), xs,
               {{"rho", &rho.values}});
}

void scenario_hilbert_probe(Ctx& c) {
    const int n = static_cast<int>(c.cfg.integer("n", 4096));
    const double L = c.cfg.number("half_width", 8.0);
    c.cfg.reject_unknown();

    const Grid g(-L, L, n);
    std::vector<double> f(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
        const double x = g.center(j);
        f[static_cast<size_t>(j)] = std::exp(-x * x);
    }
    const GridField gf(g, std::move(f), FieldKind::density);
    const GridField h = hilbert_transform(gf);
    const GridField dh = pv_derivative_of_hilbert(gf);
    const std::vector<double> xs = g.centers();
    write_csv(c.path("hilbert.csv"),
              {{"x", &xs}, {"f", &gf.values}, {"hilbert", &h.values}, {"d_hilbert", &dh.values}});
    c.wrote("hilbert.csv");
    maybe_plot(c, "hilbert.svg", "conjugate of a gaussian", xs,
               {{"f", &gf.values}, {"hilbert", &h.values}});
}

// --------------------------------------------------------------------- main

using Scenario = std::function<void(Ctx&)>;

const std::map<std::string, Scenario>& registry() {
    static const std::map<std::string, Scenario> r = {
        {"oracle_tables", scenario_oracle_tables},
        {"characteristics_trace", scenario_characteristics_trace},
        {"blowup", scenario_blowup},
        {"dyson_particles", scenario_dyson_particles},
        {"coupled_riemann", scenario_coupled_riemann},
        {"gas_compare", scenario_gas_compare},
        {"hamiltonian_verify", scenario_hamiltonian_verify},
        {"fput_chain", scenario_fput_chain},
        {"cm_chain", scenario_cm_chain},
        {"continuum_limit", scenario_continuum_limit},
        {"lagrangian_pde", scenario_lagrangian_pde},
        {"hilbert_probe", scenario_hilbert_probe},
    };
    return r;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for a coupled Burgers system"};
    app.require_subcommand(0);

    std::string scenario_name, config_path, out_dir = ".";
    std::vector<std::string> overrides;
    bool plot = false;
    std::string names;
    for (const auto& [k, v] : registry()) names += (names.empty() ? "" : ", ") + k;

    app.add_option("scenario", scenario_name, "one of: " + names)->required();
    app.add_option("--config", config_path, "JSON config file");
    app.add_option("--set", overrides, "config overrides key=value (repeatable)");
    app.add_option("--out", out_dir, "output directory (created if missing)");
    app.add_flag("--plot", plot, "also write SVG plots");
    CLI11_PARSE(app, argc, argv);

    Ctx ctx;
    ctx.out_dir = out_dir;
    ctx.plot = plot;
    ctx.rec.scenario = scenario_name;

    int code = 0;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        std::error_code ec;
        std::filesystem::create_directories(out_dir, ec);
        if (ec) throw lab::config_error("cannot create output directory: " + out_dir);

        const auto it = registry().find(scenario_name);
        if (it == registry().end())
            throw lab::config_error("unknown scenario: " + scenario_name + " (try: " + names + ")");

        if (!config_path.empty()) ctx.cfg = lab::RunConfig::from_file(config_path);
        for (const auto& o : overrides) ctx.cfg.apply_override(o);

        if (const char* env = std::getenv("LAB_SEED")) ctx.seed = std::strtoull(env, nullptr, 10);
        ctx.seed = static_cast<std::uint64_t>(
            ctx.cfg.number("seed", static_cast<double>(ctx.seed)));
        ctx.rec.seed = ctx.seed;
        ctx.rec.config = ctx.cfg.raw();

        it->second(ctx);
    } catch (const lab::config_error& e) {
        ctx.rec.status = "config_error";
        ctx.rec.error = e.what();
        std::cerr << nlohmann::json{{"error", e.what()}, {"type", "config"}}.dump() << '\n';
        code = 2;
    } catch (const lab::numeric_error& e) {
        ctx.rec.status = "numeric_error";
        ctx.rec.error = e.what();
        std::cerr << nlohmann::json{{"error", e.what()}, {"type", "numeric"}}.dump() << '\n';
        code = 3;
    }
    const auto t1 = std::chrono::steady_clock::now();
    ctx.rec.wall_seconds = std::chrono::duration<double>(t1 - t0).count();

    try {
        lab::write_run_record(ctx.out_dir + "/run_record.json", ctx.rec);
    } catch (const std::exception& e) {
        std::cerr << "run record not written: " << e.what() << '\n';
        if (code == 0) code = 2;
    }
    return code;
}
