#include <doctest.h>

#include <cmath>
#include <vector>

#include "lab/coupled.hpp"
#include "lab/util.hpp"
#include "oracle_helpers.hpp"

using namespace lab;

namespace {

CoupledState make_state(const Grid& g, double (*rho)(double), double (*u)(double)) {
    std::vector<double> r(static_cast<size_t>(g.n_cells)), v(static_cast<size_t>(g.n_cells));
    for (int j = 0; j < g.n_cells; ++j) {
        r[static_cast<size_t>(j)] = rho(g.center(j));
        v[static_cast<size_t>(j)] = u(g.center(j));
    }
    return {GridField(g, std::move(r), FieldKind::density),
            GridField(g, std::move(v), FieldKind::velocity)};
}

double l1_diff(const std::vector<double>& a, const std::vector<double>& b, double dx) {
    double s = 0.0;
    for (size_t j = 0; j < a.size(); ++j) s += std::abs(a[j] - b[j]) * dx;
    return s;
}

}  // namespace

TEST_CASE("interface state covers the full wave-case table") {
    // shocks (fl >= fr): the side picked by the shock speed (fl + fr)/2
    CHECK(riemann_interface_state(2.0, 1.0) == 2.0);    // right-moving shock
    CHECK(riemann_interface_state(-1.0, -2.0) == -2.0); // left-moving shock
    // stationary shock: the state is side-ambiguous but the flux is not
    CHECK(std::abs(riemann_interface_state(1.0, -1.0)) == 1.0);
    CHECK(godunov_flux(1.0, -1.0) == doctest::Approx(0.5));
    // rarefactions (fl < fr): upwind side unless the fan straddles zero
    CHECK(riemann_interface_state(0.5, 2.0) == 0.5);
    CHECK(riemann_interface_state(-2.0, -0.5) == -0.5);
    CHECK(riemann_interface_state(-1.0, 1.0) == 0.0);   // sonic point inside the fan
    CHECK(godunov_flux(3.0, 3.0) == doctest::Approx(4.5));
}

TEST_CASE("constant states are exact fixed points") {
    const Grid g(-1.0, 1.0, 64);
    const CoupledState init = make_state(
        g, [](double) { return 0.8; }, [](double) { return 0.3; });
    CoupledOptions opt;
    opt.t_end = 0.4;
    for (const Boundary bc : {Boundary::outflow, Boundary::periodic}) {
        opt.bc = bc;
        const CoupledResult res = evolve_coupled(init, opt);
        for (int j = 0; j < g.n_cells; ++j) {
            CHECK(res.state.rho.values[static_cast<size_t>(j)] == doctest::Approx(0.8));
            CHECK(res.state.u.values[static_cast<size_t>(j)] == doctest::Approx(0.3));
        }
    }
}

TEST_CASE("single invariant shock travels at the Rankine-Hugoniot speed") {
    // with u = sqrt(alpha) rho the minus invariant vanishes identically and
    // f+ solves Burgers alone: a 1 -> 0 jump moves at speed 1/2
    const Grid g(-1.0, 1.0, 1024);
    CoupledOptions opt;
    opt.alpha = 1.0;
    opt.t_end = 0.8;
    const CoupledState init = make_state(
        g, [](double x) { return x < 0.0 ? 0.5 : 0.0; },
        [](double x) { return x < 0.0 ? 0.5 : 0.0; });
    const CoupledResult res = evolve_coupled(init, opt);
    // locate the front as the steepest descent of rho
    int front = 0;
    double steep = 0.0;
    for (int j = 1; j < g.n_cells; ++j) {
        const double d = res.state.rho.values[static_cast<size_t>(j - 1)] -
                         res.state.rho.values[static_cast<size_t>(j)];
        if (d > steep) {
            steep = d;
            front = j;
        }
    }
    CHECK(std::abs(g.center(front) - 0.4) <= 3.0 * g.dx());
    // the minus invariant stays numerically zero
    const auto [fp, fm] = to_invariants(res.state, opt.alpha);
    for (const double v : fm) CHECK(std::abs(v) < 1e-13);
    (void)fp;
}

TEST_CASE("rarefaction matches the self-similar fan profile") {
    const Grid g(-1.0, 1.0, 2048);
    CoupledOptions opt;
    opt.alpha = 4.0;
    opt.t_end = 0.35;
    // pure plus-family rarefaction: f+ jumps -0.8 -> 0.8 over a constant
    // f- = -1.6 chosen so the density (f+ - f-)/(2 sqrt(alpha)) stays positive
    std::vector<double> fplus(static_cast<size_t>(g.n_cells));
    std::vector<double> fminus(static_cast<size_t>(g.n_cells), -1.6);
    for (int j = 0; j < g.n_cells; ++j)
        fplus[static_cast<size_t>(j)] = g.center(j) < 0.0 ? -0.8 : 0.8;
    const CoupledState init = from_invariants(g, fplus, fminus, opt.alpha);
    const CoupledResult res = evolve_coupled(init, opt);
    const auto [fp, fm] = to_invariants(res.state, opt.alpha);
    double worst = 0.0;
    for (int j = 0; j < g.n_cells; ++j) {
        const double x = g.center(j);
        const double exact = x < -0.8 * opt.t_end ? -0.8
                             : x > 0.8 * opt.t_end ? 0.8
                                                   : x / opt.t_end;
        worst = std::max(worst, std::abs(fp[static_cast<size_t>(j)] - exact));
    }
    // sup error concentrates at the fan corners; L1 is much smaller
    CHECK(worst < 0.05);
    CHECK(l1_diff(fm, std::vector<double>(fm.size(), -1.6), g.dx()) < 1e-11);
}

TEST_CASE("nonnegative density is preserved") {
    const Grid g(-1.0, 1.0, 256);
    Rng rng(11);
    std::vector<double> r(static_cast<size_t>(g.n_cells)), v(static_cast<size_t>(g.n_cells));
    for (size_t j = 0; j < r.size(); ++j) {
        r[j] = rng.uniform(0.0, 1.5);
        v[j] = rng.uniform(-1.0, 1.0);
    }
    CoupledState init{GridField(g, std::move(r), FieldKind::density),
                      GridField(g, std::move(v), FieldKind::velocity)};
    CoupledOptions opt;
    opt.t_end = 0.3;
    opt.bc = Boundary::periodic;
    const CoupledResult res = evolve_coupled(init, opt);
    for (const double x : res.state.rho.values) CHECK(x >= 0.0);
}

TEST_CASE("periodic runs conserve both invariant integrals exactly") {
    const Grid g(-1.0, 1.0, 256);
    const CoupledState init = make_state(
        g, [](double x) { return 0.6 + 0.2 * std::sin(oracle::kPi * x); },
        [](double x) { return 0.1 * std::cos(oracle::kPi * x); });
    CoupledOptions opt;
    opt.t_end = 0.5;
    opt.bc = Boundary::periodic;
    const auto [fp0, fm0] = to_invariants(init, opt.alpha);
    const CoupledResult res = evolve_coupled(init, opt);
    const auto [fp1, fm1] = to_invariants(res.state, opt.alpha);
    double s0 = 0.0, s1 = 0.0, d0 = 0.0, d1 = 0.0;
    for (size_t j = 0; j < fp0.size(); ++j) {
        s0 += fp0[j];
        s1 += fp1[j];
        d0 += fm0[j];
        d1 += fm1[j];
    }
    CHECK(s1 == doctest::Approx(s0).epsilon(1e-13));
    CHECK(d1 == doctest::Approx(d0).epsilon(1e-13));
}

TEST_CASE("monotone scheme contracts invariant L1 distances") {
    const Grid g(-1.0, 1.0, 128);
    Rng rng(3);
    CoupledOptions opt;
    opt.t_end = 0.25;
    opt.bc = Boundary::periodic;
    for (int trial = 0; trial < 20; ++trial) {
        auto random_state = [&]() {
            std::vector<double> r(static_cast<size_t>(g.n_cells)),
                v(static_cast<size_t>(g.n_cells));
            for (size_t j = 0; j < r.size(); ++j) {
                r[j] = rng.uniform(0.0, 1.0);
                v[j] = rng.uniform(-0.8, 0.8);
            }
            return CoupledState{GridField(g, std::move(r), FieldKind::density),
                                GridField(g, std::move(v), FieldKind::velocity)};
        };
        const CoupledState a = random_state(), b = random_state();
        const auto [ap0, am0] = to_invariants(a, opt.alpha);
        const auto [bp0, bm0] = to_invariants(b, opt.alpha);
        const CoupledResult ra = evolve_coupled(a, opt);
        const CoupledResult rb = evolve_coupled(b, opt);
        const auto [ap1, am1] = to_invariants(ra.state, opt.alpha);
        const auto [bp1, bm1] = to_invariants(rb.state, opt.alpha);
        CHECK(l1_diff(ap1, bp1, g.dx()) <= l1_diff(ap0, bp0, g.dx()) * (1.0 + 1e-12));
        CHECK(l1_diff(am1, bm1, g.dx()) <= l1_diff(am0, bm0, g.dx()) * (1.0 + 1e-12));
    }
}

TEST_CASE("entropy pairs evaluate their closed forms") {
    const EntropyPair sq = EntropyPair::square(1.0, 0.5, 1.0);
    CHECK(sq.scalar_psi(3.0) == doctest::Approx(4.5));
    CHECK(sq.scalar_phi(3.0) == doctest::Approx(9.0));
    CHECK(sq.convex_combination());
    CHECK(sq.weight_plus() == doctest::Approx(1.0));
    CHECK(sq.weight_minus() == doctest::Approx(0.5));

    const EntropyPair ex = EntropyPair::exponential(2.0, 1.0, 0.0, 1.0);
    CHECK(ex.scalar_psi(0.5) == doctest::Approx(std::exp(1.0)));
    CHECK(ex.scalar_phi(0.5) == doctest::Approx(0.0).epsilon(1e-14));  // (v - 1/k) e^{kv}

    const EntropyPair ab = EntropyPair::abs_shifted(0.5, 1.0, 1.0, 1.0);
    CHECK(ab.scalar_psi(1.5) == doctest::Approx(1.0));
    // phi = sign(v - c)(v^2 - c^2)/2, negative below -|c|
    CHECK(ab.scalar_phi(2.0) == doctest::Approx((4.0 - 0.25) / 2.0));
    CHECK(ab.scalar_phi(-2.0) == doctest::Approx(-(4.0 - 0.25) / 2.0));

    // signed family at rho=1, u=0, alpha=1: f± = ±1
    const EntropyPair sg = EntropyPair::signed_exponential(1.0, 1.0);
    CHECK(!sg.convex_combination());
    CHECK(sg.eta(1.0, 0.0) == doctest::Approx(1.1752011936438014).epsilon(1e-13));
    CHECK(sg.entropy_flux(1.0, 0.0) == doctest::Approx(0.36787944117144233).epsilon(1e-13));

    CHECK_THROWS_AS(EntropyPair::square(-1.0, 0.0, 1.0), config_error);
    CHECK_THROWS_AS(EntropyPair::square(1.0, 0.0, -1.0), config_error);
}

TEST_CASE("convex entropies dissipate cell by cell") {
    const Grid g(-1.0, 1.0, 256);
    const CoupledState init = make_state(
        g, [](double x) { return x < 0.0 ? 1.2 : 0.4; },
        [](double x) { return x < 0.0 ? 0.3 : -0.2; });
    CoupledOptions opt;
    opt.t_end = 0.4;
    for (const EntropyPair& pair :
         {EntropyPair::square(1.0, 1.0, 1.0), EntropyPair::exponential(0.7, 0.4, 1.3, 1.0),
          EntropyPair::abs_shifted(0.2, 1.0, 0.5, 1.0)}) {
        const GridField res = entropy_residual(init, opt, pair);
        for (const double v : res.values) CHECK(v <= 1e-10);
    }
}

TEST_CASE("shock dissipation rate of the quadratic entropy is (jump)^3/12") {
    // steady unit jump of f+ at the origin: total dissipation rate 1/12
    const Grid g(-1.0, 1.0, 2048);
    CoupledOptions opt;
    opt.alpha = 1.0;
    opt.t_end = 0.5;
    const CoupledState init = make_state(
        g, [](double x) { return x < 0.0 ? 0.5 : 0.0; },
        [](double x) { return x < 0.0 ? 0.5 : 0.0; });
    const GridField res = entropy_residual(init, opt, EntropyPair::square(1.0, 0.0, 1.0));
    double total = 0.0;
    for (const double v : res.values) total += v * g.dx();
    CHECK(total == doctest::Approx(-1.0 / 12.0).epsilon(0.01));
}

TEST_CASE("gas-form solver agrees with the invariant solver on smooth data") {
    const Grid g(-1.0, 1.0, 512);
    const CoupledState init = make_state(
        g, [](double x) { return 0.4 + 0.1 * std::cos(oracle::kPi * x); },
        [](double x) { return 0.1 * std::sin(oracle::kPi * x); });
    CoupledOptions opt;
    opt.t_end = 0.2;
    opt.bc = Boundary::periodic;
    const CoupledResult a = evolve_coupled(init, opt);
    const CoupledResult b = evolve_gas(init, opt);
    CHECK(l1_diff(a.state.rho.values, b.state.rho.values, g.dx()) < 5e-3);
    CHECK(l1_diff(a.state.u.values, b.state.u.values, g.dx()) < 5e-3);
}

TEST_CASE("gas solver handles vacuum regions") {
    const Grid g(-1.0, 1.0, 128);
    const CoupledState init = make_state(
        g, [](double x) { return std::abs(x) < 0.3 ? 0.5 : 0.0; }, [](double) { return 0.0; });
    CoupledOptions opt;
    opt.t_end = 0.3;
    const CoupledResult res = evolve_gas(init, opt);
    CHECK(res.state.rho.all_finite());
    CHECK(res.state.u.all_finite());
    for (const double r : res.state.rho.values) CHECK(r >= -1e-14);
}

TEST_CASE("invariant transform round-trips") {
    const Grid g(-1.0, 1.0, 32);
    const CoupledState s = make_state(
        g, [](double x) { return 0.5 + 0.3 * x * x; }, [](double x) { return 0.2 * x; });
    const auto [fp, fm] = to_invariants(s, 2.0);
    const CoupledState back = from_invariants(g, fp, fm, 2.0);
    for (int j = 0; j < g.n_cells; ++j) {
        CHECK(back.rho.values[static_cast<size_t>(j)] ==
              doctest::Approx(s.rho.values[static_cast<size_t>(j)]).epsilon(1e-13));
        CHECK(back.u.values[static_cast<size_t>(j)] ==
              doctest::Approx(s.u.values[static_cast<size_t>(j)]).epsilon(1e-13));
    }
}

TEST_CASE("options are validated") {
    const Grid g(-1.0, 1.0, 32);
    const CoupledState init = make_state(
        g, [](double) { return 1.0; }, [](double) { return 0.0; });
    CoupledOptions opt;
    opt.cfl = 0.6;
    CHECK_THROWS_AS((void)evolve_coupled(init, opt), config_error);
    opt.cfl = 0.45;
    opt.alpha = -1.0;
    CHECK_THROWS_AS((void)evolve_coupled(init, opt), config_error);
    opt.alpha = 1.0;
    CoupledState neg = init;
    neg.rho.values[3] = -0.2;
    CHECK_THROWS_AS((void)evolve_coupled(neg, opt), config_error);
}

TEST_CASE("observer sees consistent interface data") {
    const Grid g(-1.0, 1.0, 64);
    const CoupledState init = make_state(
        g, [](double x) { return x < 0.0 ? 1.0 : 0.5; }, [](double) { return 0.1; });
    CoupledOptions opt;
    opt.t_end = 0.1;
    long calls = 0;
    double t_seen = 0.0;
    const CoupledResult res = evolve_coupled(init, opt, [&](const StepView& v) {
        ++calls;
        REQUIRE(v.iface_plus != nullptr);
        CHECK(v.iface_plus->size() == static_cast<size_t>(g.n_cells) + 1);
        CHECK(v.f_plus->size() == static_cast<size_t>(g.n_cells));
        CHECK(v.dt > 0.0);
        CHECK(v.t_new > t_seen);
        t_seen = v.t_new;
    });
    CHECK(calls == res.steps);
    CHECK(t_seen == doctest::Approx(res.t));
}
