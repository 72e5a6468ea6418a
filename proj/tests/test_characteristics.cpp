#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "lab/characteristics.hpp"
#include "lab/oracles.hpp"
#include "lab/util.hpp"
#include "oracle_helpers.hpp"

using namespace lab;

namespace {

// the quartic bump (2/sqrt(pi)) x^2 exp(-x^2): unit mass, vanishing density
// and slope at the origin, initial velocity slope there exactly -2c/pi
GridField bump_field(int n = 2048, double half = 8.0) {
    const Grid g(-half, half, n);
    std::vector<double> v(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
        const double x = g.center(j);
        v[static_cast<size_t>(j)] = 2.0 / std::sqrt(oracle::kPi) * x * x * std::exp(-x * x);
    }
    return GridField(g, std::move(v), FieldKind::density);
}

GridField semicircle_field(double radius, int n, double half) {
    const Grid g(-half, half, n);
    const SemicircleLaw law(radius);
    std::vector<double> v(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) v[static_cast<size_t>(j)] = law.density(g.center(j));
    return GridField(g, std::move(v), FieldKind::density);
}

}  // namespace

TEST_CASE("cauchy datum evaluates in closed form") {
    const InitialData data = InitialData::cauchy_data(0.8, 1.3);
    const double c = data.velocity_scale;
    for (const cplx w : {cplx(0.4, 0.9), cplx(-2.0, 0.0), cplx(0.0, 0.0), cplx(5.0, 2.0)}) {
        const cplx expect = c * 1.3 / oracle::kPi / (w + cplx(0.0, 0.8));
        CHECK(std::abs(f0_eval(data, w) - expect) < 1e-14);
        const cplx dexpect = -c * 1.3 / oracle::kPi / std::pow(w + cplx(0.0, 0.8), 2);
        CHECK(std::abs(f0_derivative(data, w) - dexpect) < 1e-14);
    }
}

TEST_CASE("semicircle datum matches the reference transform") {
    const InitialData data = InitialData::semicircle_data(2.0);
    const double c = data.velocity_scale;
    for (const cplx w : {cplx(3.0, 0.0), cplx(0.3, 0.7), cplx(-1.1, 0.02)}) {
        const cplx s = stieltjes_semicircle(w, TraceSide::interior, 2.0);
        CHECK(std::abs(f0_eval(data, w) - c / oracle::kPi * s) < 1e-13);
    }
    // on the cut the value is the upper-trace limit: Im f0 = -c rho
    const SemicircleLaw law(2.0);
    for (const double x : {0.0, 0.4, -1.5}) {
        const cplx f = f0_eval(data, cplx(x, 0.0));
        CHECK(f.imag() == doctest::Approx(-c * law.density(x)).epsilon(1e-12));
        const cplx above = f0_eval(data, cplx(x, 1e-10));
        CHECK(std::abs(f - above) < 1e-8);
    }
    // derivative agrees with a centered difference in the interior
    const cplx w(0.5, 0.6);
    const double h = 1e-6;
    const cplx fd = (f0_eval(data, w + h) - f0_eval(data, w - h)) / (2.0 * h);
    CHECK(std::abs(f0_derivative(data, w) - fd) < 1e-7);
}

TEST_CASE("sampled semicircle reproduces the closed-form datum") {
    const InitialData grid = InitialData::grid_data(semicircle_field(2.0, 4000, 2.5));
    const InitialData exact = InitialData::semicircle_data(2.0);

    for (const cplx w : {cplx(0.3, 0.8), cplx(-0.6, 0.05), cplx(0.1, 1e-8), cplx(0.4, 0.0),
                         cplx(2.2, 0.0)}) {
        CHECK(std::abs(f0_eval(grid, w) - f0_eval(exact, w)) < 2e-4);
    }
    for (const cplx w : {cplx(0.3, 0.8), cplx(0.4, 0.0)}) {
        CHECK(std::abs(f0_derivative(grid, w) - f0_derivative(exact, w)) < 2e-3);
    }
    // trace identities of the subtracted sums: Im parts are the local density
    const SemicircleLaw law(2.0);
    const cplx f = f0_eval(grid, cplx(0.4, 0.0));
    CHECK(f.imag() == doctest::Approx(-oracle::kPi * law.density(0.4)).epsilon(1e-8));
}

TEST_CASE("forward and backward characteristics are inverse maps") {
    const InitialData data = InitialData::semicircle_data(2.0);
    for (const double gamma : {0.0, 0.7}) {
        const CharacteristicSolve cs{gamma, 0.8, 1e-12, 60};
        // points high enough that the forward image stays above the axis
        // (Im Z = a Im w + b Im f0 and Im f0 < 0 can pull low points under)
        for (const cplx w : {cplx(0.3, 1.5), cplx(-1.2, 1.2), cplx(2.5, 1.5)}) {
            const cplx z = forward_characteristic(data, cs, UpperHalfPoint(w.real(), w.imag()));
            const cplx back = backward_characteristic(data, cs, z);
            CHECK(std::abs(back - w) < 1e-9);
        }
    }
    const CharacteristicSolve cs{0.0, 0.5, 1e-12, 60};
    CHECK_THROWS_AS((void)forward_characteristic(data, cs, UpperHalfPoint(0.0, -0.1)),
                    config_error);
}

TEST_CASE("flow map at vanishing damping is the undamped limit") {
    const InitialData data = InitialData::cauchy_data(1.0);
    const CharacteristicSolve flat{0.0, 0.9, 1e-12, 60};
    const CharacteristicSolve tiny{1e-9, 0.9, 1e-12, 60};
    const cplx w(0.4, 0.7);
    CHECK(std::abs(flow_map(data, flat, w) - flow_map(data, tiny, w)) < 1e-7);
    CHECK(std::abs(flow_map(data, flat, w) - (w + 0.9 * f0_eval(data, w))) < 1e-14);
}

TEST_CASE("cauchy trace agrees with the quadratic-formula reference") {
    const InitialData data = InitialData::cauchy_data(1.0);
    oracle::CauchyTraceOracle ref;

    for (const double gamma : {0.0, 1.0}) {
        ref.gamma = gamma;
        for (const double t : {0.5, 0.7}) {
            const CharacteristicSolve cs{gamma, t, 1e-12, 60};
            const TraceResult tr = trace_density(data, cs, Grid(-6.0, 6.0, 256));
            double worst = 0.0;
            for (int j = 0; j < 256; ++j) {
                double r0 = 0.0, u0 = 0.0;
                ref.trace(tr.rho.grid.center(j), t, r0, u0);
                worst = std::max(worst, std::abs(tr.rho.values[static_cast<size_t>(j)] - r0));
                worst = std::max(worst, std::abs(tr.u.values[static_cast<size_t>(j)] - u0));
            }
            CHECK(worst < 1e-9);
        }
    }
}

TEST_CASE("cauchy trace pinned center values") {
    // rho(0,t) = (sqrt(1+4t) - 1)/(2 pi t); odd cell count puts a sample at 0
    const InitialData data = InitialData::cauchy_data(1.0);
    const Grid g(-6.0, 6.0, 511);
    const struct {
        double t, rho;
    } table[] = {{0.5, 0.23301900923800138},
                 {1.0, 0.19672632861669319},
                 {oracle::kPi, 0.13593530844695215}};
    for (const auto& row : table) {
        const CharacteristicSolve cs{0.0, row.t, 1e-12, 60};
        const TraceResult tr = trace_density(data, cs, g);
        CHECK(tr.rho.values[255] == doctest::Approx(row.rho).epsilon(1e-12));
        CHECK(tr.root_im[255] > 0.0);
    }
}

TEST_CASE("trace conserves mass and empties correctly") {
    const InitialData data = InitialData::semicircle_data(2.0);
    const CharacteristicSolve cs{0.0, 0.5, 1e-12, 60};
    const Grid g(-4.0, 4.0, 800);
    const TraceResult tr = trace_density(data, cs, g);
    double mass = 0.0;
    for (const double r : tr.rho.values) mass += r * g.dx();
    CHECK(mass == doctest::Approx(1.0).epsilon(2e-3));
    // far outside the support the density vanishes and the root stays real
    CHECK(tr.rho.values[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(std::abs(tr.root_im[0]) < 1e-9);
}

TEST_CASE("blow-up estimate on the sampled bump") {
    const InitialData data = InitialData::grid_data(bump_field(), 1.0);
    std::vector<double> probes{0.0};
    for (int k = 0; k < 17; ++k) {
        const double p = std::pow(10.0, -4.0 + 4.0 * k / 16.0);
        probes.push_back(p);
        probes.push_back(-p);
    }
    const BlowupEstimate est = blowup_estimate(data, probes);
    // initial slope at the origin is exactly -2/pi, so t* = pi/2
    CHECK(std::abs(est.slope0 - (-2.0 / oracle::kPi)) < 1e-5);
    CHECK(std::abs(est.t_star - oracle::kPi / 2.0) / (oracle::kPi / 2.0) < 1e-4);
    CHECK(std::abs(est.x0) < 2.0 * 16.0 / 2048);
}

TEST_CASE("blow-up estimate for the Cauchy profile is 8 pi eps^2") {
    // slope of u0 = H rho0 has minimum -1/(8 pi eps^2) at x = +-sqrt(3) eps
    const InitialData data = InitialData::cauchy_data(1.0, 1.0, 1.0);
    const double s3 = std::sqrt(3.0);
    const BlowupEstimate est = blowup_estimate(data, {-s3, 0.0, s3});
    CHECK(est.t_star == doctest::Approx(8.0 * oracle::kPi).epsilon(1e-12));
    CHECK(std::abs(est.x0) == doctest::Approx(s3).epsilon(1e-12));
    CHECK(est.slope0 == doctest::Approx(-1.0 / (8.0 * oracle::kPi)).epsilon(1e-12));

    // at the origin the slope is positive: no steepening visible there
    CHECK_THROWS_AS((void)blowup_estimate(data, {0.0}), numeric_error);
}

TEST_CASE("steepening monitor crosses the threshold one reciprocal early") {
    const InitialData data = InitialData::grid_data(bump_field(), 1.0);
    const std::vector<double> probes{0.0, 0.01, -0.01, 0.1, -0.1};
    const BlowupEstimate est = blowup_estimate(data, probes);
    // slope along the critical characteristic is s0/(1 + s0 t), so the
    // crossing of -theta sits exactly 1/theta before the catastrophe
    const double t3 = steepening_time(data, 0.0, 1e3, probes, 4.0);
    CHECK(std::abs(t3 - (est.t_star - 1e-3)) < 1e-5);
    const double t2 = steepening_time(data, 0.0, 1e2, probes, 4.0);
    CHECK(std::abs(t2 - (est.t_star - 1e-2)) < 1e-5);
    // a horizon short of the crossing reports the horizon itself
    CHECK(steepening_time(data, 0.0, 1e3, probes, 1.0) == doctest::Approx(1.0));
}

TEST_CASE("initial data validation") {
    CHECK_THROWS_AS(InitialData::cauchy_data(-1.0), config_error);
    CHECK_THROWS_AS(InitialData::cauchy_data(1.0, -2.0), config_error);
    CHECK_THROWS_AS(InitialData::semicircle_data(0.0), config_error);
    GridField neg(Grid(-1.0, 1.0, 16), std::vector<double>(16, -0.5), FieldKind::density);
    CHECK_THROWS_AS(InitialData::grid_data(std::move(neg)), config_error);
    const InitialData data = InitialData::cauchy_data(1.0);
    CHECK_THROWS_AS((void)f0_eval(data, cplx(0.0, -0.5)), config_error);
}
