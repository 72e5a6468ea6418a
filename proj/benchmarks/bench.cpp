#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "lab/analysis.hpp"
#include "lab/coupled.hpp"
#include "lab/dyson.hpp"
#include "lab/grid.hpp"
#include "lab/lagrangian.hpp"

namespace {

lab::GridField gaussian_field(int n) {
    lab::Grid g(-8.0, 8.0, n);
    std::vector<double> f(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
        const double x = g.center(j);
        f[static_cast<size_t>(j)] = std::exp(-x * x);
    }
    return lab::GridField(g, std::move(f), lab::FieldKind::density);
}

void bm_hilbert(benchmark::State& state) {
    const lab::GridField f = gaussian_field(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(lab::hilbert_transform(f));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(bm_hilbert)->Range(256, 8192)->Complexity();

void bm_dyson_drift(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::vector<double> lam(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) lam[static_cast<size_t>(j)] = -2.0 + 4.0 * (j + 0.5) / n;
    for (auto _ : state) benchmark::DoNotOptimize(lab::dyson_drift(lam, 1.0));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(bm_dyson_drift)->Range(64, 2048)->Complexity();

void bm_chain_force_all_pairs(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::vector<double> x(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) x[static_cast<size_t>(j)] = -2.0 + 4.0 * (j + 0.5) / n;
    for (auto _ : state)
        benchmark::DoNotOptimize(lab::chain_force(x, lab::ChainModel::all_pairs, 1.0));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(bm_chain_force_all_pairs)->Range(64, 2048)->Complexity();

void bm_godunov_step(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    lab::Grid g(-2.0, 2.0, n);
    std::vector<double> rho(static_cast<size_t>(n)), u(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
        rho[static_cast<size_t>(j)] = g.center(j) < 0.0 ? 1.5 : 0.5;
        u[static_cast<size_t>(j)] = g.center(j) < 0.0 ? 0.2 : -0.1;
    }
    lab::CoupledState init;
    init.rho = lab::GridField(g, rho, lab::FieldKind::density);
    init.u = lab::GridField(g, u, lab::FieldKind::velocity);
    lab::CoupledOptions opt;
    opt.t_end = 1e-9;  // one clipped step
    for (auto _ : state) benchmark::DoNotOptimize(lab::evolve_coupled(init, opt));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(bm_godunov_step)->Range(512, 8192)->Complexity();

}  // namespace

BENCHMARK_MAIN();
