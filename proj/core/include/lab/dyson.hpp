#pragma once

#include <vector>

#include "lab/oracles.hpp"
#include "lab/util.hpp"

namespace lab {

// Interacting particle system
//   d lambda_j = [ (1/N) sum_{k != j} 1/(lambda_j - lambda_k) - gamma lambda_j ] dt
//                + sqrt(1/N) dB_j,
// the finite-N version of the log-gas flow. The drift is the negative
// gradient of
//   Phi = (gamma/2) sum lambda^2 - (1/2N) sum_{j != k} log|lambda_j - lambda_k|,
// so Phi decreases along the noiseless flow.

std::vector<double> dyson_drift(const std::vector<double>& lambda, double gamma);
double log_potential(const std::vector<double>& lambda, double gamma);
double second_moment(const std::vector<double>& lambda);

struct DysonOptions {
    double gamma = 0.0;
    double t_end = 1.0;
    double tol = 1e-7;       // local error target for the adaptive stepper
    double dt_init = 1e-4;
    double dt_max = 5e-2;
    double gap_floor_rel = 1e-10;  // times the particle span; collision guard
};

struct DysonTrajectory {
    std::vector<double> times;                   // every accepted step
    std::vector<double> potential;               // Phi at those times
    std::vector<double> m2;                      // second moment at those times
    std::vector<double> snapshot_times;
    std::vector<std::vector<double>> snapshots;  // states at snapshot_times
};

// Noiseless flow, adaptive Heun stepper: a step is rejected when the
// embedded error estimate exceeds tol or when particles reorder. Snapshot
// times are hit exactly. Initial state must be strictly increasing.
DysonTrajectory evolve_deterministic(std::vector<double> lambda0, const DysonOptions& opt,
                                     int n_snapshots);

// Euler-Maruyama with fixed dt and noise sqrt(dt/N) per particle; states are
// re-sorted after each step (particles are exchangeable, so this is only a
// relabeling).
DysonTrajectory evolve_stochastic(std::vector<double> lambda0, const DysonOptions& opt,
                                  double dt, Rng& rng, int n_snapshots);

// Exact order-1 and order-2 Wasserstein distances between two equal-size
// particle sets (sorted coupling is optimal in one dimension).
double w1_particles(std::vector<double> a, std::vector<double> b);
double w2_particles(std::vector<double> a, std::vector<double> b);

// Exact W1 between the empirical measure of the particles and a semicircle
// law: piecewise integral of |F_N - F| using the closed-form antiderivative
// of F, split at the quantile crossings.
double w1_to_semicircle(std::vector<double> lambda, const SemicircleLaw& law);

// Second-order companion system
//   dd/dt2 lambda_j = -(2/N^2) sum_{k != j} (lambda_j - lambda_k)^{-3},
// integrated by velocity Verlet. Reordering aborts the run: crossings mean
// the time step no longer resolves the pair repulsion.
struct PoleOptions {
    double t_start = 0.0;
    double t_end = 1.0;
    double dt = 1e-4;
};

struct PoleTrajectory {
    std::vector<double> times;
    std::vector<std::vector<double>> positions;
    std::vector<std::vector<double>> velocities;
};

std::vector<double> pole_acceleration(const std::vector<double>& x);
PoleTrajectory evolve_poles(std::vector<double> x0, std::vector<double> v0,
                            const PoleOptions& opt, int n_snapshots);

// Initial condition for growing a macroscopic profile out of a point: place
// particles on the quantiles of the spreading law at small time eps (radius
// 2 sqrt(eps)) with the self-similar outward velocity x/(2 eps).
struct SeededPoles {
    std::vector<double> x;
    std::vector<double> v;
};
SeededPoles seed_poles_from_point(int n, double eps);

}  // namespace lab
