#pragma once

#include <functional>
#include <vector>

#include "lab/grid.hpp"

namespace lab {

// Particle chains whose large-N limit is the Lagrangian flow-map equation
// X_tt = alpha X_xixi / X_xi^4. Positions must stay strictly increasing;
// momenta are p_j = v_j / N, so H = (N/2) sum p^2 + potential generates
// xdot = v and the printed forces.

enum class ChainModel {
    nearest_neighbor,  // force (alpha/3N^2) [ (x_{j+1}-x_j)^{-3} + (x_{j-1}-x_j)^{-3} ],
                       // missing-neighbor terms dropped at the ends
    all_pairs          // force (4 alpha / N^2 pi^2) sum_{k != j} (x_j - x_k)^{-3}
};

struct ChainState {
    std::vector<double> x;
    std::vector<double> v;
};

std::vector<double> chain_force(const std::vector<double>& x, ChainModel model, double alpha);

// Hamiltonian consistent with the forces above:
//   nearest_neighbor: (N/2) sum p^2 - (alpha/12N^3) sum_j sum_{k=j±1} (x_j-x_k)^{-2}
//   all_pairs:        (N/2) sum p^2 + (alpha/N^3 pi^2) sum_j sum_{k!=j} (x_j-x_k)^{-2}
double chain_hamiltonian(const ChainState& s, ChainModel model, double alpha);
double chain_momentum(const ChainState& s);  // sum p_j = (1/N) sum v_j

struct ChainOptions {
    ChainModel model = ChainModel::nearest_neighbor;
    double alpha = 1.0;
    double dt = 1e-3;
    long steps = 1000;
    int record_every = 1;
};

struct ChainRun {
    ChainState state;
    std::vector<double> times;
    std::vector<double> energy;
    std::vector<double> momentum;
};

// Velocity Verlet; throws numeric_error if particles reorder.
ChainRun run_chain(ChainState init, const ChainOptions& opt);

// Continuum force density the two models approach as N grows, evaluated from
// X_xi and X_xixi at a material point. The nearest-neighbor force tends to
// -alpha X_xixi / X_xi^4 (second order); the all-pairs force tends to
// +2 alpha X_xixi / X_xi^4 (first order, by the tail sum of d^{-3}).
double continuum_force_target(ChainModel model, double alpha, double x_xi, double x_xixi);

// Max over the interior window xi in [0.25, 0.75] of |discrete force at
// x_j = X((j+1/2)/N) - target|; drives the convergence-order fits.
double continuum_limit_residual(ChainModel model, double alpha, int n,
                                const std::function<double(double)>& X,
                                const std::function<double(double)>& X_xi,
                                const std::function<double(double)>& X_xixi);

// Flow-map discretization of X_tt = -(alpha/3) d_xi (X_xi^{-3}) on the unit
// material interval, nodes xi_j = (j+1/2)/M. Face values X_xi are one-sided
// differences; the update is conservative, so total momentum is exact.
struct LagrangianOptions {
    double alpha = 1.0;
    double dt = 1e-4;
    double t_end = 0.1;
    bool periodic = true;
    double period = 2.0;  // spatial period of X (X_{j+M} = X_j + period)
    bool store_frames = false;
};

struct LagrangianState {
    std::vector<double> X;
    std::vector<double> V;
};

struct LagrangianRun {
    LagrangianState state;
    std::vector<double> times;
    std::vector<double> energy;
    std::vector<LagrangianState> frames;  // every step, if store_frames
};

// Monotone rearrangement of a density: X0(xi_j) solves F(X0) = xi_j * mass,
// with F the cumulative integral of rho0; V0 samples u0 there.
LagrangianState flow_map_from_density(const GridField& rho0, const GridField& u0, int M);

LagrangianRun evolve_lagrangian(LagrangianState init, const LagrangianOptions& opt);

// Push the material measure forward: histogram of mass * dxi per particle
// interval onto out (periodic images folded in when periodic).
GridField density_from_flow(const LagrangianState& s, double mass, const Grid& out,
                            bool periodic, double period);

// Energy of the semi-discrete system: sum dxi [ V^2/2 + (alpha/6) X_xi^{-2} ],
// the invariant that the conservative update preserves up to O(dt^2).
double lagrangian_energy(const LagrangianState& s, double alpha, bool periodic, double period);

// Discrete action of a stored trajectory,
//   S = sum_n dt sum_j dxi [ (X^{n+1}-X^n)^2/(2 dt^2) - (U_n + U_{n+1})/2 ],
// whose stationarity equations are exactly the Verlet update; used to check
// that directional derivatives vanish along computed trajectories.
double discrete_action(const std::vector<LagrangianState>& frames, double dt, double alpha,
                       bool periodic, double period);

}  // namespace lab
