#pragma once

#include <functional>
#include <vector>

#include "lab/grid.hpp"

namespace lab {

// Coupled first-order system
//   rho_t + (rho u)_x = 0,  u_t + (u^2/2 + alpha rho^2/2)_x = 0,
// solved through its Riemann invariants f± = u ± sqrt(alpha) rho, each of
// which satisfies an independent Burgers equation. One Godunov step is
// monotone for CFL <= 1/2, so f+ >= f- (i.e. rho >= 0) propagates.

enum class Boundary { outflow, periodic };

struct CoupledState {
    GridField rho;
    GridField u;
};

struct CoupledOptions {
    double alpha = 1.0;
    double cfl = 0.45;       // must stay below 1/2 (cell entropy argument)
    Boundary bc = Boundary::outflow;
    double t_end = 1.0;
    long max_steps = 200000;
};

// Exact Riemann interface state for Burgers flux v^2/2 (shock if fl >= fr,
// else rarefaction fan sampled at the interface).
double riemann_interface_state(double fl, double fr);
double godunov_flux(double fl, double fr);

// Per-step observation hook: interface states for both invariant families
// (size n+1), the time step taken, and the invariant fields after the step.
struct StepView {
    double t_new = 0.0;
    double dt = 0.0;
    const std::vector<double>* iface_plus = nullptr;
    const std::vector<double>* iface_minus = nullptr;
    const std::vector<double>* f_plus = nullptr;
    const std::vector<double>* f_minus = nullptr;
};
using StepObserver = std::function<void(const StepView&)>;

struct CoupledResult {
    CoupledState state;
    long steps = 0;
    double t = 0.0;
};

CoupledResult evolve_coupled(const CoupledState& init, const CoupledOptions& opt,
                             const StepObserver& observe = nullptr);

// Same system in conservative gas variables (rho, m = rho u) with pressure
// p = alpha rho^3 / 3, integrated by an HLL scheme with Davis wave speeds
// u ± sqrt(alpha) rho. Shocks of this form travel at different speeds than
// those of the invariant-wise solver; smooth solutions agree.
CoupledResult evolve_gas(const CoupledState& init, const CoupledOptions& opt);

// Entropy pairs eta = wp psi(f+) + wm psi(f-) with flux q built from phi,
// phi' = v psi'. Convex combinations (wp, wm >= 0) are dissipated cell by
// cell by the invariant-wise solver; the signed exponential family is kept
// for identity checks.
class EntropyPair {
  public:
    enum class Kind { square, exponential, abs_shifted };

    // psi(v) = v^2/2, exp(k v), |v - c| respectively; k1, k2 >= 0.
    static EntropyPair square(double k1, double k2, double alpha);
    static EntropyPair exponential(double k, double k1, double k2, double alpha);
    static EntropyPair abs_shifted(double c, double k1, double k2, double alpha);
    // eta = (psi(f+) - psi(f-)) / (2 sqrt(alpha) k) with psi = exp(k v);
    // signed weights, so no dissipation statement is attached.
    static EntropyPair signed_exponential(double k, double alpha);

    double scalar_psi(double v) const;
    double scalar_phi(double v) const;
    double eta(double rho, double u) const;
    double entropy_flux(double rho, double u) const;

    double weight_plus() const { return wp_; }
    double weight_minus() const { return wm_; }
    double alpha() const { return alpha_; }
    bool convex_combination() const { return wp_ >= 0.0 && wm_ >= 0.0; }

  private:
    EntropyPair(Kind k, double param, double wp, double wm, double alpha);
    Kind kind_;
    double param_;
    double wp_, wm_;
    double alpha_;
};

// Replay the coupled evolution and return the per-cell entropy balance
//   [ eta_i(T) - eta_i(0) + (1/dx) sum_n dt (Q_{i+1/2} - Q_{i-1/2}) ] / T
// with Q the entropy flux of the Godunov interface states. Nonpositive (up
// to roundoff) for convex combinations; its integral measures the total
// dissipation rate, concentrated in shocks.
GridField entropy_residual(const CoupledState& init, const CoupledOptions& opt,
                           const EntropyPair& pair);

// Riemann-invariant transforms.
std::pair<std::vector<double>, std::vector<double>> to_invariants(const CoupledState& s,
                                                                  double alpha);
CoupledState from_invariants(const Grid& g, const std::vector<double>& fp,
                             const std::vector<double>& fm, double alpha);

}  // namespace lab
