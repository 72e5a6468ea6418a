#pragma once

#include <vector>

namespace lab {

// Discrete Hamiltonian structure of the coupled system on a periodic domain.
// All derivatives are spectral: the differentiation matrix is exactly
// antisymmetric, so the operator identities below hold to roundoff for
// analytic fields once the grid resolves them.

// Periodic spectral derivative on n (even) equispaced points spanning
// `period`; entries D_jk = (-1)^{j-k}/2 cot(pi (j-k)/n), scaled by 2 pi/L.
std::vector<double> spectral_derivative(const std::vector<double>& f, double period);

struct FieldPair {
    std::vector<double> a;
    std::vector<double> b;
};

// First-order operators in the (rho, u) chart:
//   J = diag(-(1/alpha) d_x, -d_x),  K = antidiag(-d_x, -d_x).
FieldPair apply_J(const FieldPair& grad, double alpha, double period);
FieldPair apply_K(const FieldPair& grad, double period);

// Operators in the conservative (rho, m) chart; "A d B" acts as
// v -> A * d_x(B * v):
//   Jt = [[-(1/a) d,        -(1/a) d u      ],
//         [-(1/a) u d,      -(1/a) u d u - rho d rho]]
//   Kt = [[0,               -d rho          ],
//         [-rho d,          -u d rho - rho d u]]
FieldPair apply_J_tilde(const FieldPair& grad, const std::vector<double>& rho,
                        const std::vector<double>& u, double alpha, double period);
FieldPair apply_K_tilde(const FieldPair& grad, const std::vector<double>& rho,
                        const std::vector<double>& u, double period);

// Operators in the Lagrangian (eta, V) chart (xi-derivatives):
//   P2 = [[0, -eta^2 d], [-d eta^2, 0]]
//   P1 = [[-(3/4a) eta d eta,                -(1/4a) eta d V + (3/2a) V d eta - (1/a) d eta V],
//         [-(1/4a) V d eta + (3/2a) eta d V - (1/a) eta V d,   (1/4a) V d V - eta d eta]]
FieldPair apply_P1(const FieldPair& grad, const std::vector<double>& eta,
                   const std::vector<double>& V, double alpha, double period);
FieldPair apply_P2(const FieldPair& grad, const std::vector<double>& eta, double period);

// Conserved functionals and their variational derivatives in each chart
// (dx the cell width of the uniform periodic grid).
//   velocity chart:   H1 = int u^3/6 + a rho^2 u / 2,  H2 = int rho u^2/2 + a rho^3/6
//   momentum chart:   same functionals with u = m/rho
//   lagrangian chart: H1 = int V^3/(6 eta) + a eta V/2, H2 = int V^2/2 + a eta^2/6
double H1_velocity(const std::vector<double>& rho, const std::vector<double>& u, double alpha,
                   double dx);
double H2_velocity(const std::vector<double>& rho, const std::vector<double>& u, double alpha,
                   double dx);
double H1_momentum(const std::vector<double>& rho, const std::vector<double>& m, double alpha,
                   double dx);
double H2_momentum(const std::vector<double>& rho, const std::vector<double>& m, double alpha,
                   double dx);
double H1_lagrangian(const std::vector<double>& eta, const std::vector<double>& V, double alpha,
                     double dx);
double H2_lagrangian(const std::vector<double>& eta, const std::vector<double>& V, double alpha,
                     double dx);

FieldPair grad_H1_velocity(const std::vector<double>& rho, const std::vector<double>& u,
                           double alpha);
FieldPair grad_H2_velocity(const std::vector<double>& rho, const std::vector<double>& u,
                           double alpha);
FieldPair grad_H1_momentum(const std::vector<double>& rho, const std::vector<double>& m,
                           double alpha);
FieldPair grad_H2_momentum(const std::vector<double>& rho, const std::vector<double>& m,
                           double alpha);
FieldPair grad_H1_lagrangian(const std::vector<double>& eta, const std::vector<double>& V,
                             double alpha);
FieldPair grad_H2_lagrangian(const std::vector<double>& eta, const std::vector<double>& V,
                             double alpha);

// Kinetic (velocity-space) representation. chi_a(v) is the signed indicator
// with int v^k chi_a dv = a^{k+1}/(k+1); the coupled profile stacks the two
// invariants: (chi_{f+}(v) - chi_{f-}(v)) / (2 sqrt(alpha)).
double kinetic_indicator(double v, double a);
double kinetic_moment_exact(double a, int k);
double coupled_kinetic_density(double v, double f_plus, double f_minus, double alpha);
double coupled_kinetic_moment(double f_plus, double f_minus, int k, double alpha);

// Discrete inner product sum(a.a*b.a + a.b*b.b) * dx; the operator
// antisymmetry tests pair it with the apply_* functions.
double pair_inner(const FieldPair& x, const FieldPair& y, double dx);

}  // namespace lab
