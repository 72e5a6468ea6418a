#include "lab/hamiltonian.hpp"

#include <cmath>
#include <numbers>

#include "lab/util.hpp"

namespace lab {

namespace {

constexpr double kPi = std::numbers::pi;

void check_even(size_t n) {
    if (n < 4 || n % 2 != 0)
        throw config_error("spectral derivative needs an even number of points (>= 4)");
}

std::vector<double> mul(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> out(a.size());
    for (size_t j = 0; j < a.size(); ++j) out[j] = a[j] * b[j];
    return out;
}

std::vector<double> scale(std::vector<double> a, double s) {
    for (double& v : a) v *= s;
    return a;
}

std::vector<double> add(std::vector<double> a, const std::vector<double>& b) {
    for (size_t j = 0; j < a.size(); ++j) a[j] += b[j];
    return a;
}

// v -> A * d(B * v); empty A or B stands for the constant 1
std::vector<double> sandwich(const std::vector<double>& A, const std::vector<double>& B,
                             const std::vector<double>& v, double period) {
    std::vector<double> inner = B.empty() ? v : mul(B, v);
    inner = spectral_derivative(inner, period);
    return A.empty() ? inner : mul(A, inner);
}

const std::vector<double> kOne{};  // sentinel for the identity weight

}  // namespace

std::vector<double> spectral_derivative(const std::vector<double>& f, double period) {
    const size_t n = f.size();
    check_even(n);
    if (!(period > 0.0)) throw config_error("period must be positive");
    const double s = 2.0 * kPi / period;
    std::vector<double> out(n, 0.0);
    // D_jk = (-1)^{j-k}/2 * cot(pi (j-k)/n); antisymmetric by construction
    std::vector<double> row(n, 0.0);
    for (size_t d = 1; d < n; ++d) {
        const double sign = (d % 2 == 0) ? 1.0 : -1.0;
        row[d] = 0.5 * sign / std::tan(kPi * static_cast<double>(d) / static_cast<double>(n));
    }
    for (size_t j = 0; j < n; ++j) {
        double acc = 0.0;
        for (size_t k = 0; k < n; ++k) {
            if (k == j) continue;
            const size_t d = (j >= k) ? j - k : n - (k - j);
            acc += row[d] * f[k];
        }
        out[j] = s * acc;
    }
    return out;
}

FieldPair apply_J(const FieldPair& grad, double alpha, double period) {
    if (!(alpha > 0.0)) throw config_error("alpha must be positive");
    FieldPair out;
    out.a = scale(spectral_derivative(grad.a, period), -1.0 / alpha);
    out.b = scale(spectral_derivative(grad.b, period), -1.0);
    return out;
}

FieldPair apply_K(const FieldPair& grad, double period) {
    FieldPair out;
    out.a = scale(spectral_derivative(grad.b, period), -1.0);
    out.b = scale(spectral_derivative(grad.a, period), -1.0);
    return out;
}

FieldPair apply_J_tilde(const FieldPair& grad, const std::vector<double>& rho,
                        const std::vector<double>& u, double alpha, double period) {
    if (!(alpha > 0.0)) throw config_error("alpha must be positive");
    const double ia = 1.0 / alpha;
    FieldPair out;
    out.a = add(scale(sandwich(kOne, kOne, grad.a, period), -ia),
                scale(sandwich(kOne, u, grad.b, period), -ia));
    out.b = add(add(scale(sandwich(u, kOne, grad.a, period), -ia),
                    scale(sandwich(u, u, grad.b, period), -ia)),
                scale(sandwich(rho, rho, grad.b, period), -1.0));
    return out;
}

FieldPair apply_K_tilde(const FieldPair& grad, const std::vector<double>& rho,
                        const std::vector<double>& u, double period) {
    FieldPair out;
    out.a = scale(sandwich(kOne, rho, grad.b, period), -1.0);
    out.b = add(add(scale(sandwich(rho, kOne, grad.a, period), -1.0),
                    scale(sandwich(u, rho, grad.b, period), -1.0)),
                scale(sandwich(rho, u, grad.b, period), -1.0));
    return out;
}

FieldPair apply_P1(const FieldPair& grad, const std::vector<double>& eta,
                   const std::vector<double>& V, double alpha, double period) {
    if (!(alpha > 0.0)) throw config_error("alpha must be positive");
    const double ia = 1.0 / alpha;
    const std::vector<double> etaV = mul(eta, V);
    FieldPair out;
    out.a = add(add(scale(sandwich(eta, eta, grad.a, period), -0.75 * ia),
                    scale(sandwich(eta, V, grad.b, period), -0.25 * ia)),
                add(scale(sandwich(V, eta, grad.b, period), 1.5 * ia),
                    scale(sandwich(kOne, etaV, grad.b, period), -ia)));
    out.b = add(add(scale(sandwich(V, eta, grad.a, period), -0.25 * ia),
                    scale(sandwich(eta, V, grad.a, period), 1.5 * ia)),
                add(scale(sandwich(etaV, kOne, grad.a, period), -ia),
                    add(scale(sandwich(V, V, grad.b, period), 0.25 * ia),
                        scale(sandwich(eta, eta, grad.b, period), -1.0))));
    return out;
}

FieldPair apply_P2(const FieldPair& grad, const std::vector<double>& eta, double period) {
    const std::vector<double> eta2 = mul(eta, eta);
    FieldPair out;
    out.a = scale(sandwich(eta2, kOne, grad.b, period), -1.0);
    out.b = scale(sandwich(kOne, eta2, grad.a, period), -1.0);
    return out;
}

double H1_velocity(const std::vector<double>& rho, const std::vector<double>& u, double alpha,
                   double dx) {
    double s = 0.0;
    for (size_t j = 0; j < rho.size(); ++j)
        s += u[j] * u[j] * u[j] / 6.0 + 0.5 * alpha * rho[j] * rho[j] * u[j];
    return s * dx;
}

double H2_velocity(const std::vector<double>& rho, const std::vector<double>& u, double alpha,
                   double dx) {
    double s = 0.0;
    for (size_t j = 0; j < rho.size(); ++j)
        s += 0.5 * rho[j] * u[j] * u[j] + alpha * rho[j] * rho[j] * rho[j] / 6.0;
    return s * dx;
}

double H1_momentum(const std::vector<double>& rho, const std::vector<double>& m, double alpha,
                   double dx) {
    double s = 0.0;
    for (size_t j = 0; j < rho.size(); ++j) {
        if (rho[j] <= 0.0) throw numeric_error("momentum chart needs rho > 0");
        const double u = m[j] / rho[j];
        s += u * u * u / 6.0 + 0.5 * alpha * rho[j] * rho[j] * u;
    }
    return s * dx;
}

double H2_momentum(const std::vector<double>& rho, const std::vector<double>& m, double alpha,
                   double dx) {
    double s = 0.0;
    for (size_t j = 0; j < rho.size(); ++j) {
        if (rho[j] <= 0.0) throw numeric_error("momentum chart needs rho > 0");
        s += 0.5 * m[j] * m[j] / rho[j] + alpha * rho[j] * rho[j] * rho[j] / 6.0;
    }
    return s * dx;
}

double H1_lagrangian(const std::vector<double>& eta, const std::vector<double>& V, double alpha,
                     double dx) {
    double s = 0.0;
    for (size_t j = 0; j < eta.size(); ++j) {
        if (eta[j] <= 0.0) throw numeric_error("lagrangian chart needs eta > 0");
        s += V[j] * V[j] * V[j] / (6.0 * eta[j]) + 0.5 * alpha * eta[j] * V[j];
    }
    return s * dx;
}

double H2_lagrangian(const std::vector<double>& eta, const std::vector<double>& V, double alpha,
                     double dx) {
    double s = 0.0;
    for (size_t j = 0; j < eta.size(); ++j)
        s += 0.5 * V[j] * V[j] + alpha * eta[j] * eta[j] / 6.0;
    return s * dx;
}

FieldPair grad_H1_velocity(const std::vector<double>& rho, const std::vector<double>& u,
                           double alpha) {
    FieldPair g;
    g.a.resize(rho.size());
    g.b.resize(rho.size());
    for (size_t j = 0; j < rho.size(); ++j) {
        g.a[j] = alpha * rho[j] * u[j];
        g.b[j] = 0.5 * u[j] * u[j] + 0.5 * alpha * rho[j] * rho[j];
    }
    return g;
}

FieldPair grad_H2_velocity(const std::vector<double>& rho, const std::vector<double>& u,
                           double alpha) {
    FieldPair g;
    g.a.resize(rho.size());
    g.b.resize(rho.size());
    for (size_t j = 0; j < rho.size(); ++j) {
        g.a[j] = 0.5 * u[j] * u[j] + 0.5 * alpha * rho[j] * rho[j];
        g.b[j] = rho[j] * u[j];
    }
    return g;
}

FieldPair grad_H1_momentum(const std::vector<double>& rho, const std::vector<double>& m,
                           double alpha) {
    FieldPair g;
    g.a.resize(rho.size());
    g.b.resize(rho.size());
    for (size_t j = 0; j < rho.size(); ++j) {
        if (rho[j] <= 0.0) throw numeric_error("momentum chart needs rho > 0");
        const double u = m[j] / rho[j];
        g.a[j] = 0.5 * alpha * rho[j] * u - 0.5 * u * u * u / rho[j];
        g.b[j] = 0.5 * u * u / rho[j] + 0.5 * alpha * rho[j];
    }
    return g;
}

FieldPair grad_H2_momentum(const std::vector<double>& rho, const std::vector<double>& m,
                           double alpha) {
    FieldPair g;
    g.a.resize(rho.size());
    g.b.resize(rho.size());
    for (size_t j = 0; j < rho.size(); ++j) {
        if (rho[j] <= 0.0) throw numeric_error("momentum chart needs rho > 0");
        const double u = m[j] / rho[j];
        g.a[j] = -0.5 * u * u + 0.5 * alpha * rho[j] * rho[j];
        g.b[j] = u;
    }
    return g;
}

FieldPair grad_H1_lagrangian(const std::vector<double>& eta, const std::vector<double>& V,
                             double alpha) {
    FieldPair g;
    g.a.resize(eta.size());
    g.b.resize(eta.size());
    for (size_t j = 0; j < eta.size(); ++j) {
        if (eta[j] <= 0.0) throw numeric_error("lagrangian chart needs eta > 0");
        g.a[j] = -V[j] * V[j] * V[j] / (6.0 * eta[j] * eta[j]) + 0.5 * alpha * V[j];
        g.b[j] = 0.5 * V[j] * V[j] / eta[j] + 0.5 * alpha * eta[j];
    }
    return g;
}

FieldPair grad_H2_lagrangian(const std::vector<double>& eta, const std::vector<double>& V,
                             double alpha) {
    FieldPair g;
    g.a.resize(eta.size());
    g.b.resize(eta.size());
    for (size_t j = 0; j < eta.size(); ++j) {
        g.a[j] = alpha * eta[j] / 3.0;
        g.b[j] = V[j];
    }
    return g;
}

double kinetic_indicator(double v, double a) {
    if (a >= 0.0) return (v > 0.0 && v < a) ? 1.0 : 0.0;
    return (v > a && v < 0.0) ? -1.0 : 0.0;
}

double kinetic_moment_exact(double a, int k) {
    if (k < 0) throw config_error("moment order must be nonnegative");
    return std::pow(a, k + 1) / (k + 1);
}

double coupled_kinetic_density(double v, double f_plus, double f_minus, double alpha) {
    if (!(alpha > 0.0)) throw config_error("alpha must be positive");
    return (kinetic_indicator(v, f_plus) - kinetic_indicator(v, f_minus)) /
           (2.0 * std::sqrt(alpha));
}

double coupled_kinetic_moment(double f_plus, double f_minus, int k, double alpha) {
    if (!(alpha > 0.0)) throw config_error("alpha must be positive");
    return (kinetic_moment_exact(f_plus, k) - kinetic_moment_exact(f_minus, k)) /
           (2.0 * std::sqrt(alpha));
}

double pair_inner(const FieldPair& x, const FieldPair& y, double dx) {
    if (x.a.size() != y.a.size() || x.b.size() != y.b.size())
        throw config_error("inner product needs equal sizes");
    double s = 0.0;
    for (size_t j = 0; j < x.a.size(); ++j) s += x.a[j] * y.a[j] + x.b[j] * y.b[j];
    return s * dx;
}

}  // namespace lab
