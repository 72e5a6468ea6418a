#include "lab/analysis.hpp"

#include <cmath>
#include <numbers>

namespace lab {

namespace {

// Centered first derivative on the grid; one-sided at the two ends.
std::vector<double> centered_derivative(const GridField& f)
{
    const int n = f.size();
    const double dx = f.grid.dx();
    std::vector<double> d(static_cast<std::size_t>(n));
    for (int i = 1; i + 1 < n; ++i)
        d[i] = (f.values[i + 1] - f.values[i - 1]) / (2.0 * dx);
    d[0] = (f.values[1] - f.values[0]) / dx;
    d[n - 1] = (f.values[n - 1] - f.values[n - 2]) / dx;
    return d;
}

void check_input(const GridField& f)
{
    if (f.grid.n_cells < 8) throw config_error("hilbert transform: need at least 8 cells");
    if (!f.all_finite()) throw numeric_error("hilbert transform: non-finite input value");
}

}  // namespace

GridField hilbert_transform(const GridField& f)
{
    check_input(f);
    const int n = f.size();
    const double dx = f.grid.dx();
    const auto xs = f.grid.centers();
    const auto fp = centered_derivative(f);

    std::vector<double> H(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        const double xi = xs[static_cast<std::size_t>(i)];
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            acc += f.values[static_cast<std::size_t>(j)] / (xi - xs[static_cast<std::size_t>(j)]);
        }
        // Skipped cell contributes -(dx/pi) f'(x_i) + O(dx^3) to the pv integral.
        H[static_cast<std::size_t>(i)] =
            (acc * dx - dx * fp[static_cast<std::size_t>(i)]) / std::numbers::pi;
    }
    return GridField(f.grid, std::move(H), FieldKind::generic);
}

std::pair<double, double> poisson_extend(const GridField& f, double x, double y)
{
    if (!(y > 0.0)) throw config_error("poisson extension requires y > 0");
    if (!f.all_finite()) throw numeric_error("poisson extension: non-finite input value");
    const double dx = f.grid.dx();
    const auto xs = f.grid.centers();
    double P = 0.0, R = 0.0;
    for (int j = 0; j < f.size(); ++j) {
        const double u = x - xs[static_cast<std::size_t>(j)];
        const double k = f.values[static_cast<std::size_t>(j)] / (u * u + y * y);
        P += y * k;
        R += u * k;
    }
    const double w = dx / std::numbers::pi;
    return {P * w, R * w};
}

GridField pv_derivative_of_hilbert(const GridField& f)
{
    const GridField H = hilbert_transform(f);
    return GridField(f.grid, centered_derivative(H), FieldKind::generic);
}

}  // namespace lab
