#pragma once

#include <utility>

#include "lab/grid.hpp"

namespace lab {

// Discrete Hilbert transform on the sampling grid,
//   (Hf)(x) = (1/pi) pv∫ f(s)/(x - s) ds.
// Midpoint rule with the singular cell skipped plus the analytic correction
// for the symmetric gap, -(dx/pi) f'(x_i); the correction upgrades the hole
// error from O(dx) to O(dx^2), which the tight trace identities need.
// Throws config_error for n_cells < 8, numeric_error on non-finite input.
GridField hilbert_transform(const GridField& f);

// Harmonic extension of f to z = x + iy (y > 0) together with its conjugate:
//   P f = ∫ P_y(x - s) f(s) ds,  R f = ∫ R_y(x - s) f(s) ds,
// P_y(x) = y / (pi (x^2 + y^2)), R_y(x) = x / (pi (x^2 + y^2)).
// Returns {P f, R f}. The pair is the real/imaginary split of the Cauchy
// integral: (1/pi) ∫ f(s)/(z - s) ds = R f - i P f.
std::pair<double, double> poisson_extend(const GridField& f, double x, double y);

// d/dx of the discrete Hilbert transform (centered differences, one-sided at
// the ends). Used as the steepening monitor for densities.
GridField pv_derivative_of_hilbert(const GridField& f);

}  // namespace lab
