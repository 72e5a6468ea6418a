#pragma once

#include <string>
#include <vector>

#include "lab/util.hpp"

namespace lab {

// Uniform cell-centered grid on [x_min, x_max]: x_j = x_min + (j + 1/2) dx.
struct Grid {
    double x_min = -1.0;
    double x_max = 1.0;
    int n_cells = 0;

    Grid() = default;
    Grid(double a, double b, int n);

    double dx() const { return (x_max - x_min) / n_cells; }
    double center(int j) const { return x_min + (j + 0.5) * dx(); }
    std::vector<double> centers() const;

    bool operator==(const Grid&) const = default;
};

enum class FieldKind { density, velocity, riemann_invariant, generic };

std::string to_string(FieldKind k);
FieldKind field_kind_from_string(const std::string& s);

// Sampled scalar field on a Grid.
struct GridField {
    Grid grid;
    std::vector<double> values;
    FieldKind kind = FieldKind::generic;

    GridField() = default;
    GridField(Grid g, std::vector<double> v, FieldKind k = FieldKind::generic);

    int size() const { return grid.n_cells; }
    bool all_finite() const;
};

// Point z = re + i*im in the closed upper half plane.
struct UpperHalfPoint {
    double re = 0.0;
    double im = 0.0;

    UpperHalfPoint() = default;
    UpperHalfPoint(double x, double y);
};

// Serialization: grids as JSON {x_min, x_max, n_cells}; fields as `x,value` CSV.
std::string grid_to_json(const Grid& g);
Grid grid_from_json(const std::string& json);
void field_to_csv(const GridField& f, const std::string& path);
GridField field_from_csv(const std::string& path, FieldKind kind = FieldKind::generic);

}  // namespace lab
