#include "lab/grid.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace lab {

Grid::Grid(double a, double b, int n) : x_min(a), x_max(b), n_cells(n)
{
    if (!(x_max > x_min)) throw config_error("grid: x_max must exceed x_min");
    if (n_cells < 2) throw config_error("grid: n_cells must be at least 2");
}

std::vector<double> Grid::centers() const
{
    std::vector<double> xs(static_cast<std::size_t>(n_cells));
    for (int j = 0; j < n_cells; ++j) xs[static_cast<std::size_t>(j)] = center(j);
    return xs;
}

std::string to_string(FieldKind k)
{
    switch (k) {
        case FieldKind::density: return "density";
        case FieldKind::velocity: return "velocity";
        case FieldKind::riemann_invariant: return "riemann_invariant";
        default: return "generic";
    }
}

FieldKind field_kind_from_string(const std::string& s)
{
    if (s == "density") return FieldKind::density;
    if (s == "velocity") return FieldKind::velocity;
    if (s == "riemann_invariant") return FieldKind::riemann_invariant;
    if (s == "generic") return FieldKind::generic;
    throw config_error("unknown field kind: " + s);
}

GridField::GridField(Grid g, std::vector<double> v, FieldKind k)
    : grid(g), values(std::move(v)), kind(k)
{
    if (values.size() != static_cast<std::size_t>(grid.n_cells))
        throw config_error("grid field: value count does not match n_cells");
}

bool GridField::all_finite() const
{
    for (double v : values)
        if (!std::isfinite(v)) return false;
    return true;
}

UpperHalfPoint::UpperHalfPoint(double x, double y) : re(x), im(y)
{
    if (!(im >= 0.0)) throw config_error("upper-half-plane point needs im >= 0");
}

std::string grid_to_json(const Grid& g)
{
    nlohmann::json j{{"x_min", g.x_min}, {"x_max", g.x_max}, {"n_cells", g.n_cells}};
    return j.dump();
}

Grid grid_from_json(const std::string& json)
{
    const auto j = nlohmann::json::parse(json);
    return Grid(j.at("x_min").get<double>(), j.at("x_max").get<double>(),
                j.at("n_cells").get<int>());
}

void field_to_csv(const GridField& f, const std::string& path)
{
    const auto xs = f.grid.centers();
    write_csv(path, {{"x", &xs}, {"value", &f.values}});
}

GridField field_from_csv(const std::string& path, FieldKind kind)
{
    std::ifstream in(path);
    if (!in) throw config_error("cannot open: " + path);
    std::string line;
    if (!std::getline(in, line) || line.rfind("x,value", 0) != 0)
        throw config_error("expected `x,value` header in " + path);
    std::vector<double> xs, vs;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string a, b;
        if (!std::getline(row, a, ',') || !std::getline(row, b))
            throw config_error("malformed csv row in " + path);
        xs.push_back(std::stod(a));
        vs.push_back(std::stod(b));
    }
    if (xs.size() < 2) throw config_error("csv field needs at least 2 rows");
    // Reconstruct the uniform grid from the sampled centers.
    const double dx = xs[1] - xs[0];
    Grid g(xs.front() - 0.5 * dx, xs.back() + 0.5 * dx, static_cast<int>(xs.size()));
    for (std::size_t i = 0; i < xs.size(); ++i)
        if (std::abs(g.center(static_cast<int>(i)) - xs[i]) > 1e-9 * std::max(1.0, std::abs(xs[i])))
            throw config_error("csv centers are not a uniform grid in " + path);
    return GridField(g, std::move(vs), kind);
}

}  // namespace lab
