#include "phasespace/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace phasespace {

std::string_view to_string(AxisSemantics semantics) {
    return semantics == AxisSemantics::AlphaPlane ? "alpha_plane" : "xp_quadratures";
}

AxisSemantics axis_semantics_from_string(std::string_view name) {
    if (name == "alpha_plane") return AxisSemantics::AlphaPlane;
    if (name == "xp_quadratures") return AxisSemantics::XPQuadratures;
    throw DomainError("unknown axis semantics '" + std::string(name) + "'");
}

Complex alpha_from_quadratures(double x, double p) {
    return Complex{x, p} / std::sqrt(2.0);
}

std::pair<double, double> quadratures_from_alpha(Complex alpha) {
    return {std::sqrt(2.0) * alpha.real(), std::sqrt(2.0) * alpha.imag()};
}

GridSpec GridSpec::make(double x_min, double x_max, double y_min, double y_max, int nx, int ny,
                        AxisSemantics semantics) {
    GridSpec g{x_min, x_max, y_min, y_max, nx, ny, semantics};
    g.validate();
    return g;
}

void GridSpec::validate() const {
    if (nx < 2 || ny < 2) {
        throw DomainError("grid needs at least 2 points per axis, got " + std::to_string(nx) + "x"
                          + std::to_string(ny));
    }
    const bool finite = std::isfinite(x_min) && std::isfinite(x_max) && std::isfinite(y_min) && std::isfinite(y_max);
    if (!finite || !(x_max > x_min) || !(y_max > y_min)) {
        throw DomainError("grid bounds must be finite with min < max");
    }
}

GridSpec GridSpec::padded(int px, int py) const {
    if (px < 0 || py < 0) throw DomainError("grid padding must be non-negative");
    GridSpec g = *this;
    g.x_min -= px * dx();
    g.x_max += px * dx();
    g.y_min -= py * dy();
    g.y_max += py * dy();
    g.nx += 2 * px;
    g.ny += 2 * py;
    return g;
}

Grid2D Grid2D::zeros(const GridSpec& spec) {
    spec.validate();
    return {spec, std::vector<Complex>(spec.size())};
}

Complex Grid2D::integral() const {
    Complex sum{};
    for (const auto& v : values) sum += v;
    return sum * spec.dx() * spec.dy();
}

double Grid2D::min_real() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& v : values) m = std::min(m, v.real());
    return m;
}

double Grid2D::max_real() const {
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& v : values) m = std::max(m, v.real());
    return m;
}

double Grid2D::max_abs_imag() const {
    double m = 0.0;
    for (const auto& v : values) m = std::max(m, std::abs(v.imag()));
    return m;
}

double Grid2D::max_abs_difference(const Grid2D& a, const Grid2D& b) {
    if (a.spec.nx != b.spec.nx || a.spec.ny != b.spec.ny) {
        throw DomainError("grids have different shapes");
    }
    double m = 0.0;
    for (std::size_t k = 0; k < a.values.size(); ++k) m = std::max(m, std::abs(a.values[k] - b.values[k]));
    return m;
}

Grid2D sample(const GridSpec& spec, const PlaneField& f) {
    auto grid = Grid2D::zeros(spec);
    const bool xp = spec.semantics == AxisSemantics::XPQuadratures;
    for (int i = 0; i < spec.nx; ++i) {
        for (int j = 0; j < spec.ny; ++j) {
            const Complex alpha = xp ? alpha_from_quadratures(spec.x(i), spec.y(j)) : Complex{spec.x(i), spec.y(j)};
            grid.at(i, j) = f(alpha);
        }
    }
    return grid;
}

} // namespace phasespace
