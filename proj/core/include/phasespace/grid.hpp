#pragma once

#include <complex>
#include <functional>
#include <string_view>
#include <utility>
#include <vector>

#include "phasespace/errors.hpp"

namespace phasespace {

/// What the two grid axes mean. AlphaPlane: (Re α, Im α). XPQuadratures:
/// (x, p) with α = (x + ip)/√2.
enum class AxisSemantics { AlphaPlane, XPQuadratures };

std::string_view to_string(AxisSemantics semantics);
AxisSemantics axis_semantics_from_string(std::string_view name);

Complex alpha_from_quadratures(double x, double p);
std::pair<double, double> quadratures_from_alpha(Complex alpha);

/// Uniform rectangular lattice, endpoints included.
struct GridSpec {
    double x_min = -1.0;
    double x_max = 1.0;
    double y_min = -1.0;
    double y_max = 1.0;
    int nx = 2;
    int ny = 2;
    AxisSemantics semantics = AxisSemantics::AlphaPlane;

    /// Throws DomainError unless nx, ny >= 2 and both ranges are finite and increasing.
    static GridSpec make(double x_min, double x_max, double y_min, double y_max, int nx, int ny,
                         AxisSemantics semantics);
    void validate() const;

    double dx() const noexcept { return (x_max - x_min) / (nx - 1); }
    double dy() const noexcept { return (y_max - y_min) / (ny - 1); }
    double x(int i) const noexcept { return x_min + i * dx(); }
    double y(int j) const noexcept { return y_min + j * dy(); }
    std::size_t size() const noexcept { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }

    /// Same spacing, extended by px points in x and py points in y on each side.
    GridSpec padded(int px, int py) const;
};

/// Complex field sampled on a GridSpec; value (i, j) is stored at i*ny + j.
struct Grid2D {
    GridSpec spec;
    std::vector<Complex> values;

    static Grid2D zeros(const GridSpec& spec);

    Complex& at(int i, int j) { return values[static_cast<std::size_t>(i) * spec.ny + j]; }
    Complex at(int i, int j) const { return values[static_cast<std::size_t>(i) * spec.ny + j]; }

    /// Σ values · Δx Δy.
    Complex integral() const;
    double min_real() const;
    double max_real() const;
    double max_abs_imag() const;

    /// max |a - b| over matching lattices.
    static double max_abs_difference(const Grid2D& a, const Grid2D& b);
};

/// f(α) on the complex plane.
using PlaneField = std::function<Complex(Complex)>;

/// Sample f over the lattice. For XPQuadratures grids f receives
/// α = alpha_from_quadratures(x, p).
Grid2D sample(const GridSpec& spec, const PlaneField& f);

} // namespace phasespace
