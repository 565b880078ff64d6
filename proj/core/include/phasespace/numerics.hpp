#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "phasespace/errors.hpp"

namespace phasespace {

inline constexpr double kPi = 3.14159265358979323846;

/// Highest polynomial order accepted by the Hermite kernels.
inline constexpr int kMaxHermiteOrder = 64;

/// Fixed-node trapezoid rule on [center - halfwidth, center + halfwidth].
struct QuadratureSpec {
    double center = 0.0;
    double halfwidth = 1.0;
    int node_count = 2;

    /// Validating constructor: node_count >= 2, halfwidth finite and > 0.
    static QuadratureSpec make(double center, double halfwidth, int node_count);

    double lower() const noexcept { return center - halfwidth; }
    double upper() const noexcept { return center + halfwidth; }
    double step() const noexcept { return 2.0 * halfwidth / (node_count - 1); }
    double node(int i) const noexcept { return lower() + i * step(); }
    double weight(int i) const noexcept {
        return (i == 0 || i == node_count - 1) ? 0.5 * step() : step();
    }

    QuadratureSpec recentered(double new_center) const noexcept {
        return {new_center, halfwidth, node_count};
    }
};

/// Physicists' Hermite polynomial H_n(x) by the three-term recurrence.
/// Throws RangeError for n outside [0, kMaxHermiteOrder].
Complex hermite_poly(int n, Complex x);

/// Normalized oscillator eigenfunctions ψ_0(x) … ψ_{n_max}(x),
/// ψ_n(x) = π^{-1/4} (2ⁿ n!)^{-1/2} H_n(x) e^{-x²/2}, by the stable
/// normalized recurrence (no factorial overflow, any n_max).
std::vector<double> hermite_functions(int n_max, double x);

double hermite_function(int n, double x);

/// ∫ xⁿ e^{-a x² + b x} dx over the real line, closed form via H_n.
/// Throws DomainError for a <= 0.
Complex gaussian_moment_integral(int n, double a, Complex b);

/// zⁿ by repeated squaring; exact for n = 0 (returns 1, including 0⁰).
Complex ipow(Complex z, int n);

/// ln(n!) through lgamma; usable far beyond where n! overflows.
double log_factorial(int n);

/// Composite trapezoid approximation of ∫ f over the spec window.
/// Throws NumericError naming the first node with a non-finite sample.
template <class F>
Complex quad_real_line(F&& f, const QuadratureSpec& spec) {
    Complex sum{0.0, 0.0};
    for (int i = 0; i < spec.node_count; ++i) {
        const Complex v = Complex(f(spec.node(i)));
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw NumericError("non-finite integrand at quadrature node " + std::to_string(i)
                                   + " (x = " + std::to_string(spec.node(i)) + ")",
                               static_cast<std::size_t>(i));
        }
        sum += spec.weight(i) * v;
    }
    return sum;
}

} // namespace phasespace
