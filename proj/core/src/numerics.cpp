#include "phasespace/numerics.hpp"

#include <cmath>
#include <string>

namespace phasespace {

QuadratureSpec QuadratureSpec::make(double center, double halfwidth, int node_count) {
    if (node_count < 2) {
        throw DomainError("quadrature needs at least 2 nodes, got " + std::to_string(node_count));
    }
    if (!std::isfinite(halfwidth) || halfwidth <= 0.0) {
        throw DomainError("quadrature halfwidth must be finite and positive");
    }
    if (!std::isfinite(center)) {
        throw DomainError("quadrature center must be finite");
    }
    return {center, halfwidth, node_count};
}

Complex hermite_poly(int n, Complex x) {
    if (n < 0 || n > kMaxHermiteOrder) {
        throw RangeError("Hermite order " + std::to_string(n) + " outside [0, "
                         + std::to_string(kMaxHermiteOrder) + "]");
    }
    Complex prev{1.0, 0.0};
    if (n == 0) return prev;
    Complex cur = 2.0 * x;
    for (int k = 1; k < n; ++k) {
        const Complex next = 2.0 * x * cur - 2.0 * static_cast<double>(k) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

std::vector<double> hermite_functions(int n_max, double x) {
    if (n_max < 0) throw RangeError("hermite_functions: negative order");
    std::vector<double> psi(static_cast<std::size_t>(n_max) + 1);
    psi[0] = std::pow(kPi, -0.25) * std::exp(-0.5 * x * x);
    if (n_max >= 1) psi[1] = std::sqrt(2.0) * x * psi[0];
    for (int k = 1; k < n_max; ++k) {
        psi[k + 1] = std::sqrt(2.0 / (k + 1)) * x * psi[k] - std::sqrt(static_cast<double>(k) / (k + 1)) * psi[k - 1];
    }
    return psi;
}

double hermite_function(int n, double x) {
    return hermite_functions(n, x)[static_cast<std::size_t>(n)];
}

Complex gaussian_moment_integral(int n, double a, Complex b) {
    if (!(a > 0.0)) {
        throw DomainError("gaussian_moment_integral requires a > 0");
    }
    const double root_a = std::sqrt(a);
    const Complex i{0.0, 1.0};
    const Complex arg = i * b / (2.0 * root_a);
    const Complex scale = ipow(-i / (2.0 * root_a), n);
    return std::sqrt(kPi / a) * std::exp(b * b / (4.0 * a)) * scale * hermite_poly(n, arg);
}

Complex ipow(Complex z, int n) {
    if (n < 0) return 1.0 / ipow(z, -n);
    Complex result{1.0, 0.0};
    while (n > 0) {
        if (n & 1) result *= z;
        z *= z;
        n >>= 1;
    }
    return result;
}

double log_factorial(int n) {
    if (n < 0) throw DomainError("log_factorial of a negative integer");
    return std::lgamma(static_cast<double>(n) + 1.0);
}

} // namespace phasespace
