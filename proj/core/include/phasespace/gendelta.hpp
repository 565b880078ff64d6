#pragma once

#include <complex>
#include <functional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "phasespace/errors.hpp"
#include "phasespace/numerics.hpp"

namespace phasespace {

/// Largest exponent |Im z|²/(2σ²) phi_sigma accepts before refusing.
inline constexpr double kOverflowExponent = 700.0;
/// Direct real-axis sifting warns above this cancellation factor.
inline constexpr double kCancellationWarning = 1e12;

/// φ_σ(z) = e^{-z²/2σ²}/(√(2π)σ) for complex z, evaluated as the product of
/// a real Gaussian factor e^{-(z_r² - z_i²)/2σ²} and a unit phase.
/// Throws RegularizationError when |Im z|²/(2σ²) exceeds kOverflowExponent.
Complex phi_sigma(Complex z, double sigma);

/// Smallest σ for which phi_sigma accepts an argument with this imaginary part.
double min_safe_sigma(double imag_part);

/// e^{b²/2σ²}: growth of |φ_σ(x - z₀)| over its real-argument peak when Im z₀ = b.
double cancellation_factor(double imag_part, double sigma);

/// Gaussian nascent delta of width σ centred at a complex point.
class RegularizedDelta {
public:
    RegularizedDelta(double sigma, Complex center);

    double sigma() const noexcept { return sigma_; }
    Complex center() const noexcept { return center_; }

    /// φ_σ(x - z₀) at a real abscissa.
    Complex operator()(double x) const { return phi_sigma(x - center_, sigma_); }

private:
    double sigma_;
    Complex center_;
};

/// (1/2π) ∫ e^{-izp} e^{-p²/2σ'²} dp by quadrature over p. Equals φ_{1/σ'}(z).
/// Warns when the p window does not cover ±8σ'.
Complex phi_from_integral_rep(Complex z, double sigma_prime, const QuadratureSpec& p_quad,
                              Warnings* warnings = nullptr);

/// Entire test functions with exact analytic continuation: either a monomial
/// xⁿ or a Gaussian envelope p(x) e^{-x²/(2s²)} with complex coefficients.
class AnalyticTestFunction {
public:
    struct Monomial {
        int degree;
    };
    struct GaussianEnvelope {
        double scale;
        std::vector<Complex> coefficients; // p(x) = Σ c_k x^k
    };

    static AnalyticTestFunction monomial(int degree);
    static AnalyticTestFunction gaussian_envelope(double scale, std::vector<Complex> coefficients);

    bool is_monomial() const noexcept { return std::holds_alternative<Monomial>(form_); }
    const Monomial& as_monomial() const { return std::get<Monomial>(form_); }
    const GaussianEnvelope& as_envelope() const { return std::get<GaussianEnvelope>(form_); }

    /// f(z) anywhere in the complex plane.
    Complex operator()(Complex z) const;

private:
    explicit AnalyticTestFunction(std::variant<Monomial, GaussianEnvelope> form) : form_(std::move(form)) {}

    std::variant<Monomial, GaussianEnvelope> form_;
};

/// Default real-axis window for sifting f against φ_σ(x - z₀).
QuadratureSpec sift_window(const AnalyticTestFunction& f, Complex z0, double sigma);

/// ∫ f(x) φ_σ(x - z₀) dx along the real axis. Monomials go through the closed
/// form moment_In; envelopes are integrated directly, which amplifies rounding
/// by cancellation_factor(Im z₀, σ) (warned above kCancellationWarning).
Complex sift(const AnalyticTestFunction& f, Complex z0, double sigma, const QuadratureSpec& quad,
             Warnings* warnings = nullptr);
Complex sift(const AnalyticTestFunction& f, Complex z0, double sigma, Warnings* warnings = nullptr);

/// ∫ f(x + ib) φ_σ(x - a) dx with z₀ = a + ib: the same value as sift, with a
/// real Gaussian weight and therefore no cancellation.
Complex sift_shifted_line(const AnalyticTestFunction& f, Complex z0, double sigma, const QuadratureSpec& quad);
Complex sift_shifted_line(const AnalyticTestFunction& f, Complex z0, double sigma);

/// I_n(σ) = ∫ xⁿ φ_σ(x - z) dx = Σ_m n!/(m!(n-2m)!) (σ²/2)^m z^{n-2m}.
Complex moment_In(int n, Complex z, double sigma);

/// Pointwise character of δ̃(z) in the σ → 0 limit.
enum class DeltaRegion { RealAxisInfinity, Zero, ComplexInfinity };

DeltaRegion classify_point(Complex z);
std::string_view to_string(DeltaRegion region);

/// f(ζ_r, ζ_i) on the real plane.
using PlaneFunction = std::function<Complex(double, double)>;

/// ∬ f(ζ_r, ζ_i) φ_σ(ζ_r - Re z) φ_σ(ζ_i - Im z) dζ_r dζ_i: sifting with the
/// product delta δ²(ζ - z). Both axes use quad's halfwidth and node count,
/// centred on Re z and Im z respectively.
Complex delta2_sift(const PlaneFunction& f, Complex z, double sigma, const QuadratureSpec& quad,
                    Warnings* warnings = nullptr);

/// σ_k = σ₀ 2^{-k}, k = 0..levels-1.
std::vector<double> sigma_schedule(double sigma0, int levels);

/// Values along a halving σ schedule and their Richardson extrapolation in σ².
struct LimitEstimate {
    std::vector<double> sigmas;
    std::vector<Complex> values;
    /// |F(σ_k) - F(σ_{k+1})| / |F(σ_{k+1}) - F(σ_{k+2})|; ≈ 4 for O(σ²) convergence.
    std::vector<double> ratios;
    Complex extrapolated;
};

/// Richardson table for an even error expansion in σ with σ halving per level.
LimitEstimate richardson_limit(std::span<const double> sigmas, std::span<const Complex> values);

/// σ → 0 limit of sift_shifted_line over sigma_schedule(sigma0, levels).
LimitEstimate sift_limit(const AnalyticTestFunction& f, Complex z0, double sigma0, int levels);

} // namespace phasespace
