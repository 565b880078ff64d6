#include "phasespace/gendelta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace phasespace {

namespace {

constexpr int kMaxWindowNodes = 400001;

void require_positive_sigma(double sigma, const char* what) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw DomainError(std::string(what) + ": sigma must be finite and positive");
    }
}

void guard_exponent(double imag_part, double sigma) {
    const double exponent = imag_part * imag_part / (2.0 * sigma * sigma);
    if (exponent > kOverflowExponent) {
        std::ostringstream msg;
        msg << "regularization too small: |Im z|^2/(2 sigma^2) = " << exponent << " exceeds "
            << kOverflowExponent << "; minimum safe sigma is " << min_safe_sigma(imag_part);
        throw RegularizationError(msg.str(), min_safe_sigma(imag_part), std::numeric_limits<double>::infinity());
    }
}

// Horner evaluation of Σ c_k z^k.
Complex polynomial(const std::vector<Complex>& coefficients, Complex z) {
    Complex acc{};
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * z + *it;
    return acc;
}

} // namespace

Complex phi_sigma(Complex z, double sigma) {
    require_positive_sigma(sigma, "phi_sigma");
    const double zr = z.real();
    const double zi = z.imag();
    guard_exponent(zi, sigma);
    const double s2 = sigma * sigma;
    const double magnitude = std::exp(-(zr * zr - zi * zi) / (2.0 * s2)) / (std::sqrt(2.0 * kPi) * sigma);
    return std::polar(magnitude, -zr * zi / s2);
}

double min_safe_sigma(double imag_part) {
    return std::abs(imag_part) / std::sqrt(2.0 * kOverflowExponent);
}

double cancellation_factor(double imag_part, double sigma) {
    return std::exp(imag_part * imag_part / (2.0 * sigma * sigma));
}

RegularizedDelta::RegularizedDelta(double sigma, Complex center) : sigma_(sigma), center_(center) {
    require_positive_sigma(sigma, "RegularizedDelta");
    guard_exponent(center.imag(), sigma);
}

Complex phi_from_integral_rep(Complex z, double sigma_prime, const QuadratureSpec& p_quad, Warnings* warnings) {
    require_positive_sigma(sigma_prime, "phi_from_integral_rep");
    if (p_quad.lower() > -8.0 * sigma_prime || p_quad.upper() < 8.0 * sigma_prime) {
        std::ostringstream msg;
        msg << "truncation: p window [" << p_quad.lower() << ", " << p_quad.upper() << "] does not cover +-8 sigma' = "
            << 8.0 * sigma_prime;
        warn(warnings, msg.str());
    }
    const Complex i{0.0, 1.0};
    const double inv_two_s2 = 1.0 / (2.0 * sigma_prime * sigma_prime);
    return quad_real_line(
               [&](double p) { return std::exp(-i * z * p - p * p * inv_two_s2); }, p_quad)
           / (2.0 * kPi);
}

AnalyticTestFunction AnalyticTestFunction::monomial(int degree) {
    if (degree < 0 || degree > kMaxHermiteOrder) {
        throw RangeError("monomial degree " + std::to_string(degree) + " outside [0, "
                         + std::to_string(kMaxHermiteOrder) + "]");
    }
    return AnalyticTestFunction(Monomial{degree});
}

AnalyticTestFunction AnalyticTestFunction::gaussian_envelope(double scale, std::vector<Complex> coefficients) {
    if (!(scale > 0.0) || !std::isfinite(scale)) {
        throw DomainError("Gaussian envelope scale must be finite and positive");
    }
    if (coefficients.empty()) coefficients.push_back(Complex{1.0, 0.0});
    return AnalyticTestFunction(GaussianEnvelope{scale, std::move(coefficients)});
}

Complex AnalyticTestFunction::operator()(Complex z) const {
    if (const auto* m = std::get_if<Monomial>(&form_)) return ipow(z, m->degree);
    const auto& e = std::get<GaussianEnvelope>(form_);
    return polynomial(e.coefficients, z) * std::exp(-z * z / (2.0 * e.scale * e.scale));
}

QuadratureSpec sift_window(const AnalyticTestFunction& f, Complex z0, double sigma) {
    require_positive_sigma(sigma, "sift_window");
    const double a = z0.real();
    const double b = std::abs(z0.imag());
    double lower = a - (b + 12.0 * sigma);
    double upper = a + (b + 12.0 * sigma);
    double finest = sigma;
    double frequency = b / (sigma * sigma);
    if (!f.is_monomial()) {
        const auto& e = f.as_envelope();
        const double reach = e.scale * (12.0 + static_cast<double>(e.coefficients.size()));
        lower = std::min(lower, -reach);
        upper = std::max(upper, reach);
        finest = std::min(finest, e.scale);
        frequency = std::max(frequency, b / (e.scale * e.scale));
    }
    const double h = 2.0 * kPi / (frequency + 30.0 / finest);
    const double halfwidth = 0.5 * (upper - lower);
    const int nodes = std::clamp(static_cast<int>(std::ceil(2.0 * halfwidth / h)) + 1, 401, kMaxWindowNodes);
    return QuadratureSpec::make(0.5 * (upper + lower), halfwidth, nodes | 1);
}

Complex sift(const AnalyticTestFunction& f, Complex z0, double sigma, const QuadratureSpec& quad, Warnings* warnings) {
    require_positive_sigma(sigma, "sift");
    if (f.is_monomial()) return moment_In(f.as_monomial().degree, z0, sigma);
    guard_exponent(z0.imag(), sigma);
    const double factor = cancellation_factor(z0.imag(), sigma);
    if (factor > kCancellationWarning) {
        std::ostringstream msg;
        msg << "cancellation: direct sifting amplifies rounding by " << factor << " (Im z0 = " << z0.imag()
            << ", sigma = " << sigma << "); result digits unreliable, use sift_shifted_line";
        warn(warnings, msg.str());
    }
    return quad_real_line([&](double x) { return f(Complex{x, 0.0}) * phi_sigma(x - z0, sigma); }, quad);
}

Complex sift(const AnalyticTestFunction& f, Complex z0, double sigma, Warnings* warnings) {
    if (f.is_monomial()) return moment_In(f.as_monomial().degree, z0, sigma);
    return sift(f, z0, sigma, sift_window(f, z0, sigma), warnings);
}

Complex sift_shifted_line(const AnalyticTestFunction& f, Complex z0, double sigma, const QuadratureSpec& quad) {
    require_positive_sigma(sigma, "sift_shifted_line");
    const double a = z0.real();
    const double b = z0.imag();
    const double norm = 1.0 / (std::sqrt(2.0 * kPi) * sigma);
    const double inv_two_s2 = 1.0 / (2.0 * sigma * sigma);
    return quad_real_line(
        [&](double x) {
            const double u = x - a;
            return f(Complex{x, b}) * (norm * std::exp(-u * u * inv_two_s2));
        },
        quad);
}

Complex sift_shifted_line(const AnalyticTestFunction& f, Complex z0, double sigma) {
    return sift_shifted_line(f, z0, sigma, sift_window(f, z0, sigma));
}

Complex moment_In(int n, Complex z, double sigma) {
    if (n < 0 || n > kMaxHermiteOrder) {
        throw RangeError("moment order " + std::to_string(n) + " outside [0, " + std::to_string(kMaxHermiteOrder) + "]");
    }
    require_positive_sigma(sigma, "moment_In");
    const double half_s2 = 0.5 * sigma * sigma;
    // coefficient_m = n!/(m!(n-2m)!) (σ²/2)^m, built incrementally
    double coefficient = 1.0;
    Complex sum{};
    for (int m = 0; 2 * m <= n; ++m) {
        sum += coefficient * ipow(z, n - 2 * m);
        coefficient *= static_cast<double>(n - 2 * m) * (n - 2 * m - 1) / (m + 1) * half_s2;
    }
    return sum;
}

DeltaRegion classify_point(Complex z) {
    const double re = z.real();
    const double im = z.imag();
    if (re == 0.0) return DeltaRegion::RealAxisInfinity;
    if (re * re > im * im) return DeltaRegion::Zero;
    return DeltaRegion::ComplexInfinity;
}

std::string_view to_string(DeltaRegion region) {
    switch (region) {
    case DeltaRegion::RealAxisInfinity: return "infinity";
    case DeltaRegion::Zero: return "zero";
    case DeltaRegion::ComplexInfinity: return "complex_infinity";
    }
    return "unknown";
}

Complex delta2_sift(const PlaneFunction& f, Complex z, double sigma, const QuadratureSpec& quad, Warnings* warnings) {
    require_positive_sigma(sigma, "delta2_sift");
    if (quad.halfwidth < 8.0 * sigma) {
        warn(warnings, "truncation: delta2 window halfwidth " + std::to_string(quad.halfwidth)
                           + " is below 8 sigma = " + std::to_string(8.0 * sigma));
    }
    if (quad.step() > 0.5 * sigma) {
        warn(warnings, "resolution: delta2 node spacing " + std::to_string(quad.step())
                           + " exceeds sigma/2 = " + std::to_string(0.5 * sigma));
    }
    const auto re_axis = quad.recentered(z.real());
    const auto im_axis = quad.recentered(z.imag());
    const double norm = 1.0 / (std::sqrt(2.0 * kPi) * sigma);
    const double inv_two_s2 = 1.0 / (2.0 * sigma * sigma);

    std::vector<double> gy(static_cast<std::size_t>(im_axis.node_count));
    for (int j = 0; j < im_axis.node_count; ++j) {
        const double v = im_axis.node(j) - z.imag();
        gy[j] = im_axis.weight(j) * norm * std::exp(-v * v * inv_two_s2);
    }
    Complex total{};
    for (int i = 0; i < re_axis.node_count; ++i) {
        const double x = re_axis.node(i);
        const double u = x - z.real();
        const double gx = re_axis.weight(i) * norm * std::exp(-u * u * inv_two_s2);
        Complex row{};
        for (int j = 0; j < im_axis.node_count; ++j) {
            const Complex v = f(x, im_axis.node(j));
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
                throw NumericError("non-finite delta2 integrand at node (" + std::to_string(i) + ", "
                                       + std::to_string(j) + ")",
                                   static_cast<std::size_t>(i) * im_axis.node_count + j);
            }
            row += gy[j] * v;
        }
        total += gx * row;
    }
    return total;
}

std::vector<double> sigma_schedule(double sigma0, int levels) {
    require_positive_sigma(sigma0, "sigma_schedule");
    if (levels < 1) throw DomainError("sigma_schedule needs at least one level");
    std::vector<double> out(static_cast<std::size_t>(levels));
    for (int k = 0; k < levels; ++k) out[k] = std::ldexp(sigma0, -k);
    return out;
}

LimitEstimate richardson_limit(std::span<const double> sigmas, std::span<const Complex> values) {
    if (sigmas.size() != values.size() || sigmas.empty()) {
        throw DomainError("richardson_limit: schedule and values must be non-empty and aligned");
    }
    for (std::size_t k = 1; k < sigmas.size(); ++k) {
        if (std::abs(sigmas[k] * 2.0 - sigmas[k - 1]) > 1e-12 * sigmas[k - 1]) {
            throw DomainError("richardson_limit: sigma schedule must halve at every level");
        }
    }
    LimitEstimate est;
    est.sigmas.assign(sigmas.begin(), sigmas.end());
    est.values.assign(values.begin(), values.end());
    for (std::size_t k = 0; k + 2 < values.size(); ++k) {
        const double num = std::abs(values[k] - values[k + 1]);
        const double den = std::abs(values[k + 1] - values[k + 2]);
        est.ratios.push_back(den > 0.0 ? num / den : std::numeric_limits<double>::infinity());
    }
    // Neville-style table; column m removes the σ^{2m} term.
    std::vector<Complex> column(values.begin(), values.end());
    for (std::size_t m = 1; m < column.size(); ++m) {
        const double factor = std::ldexp(1.0, static_cast<int>(2 * m));
        for (std::size_t k = column.size() - 1; k >= m; --k) {
            column[k] = (factor * column[k] - column[k - 1]) / (factor - 1.0);
            if (k == m) break;
        }
    }
    est.extrapolated = column.back();
    return est;
}

LimitEstimate sift_limit(const AnalyticTestFunction& f, Complex z0, double sigma0, int levels) {
    const auto sigmas = sigma_schedule(sigma0, levels);
    std::vector<Complex> values;
    values.reserve(sigmas.size());
    for (double s : sigmas) values.push_back(sift_shifted_line(f, z0, s));
    return richardson_limit(sigmas, values);
}

} // namespace phasespace
