#include "phasespace/quasiprob.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Dense>

#include "phasespace/gendelta.hpp"
#include "phasespace/numerics.hpp"
#include "terms.hpp"

namespace phasespace {

namespace detail {

Complex scaled_q_term(const PTerm& term, double g, Complex alpha) {
    const double g2 = g * g;
    const Complex bstar = std::conj(term.beta);
    const Complex exponent
        = -(std::norm(alpha) + g2 * bstar * term.gamma - g * (bstar * alpha + std::conj(alpha) * term.gamma)) / g2;
    return term.weight() / (kPi * g2) * std::exp(exponent);
}

double assert_real_sum(Complex sum, double magnitude, const char* what) {
    const double limit = 1e-12 * std::max(1.0, magnitude);
    if (std::abs(sum.imag()) > limit) {
        std::ostringstream msg;
        msg << what << ": imaginary residue " << sum.imag() << " exceeds " << limit;
        throw InternalError(msg.str());
    }
    return sum.real();
}

} // namespace detail

std::string_view to_string(TermKind kind) {
    return kind == TermKind::Diagonal ? "diagonal" : "off_diagonal";
}

PTerm PTerm::from_dyad(const CoherentDyad& dyad) {
    const Complex i{0.0, 1.0};
    const Complex bstar = std::conj(dyad.beta);
    PTerm t;
    t.kappa = dyad.kappa;
    t.beta = dyad.beta;
    t.gamma = dyad.gamma;
    t.center_r = 0.5 * (bstar + dyad.gamma);
    t.center_i = 0.5 * i * (bstar - dyad.gamma);
    t.kind = dyad.beta == dyad.gamma ? TermKind::Diagonal : TermKind::OffDiagonal;
    return t;
}

Complex PTerm::weight() const {
    return kappa * coherent_overlap(beta, gamma);
}

PTerm PTerm::with_scaled_centers(double g) const {
    PTerm t = *this;
    t.center_r *= g;
    t.center_i *= g;
    return t;
}

PRepresentation p_cat_terms(const CatStateSpec& spec) {
    PRepresentation rep;
    for (const auto& dyad : cat_dyads(spec)) {
        if (dyad.kappa == Complex{}) continue;
        rep.terms.push_back(PTerm::from_dyad(dyad));
    }
    return rep;
}

Complex q_term(const PTerm& term, Complex alpha) {
    return detail::scaled_q_term(term, 1.0, alpha);
}

double q_function(const CatStateSpec& spec, Complex alpha) {
    Complex sum{};
    double magnitude = 0.0;
    for (const auto& term : p_cat_terms(spec).terms) {
        const Complex v = q_term(term, alpha);
        sum += v;
        magnitude += std::abs(v);
    }
    return detail::assert_real_sum(sum, magnitude, "q_function");
}

Complex q_tilde_term(const PTerm& term, Complex xi) {
    const Complex i{0.0, 1.0};
    const Complex bstar = std::conj(term.beta);
    const Complex exponent = -0.25 * std::norm(xi) - 0.5 * i * (bstar + term.gamma) * xi.real()
                             + 0.5 * (bstar - term.gamma) * xi.imag();
    return term.weight() * std::exp(exponent);
}

Complex p_regularized_eval(const PRepresentation& rep, double sigma, Complex alpha) {
    Complex sum{};
    for (const auto& term : rep.terms) {
        sum += term.weight() * phi_sigma(alpha.real() - term.center_r, sigma)
               * phi_sigma(alpha.imag() - term.center_i, sigma);
    }
    return sum;
}

namespace {

struct KernelWindow {
    double halfwidth;
    int nodes;
};

// q-window and resolution for ∫K(q)e^{-2ipq}dq when K is built from
// oscillator functions up to order n_max.
KernelWindow kernel_window(int n_max, const GridSpec& grid) {
    const double reach = std::sqrt(2.0 * n_max + 1.0);
    const double p_max = std::max(std::abs(grid.y_min), std::abs(grid.y_max));
    const double halfwidth = reach + 8.0;
    const double h = kPi / (4.0 * (reach + p_max) + 20.0);
    return {halfwidth, 2 * static_cast<int>(std::ceil(halfwidth / h)) + 1};
}

void require_xp(const GridSpec& grid, const char* what) {
    grid.validate();
    if (grid.semantics != AxisSemantics::XPQuadratures) {
        throw DomainError(std::string(what) + " needs an xp_quadratures grid");
    }
}

void check_extent(int n, const GridSpec& grid, Warnings* warnings) {
    const double needed = 2.0 * std::sqrt(static_cast<double>(n)) + 4.0;
    const double reach = std::min({-grid.x_min, grid.x_max, -grid.y_min, grid.y_max});
    if (reach < needed) {
        std::ostringstream msg;
        msg << "truncation: grid reaches " << reach << " but the Wigner function of order " << n
            << " extends to about " << needed;
        warn(warnings, msg.str());
    }
}

// Fills column i of the output from K(q_k) samples: W(p) = (1/π)Σ w_k K_k e^{-2ipq_k}.
void fourier_column(const std::vector<Complex>& kernel, const QuadratureSpec& quad, int i, Grid2D& out) {
    for (int j = 0; j < out.spec.ny; ++j) {
        const double p = out.spec.y(j);
        Complex acc{};
        for (int k = 0; k < quad.node_count; ++k) {
            const double q = quad.node(k);
            acc += quad.weight(k) * kernel[k] * std::polar(1.0, -2.0 * p * q);
        }
        out.at(i, j) = acc / kPi;
    }
}

} // namespace

Grid2D wigner_fock(int n, const GridSpec& grid, Warnings* warnings) {
    if (n < 0) throw DomainError("Fock index must be non-negative");
    require_xp(grid, "wigner_fock");
    check_extent(n, grid, warnings);
    const auto window = kernel_window(n, grid);
    const auto quad = QuadratureSpec::make(0.0, window.halfwidth, window.nodes);

    auto out = Grid2D::zeros(grid);
    std::vector<Complex> kernel(static_cast<std::size_t>(quad.node_count));
    for (int i = 0; i < grid.nx; ++i) {
        const double x = grid.x(i);
        for (int k = 0; k < quad.node_count; ++k) {
            const double q = quad.node(k);
            kernel[k] = hermite_function(n, x + q) * hermite_function(n, x - q);
        }
        fourier_column(kernel, quad, i, out);
    }
    return out;
}

Grid2D wigner_density(const FockDensityMatrix& rho, const GridSpec& grid, Warnings* warnings) {
    require_xp(grid, "wigner_density");
    check_extent(rho.n_max, grid, warnings);
    const auto window = kernel_window(rho.n_max, grid);
    const auto quad = QuadratureSpec::make(0.0, window.halfwidth, window.nodes);
    const int dim = rho.dim();

    auto out = Grid2D::zeros(grid);
    Eigen::MatrixXd plus(quad.node_count, dim);
    Eigen::MatrixXd minus(quad.node_count, dim);
    std::vector<Complex> kernel(static_cast<std::size_t>(quad.node_count));
    for (int i = 0; i < grid.nx; ++i) {
        const double x = grid.x(i);
        for (int k = 0; k < quad.node_count; ++k) {
            const double q = quad.node(k);
            const auto up = hermite_functions(rho.n_max, x + q);
            const auto down = hermite_functions(rho.n_max, x - q);
            for (int d = 0; d < dim; ++d) {
                plus(k, d) = up[d];
                minus(k, d) = down[d];
            }
        }
        // K(q) = Σ_jk ψ_j(x+q) ρ_jk ψ_k(x-q)
        const Eigen::MatrixXcd left = plus.cast<Complex>() * rho.entries;
        for (int k = 0; k < quad.node_count; ++k) {
            kernel[k] = (left.row(k).array() * minus.row(k).array().cast<Complex>()).sum();
        }
        fourier_column(kernel, quad, i, out);
    }
    return out;
}

} // namespace phasespace
