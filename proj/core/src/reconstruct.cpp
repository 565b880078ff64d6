#include "phasespace/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "phasespace/gendelta.hpp"

namespace phasespace {

namespace {

// zʲ/√(j!) for j = 0..n.
Eigen::VectorXcd scaled_powers(Complex z, int n) {
    Eigen::VectorXcd u(n + 1);
    u(0) = 1.0;
    for (int j = 1; j <= n; ++j) u(j) = u(j - 1) * z / std::sqrt(static_cast<double>(j));
    return u;
}

void check_tail(Complex amplitude, int n_max, Warnings* warnings) {
    if (warnings == nullptr) return;
    const double tail = fock_tail_mass(amplitude, n_max);
    if (tail > 1e-10) {
        std::ostringstream msg;
        msg << "truncation: n_max = " << n_max << " drops Fock tail mass " << tail << " of amplitude "
            << std::abs(amplitude);
        warnings->add(msg.str());
    }
}

} // namespace

FockDensityMatrix rho_from_pterm(const PTerm& term, int n_max, Warnings* warnings) {
    if (n_max < 0) throw DomainError("n_max must be non-negative");
    const Complex i{0.0, 1.0};
    const Complex ket = term.center_r + i * term.center_i;  // γ
    const Complex bra = term.center_r - i * term.center_i;  // β*
    check_tail(ket, n_max, warnings);
    check_tail(bra, n_max, warnings);
    const Complex scale
        = term.weight() * std::exp(-(term.center_r * term.center_r + term.center_i * term.center_i));
    const auto u = scaled_powers(ket, n_max);
    const auto v = scaled_powers(bra, n_max);
    return {n_max, scale * (u * v.transpose())};
}

FockDensityMatrix reconstruct_rho(const PRepresentation& rep, int n_max, Warnings* warnings) {
    auto rho = FockDensityMatrix::zero(n_max);
    for (const auto& term : rep.terms) rho.entries += rho_from_pterm(term, n_max, warnings).entries;
    return rho;
}

NumericReconstruction reconstruct_rho_numeric(const PRepresentation& rep, double sigma, int n_max,
                                              const QuadratureSpec& quad, int max_order) {
    if (!(sigma > 0.0)) throw DomainError("reconstruct_rho_numeric: sigma must be positive");
    if (max_order < 0) throw DomainError("reconstruct_rho_numeric: max_order must be non-negative");
    const int top = std::min(n_max, max_order);

    NumericReconstruction result{FockDensityMatrix::zero(n_max), max_order, 1.0, 0.0};
    Eigen::MatrixXcd reverse = Eigen::MatrixXcd::Zero(n_max + 1, n_max + 1);

    for (const auto& term : rep.terms) {
        const double br = term.center_r.imag();
        const double bi = term.center_i.imag();
        const double exponent = (br * br + bi * bi) / (2.0 * sigma * sigma);
        const double factor = std::exp(exponent);
        if (factor > kNumericAmplificationLimit) {
            const double safe = std::sqrt((br * br + bi * bi) / (2.0 * std::log(kNumericAmplificationLimit)));
            std::ostringstream msg;
            msg << "regularization too small: cancellation factor " << factor << " exceeds "
                << kNumericAmplificationLimit << " at sigma = " << sigma << "; minimum safe sigma is " << safe;
            throw RegularizationError(msg.str(), safe, factor);
        }
        result.cancellation_factor = std::max(result.cancellation_factor, factor);

        const auto xq = quad.recentered(term.center_r.real());
        const auto yq = quad.recentered(term.center_i.real());
        std::vector<Complex> wx(static_cast<std::size_t>(xq.node_count));
        std::vector<Complex> wy(static_cast<std::size_t>(yq.node_count));
        for (int m = 0; m < xq.node_count; ++m) wx[m] = xq.weight(m) * phi_sigma(xq.node(m) - term.center_r, sigma);
        for (int n = 0; n < yq.node_count; ++n) wy[n] = yq.weight(n) * phi_sigma(yq.node(n) - term.center_i, sigma);

        // e^{-|α|²} αʲ α*ᵏ / √(j!k!) as an outer product
        auto kernel = [&](double x, double y) {
            const Complex a{x, y};
            const auto u = scaled_powers(a, top);
            return Eigen::MatrixXcd(std::exp(-std::norm(a)) * (u * u.adjoint()));
        };

        Eigen::MatrixXcd forward = Eigen::MatrixXcd::Zero(top + 1, top + 1);
        for (int n = 0; n < yq.node_count; ++n) {
            Eigen::MatrixXcd inner = Eigen::MatrixXcd::Zero(top + 1, top + 1);
            for (int m = 0; m < xq.node_count; ++m) inner += wx[m] * kernel(xq.node(m), yq.node(n));
            forward += wy[n] * inner;
        }
        Eigen::MatrixXcd backward = Eigen::MatrixXcd::Zero(top + 1, top + 1);
        for (int m = 0; m < xq.node_count; ++m) {
            Eigen::MatrixXcd inner = Eigen::MatrixXcd::Zero(top + 1, top + 1);
            for (int n = 0; n < yq.node_count; ++n) inner += wy[n] * kernel(xq.node(m), yq.node(n));
            backward += wx[m] * inner;
        }
        const Complex w = term.weight();
        result.rho.entries.topLeftCorner(top + 1, top + 1) += w * forward;
        reverse.topLeftCorner(top + 1, top + 1) += w * backward;
    }

    for (int j = 0; j <= top; ++j) {
        for (int k = 0; k <= top; ++k) {
            if (j + k > max_order) {
                result.rho.entries(j, k) = 0.0;
                continue;
            }
            result.ordering_residual = std::max(result.ordering_residual, std::abs(result.rho.entries(j, k) - reverse(j, k)));
        }
    }
    return result;
}

NumericReconstruction reconstruct_rho_numeric(const PRepresentation& rep, double sigma, int n_max, int max_order) {
    if (!(sigma > 0.0)) throw DomainError("reconstruct_rho_numeric: sigma must be positive");
    double b = 0.0;
    for (const auto& term : rep.terms) {
        b = std::max({b, std::abs(term.center_r.imag()), std::abs(term.center_i.imag())});
    }
    const double halfwidth = 12.0 * sigma;
    const double h = 2.0 * kPi / (b / (sigma * sigma) + 30.0 / std::min(sigma, 1.0));
    const int nodes = std::max(201, 2 * static_cast<int>(std::ceil(halfwidth / h)) + 1);
    return reconstruct_rho_numeric(rep, sigma, n_max, QuadratureSpec::make(0.0, halfwidth, nodes), max_order);
}

bool RoundTripReport::passed(double tolerance) const {
    if (!(max_abs_deviation <= tolerance)) return false;
    return std::all_of(per_term_checks.begin(), per_term_checks.end(), [](const TermCheck& c) { return c.matched; });
}

RoundTripReport roundtrip_report(const CatStateSpec& spec, int n_max) {
    return roundtrip_report(spec, p_cat_terms(spec), n_max);
}

RoundTripReport roundtrip_report(const CatStateSpec& spec, const PRepresentation& rep, int n_max) {
    const auto direct = cat_density_matrix(spec, n_max);
    RoundTripReport report;
    report.n_max = n_max;
    auto recon = FockDensityMatrix::zero(n_max);
    for (std::size_t t = 0; t < rep.terms.size(); ++t) {
        const auto& term = rep.terms[t];
        const auto piece = rho_from_pterm(term, n_max);
        recon.entries += piece.entries;
        const auto expected = dyad_matrix({term.kappa, term.beta, term.gamma}, n_max);
        TermCheck check;
        check.index = static_cast<int>(t);
        check.deviation = FockDensityMatrix::max_abs_difference(piece, expected);
        check.matched = check.deviation < 1e-10;
        report.per_term_checks.push_back(check);
    }
    report.max_abs_deviation = FockDensityMatrix::max_abs_difference(recon, direct);
    report.trace_deviation = std::abs(recon.trace() - 1.0);
    return report;
}

} // namespace phasespace
