#include "phasespace/states.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "phasespace/numerics.hpp"

namespace phasespace {

namespace {

constexpr double kTailWarning = 1e-10;

void check_truncation(Complex alpha, int n_max, Warnings* warnings) {
    if (warnings == nullptr) return;
    const double tail = fock_tail_mass(alpha, n_max);
    if (tail > kTailWarning) {
        std::ostringstream msg;
        msg << "truncation: n_max = " << n_max << " drops Fock tail mass " << tail
            << " of |alpha| = " << std::abs(alpha) << " (recommended n_max >= "
            << recommended_n_max(std::abs(alpha)) << ")";
        warnings->add(msg.str());
    }
}

} // namespace

Complex coherent_overlap(Complex alpha, Complex beta) {
    return std::exp(-0.5 * (std::norm(alpha) + std::norm(beta) - 2.0 * std::conj(alpha) * beta));
}

double cat_normalization(Complex alpha1, Complex alpha2, Complex zeta) {
    const double bracket = 1.0 + std::norm(zeta) + 2.0 * std::real(zeta * coherent_overlap(alpha1, alpha2));
    if (!(bracket > 0.0)) {
        std::ostringstream msg;
        msg << "degenerate cat state: normalizer 1 + |zeta|^2 + 2 Re(zeta <a1|a2>) = " << bracket;
        throw DegenerateStateError(msg.str());
    }
    return 1.0 / std::sqrt(bracket);
}

CatStateSpec::CatStateSpec(Complex alpha1, Complex alpha2, Complex zeta)
    : alpha1_(alpha1), alpha2_(alpha2), zeta_(zeta), norm_(cat_normalization(alpha1, alpha2, zeta)) {}

double CatStateSpec::max_amplitude() const noexcept {
    const double a1 = std::abs(alpha1_);
    return zeta_ == Complex{} ? a1 : std::max(a1, std::abs(alpha2_));
}

std::array<CoherentDyad, 4> cat_dyads(const CatStateSpec& spec) {
    const double a2 = spec.norm() * spec.norm();
    const Complex z = spec.zeta();
    return {{
        {a2, spec.alpha1(), spec.alpha1()},
        {a2 * std::norm(z), spec.alpha2(), spec.alpha2()},
        {a2 * z, spec.alpha1(), spec.alpha2()},
        {a2 * std::conj(z), spec.alpha2(), spec.alpha1()},
    }};
}

std::vector<Complex> coherent_fock_coeffs(Complex alpha, int n_max, Warnings* warnings) {
    if (n_max < 0) throw DomainError("n_max must be non-negative");
    check_truncation(alpha, n_max, warnings);
    std::vector<Complex> c(static_cast<std::size_t>(n_max) + 1);
    c[0] = std::exp(-0.5 * std::norm(alpha));
    for (int n = 1; n <= n_max; ++n) {
        c[n] = c[n - 1] * alpha / std::sqrt(static_cast<double>(n));
    }
    return c;
}

double fock_tail_mass(Complex alpha, int n_max) {
    const double lambda = std::norm(alpha);
    if (lambda == 0.0) return 0.0;
    // Poisson terms above n_max, summed from log space until negligible.
    double tail = 0.0;
    for (int n = n_max + 1;; ++n) {
        const double term = std::exp(-lambda + n * std::log(lambda) - log_factorial(n));
        tail += term;
        if (n > lambda && term < 1e-18 * std::max(tail, 1e-300)) break;
        if (n > n_max + 100000) break;
    }
    return tail;
}

int recommended_n_max(double amplitude) {
    const double a = std::abs(amplitude);
    return static_cast<int>(std::ceil(a * a + 6.0 * a + 10.0));
}

FockDensityMatrix FockDensityMatrix::zero(int n_max) {
    if (n_max < 0) throw DomainError("n_max must be non-negative");
    return {n_max, Eigen::MatrixXcd::Zero(n_max + 1, n_max + 1)};
}

double FockDensityMatrix::hermiticity_defect() const {
    return (entries - entries.adjoint()).cwiseAbs().maxCoeff();
}

double FockDensityMatrix::min_eigenvalue() const {
    const Eigen::MatrixXcd h = 0.5 * (entries + entries.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

double FockDensityMatrix::max_abs_difference(const FockDensityMatrix& a, const FockDensityMatrix& b) {
    if (a.n_max != b.n_max) throw DomainError("density matrices have different truncations");
    return (a.entries - b.entries).cwiseAbs().maxCoeff();
}

FockDensityMatrix dyad_matrix(const CoherentDyad& dyad, int n_max, Warnings* warnings) {
    const auto ket = coherent_fock_coeffs(dyad.gamma, n_max, warnings);
    const auto bra = coherent_fock_coeffs(dyad.beta, n_max, warnings);
    const Eigen::Map<const Eigen::VectorXcd> k(ket.data(), n_max + 1);
    const Eigen::Map<const Eigen::VectorXcd> b(bra.data(), n_max + 1);
    return {n_max, dyad.kappa * (k * b.adjoint())};
}

FockDensityMatrix cat_density_matrix(const CatStateSpec& spec, int n_max, Warnings* warnings) {
    auto rho = FockDensityMatrix::zero(n_max);
    check_truncation(spec.alpha1(), n_max, warnings);
    if (spec.zeta() != Complex{}) check_truncation(spec.alpha2(), n_max, warnings);
    for (const auto& dyad : cat_dyads(spec)) {
        if (dyad.kappa == Complex{}) continue;
        rho.entries += dyad_matrix(dyad, n_max).entries;
    }
    return rho;
}

} // namespace phasespace
