#pragma once

#include <array>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "phasespace/errors.hpp"

namespace phasespace {

/// ⟨α|β⟩ = exp(-(|α|² + |β|² - 2α*β)/2).
Complex coherent_overlap(Complex alpha, Complex beta);

/// A = [1 + |ζ|² + 2 Re(ζ⟨α₁|α₂⟩)]^{-1/2}; throws DegenerateStateError when
/// the bracket is not positive.
double cat_normalization(Complex alpha1, Complex alpha2, Complex zeta);

/// |ψ⟩ = A(|α₁⟩ + ζ|α₂⟩). Immutable; the normalization is fixed at construction.
class CatStateSpec {
public:
    CatStateSpec(Complex alpha1, Complex alpha2, Complex zeta);

    /// A single coherent state |α⟩ (ζ = 0).
    static CatStateSpec coherent(Complex alpha) { return {alpha, Complex{}, Complex{}}; }

    Complex alpha1() const noexcept { return alpha1_; }
    Complex alpha2() const noexcept { return alpha2_; }
    Complex zeta() const noexcept { return zeta_; }
    double norm() const noexcept { return norm_; }

    /// Largest coherent amplitude that carries weight.
    double max_amplitude() const noexcept;

private:
    Complex alpha1_;
    Complex alpha2_;
    Complex zeta_;
    double norm_;
};

/// One κ|γ⟩⟨β| piece of a density operator.
struct CoherentDyad {
    Complex kappa;
    Complex beta;  // bra amplitude
    Complex gamma; // ket amplitude
};

/// The four dyads of the cat density operator:
/// A²|α₁⟩⟨α₁|, A²|ζ|²|α₂⟩⟨α₂|, A²ζ|α₂⟩⟨α₁|, A²ζ*|α₁⟩⟨α₂|.
std::array<CoherentDyad, 4> cat_dyads(const CatStateSpec& spec);

/// c_n = e^{-|α|²/2} αⁿ/√(n!) for n = 0..n_max. Appends a warning when the
/// neglected Poisson tail exceeds 1e-10.
std::vector<Complex> coherent_fock_coeffs(Complex alpha, int n_max, Warnings* warnings = nullptr);

/// Photon-number probability mass above n_max for |α⟩.
double fock_tail_mass(Complex alpha, int n_max);

/// Truncation heuristic n_max >= |α|² + 6|α| + 10.
int recommended_n_max(double amplitude);

/// Truncated number-basis density matrix ρ_jk, 0 <= j,k <= n_max.
struct FockDensityMatrix {
    int n_max = 0;
    Eigen::MatrixXcd entries;

    static FockDensityMatrix zero(int n_max);

    int dim() const noexcept { return n_max + 1; }
    Complex operator()(int j, int k) const { return entries(j, k); }
    Complex trace() const { return entries.trace(); }

    /// max |ρ_jk - conj(ρ_kj)|.
    double hermiticity_defect() const;
    /// Smallest eigenvalue of the Hermitian part.
    double min_eigenvalue() const;
    /// max |a - b| elementwise; dimensions must match.
    static double max_abs_difference(const FockDensityMatrix& a, const FockDensityMatrix& b);
};

/// κ · c(γ) c(β)^† in the truncated basis.
FockDensityMatrix dyad_matrix(const CoherentDyad& dyad, int n_max, Warnings* warnings = nullptr);

/// ρ of the cat state assembled from coherent-state outer products.
FockDensityMatrix cat_density_matrix(const CatStateSpec& spec, int n_max, Warnings* warnings = nullptr);

} // namespace phasespace
