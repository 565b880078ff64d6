#pragma once

#include <complex>
#include <string_view>
#include <vector>

#include "phasespace/errors.hpp"
#include "phasespace/grid.hpp"
#include "phasespace/states.hpp"

namespace phasespace {

enum class TermKind { Diagonal, OffDiagonal };

std::string_view to_string(TermKind kind);

/// One κ|γ⟩⟨β| term of the P-representation. Its P-function is
/// κ⟨β|γ⟩ δ̃(α_r - c_r) δ̃(α_i - c_i) with the complex centers
/// c_r = (β* + γ)/2 and c_i = i(β* - γ)/2. For β = γ both centers are real
/// and the term is an ordinary δ²(α - β).
struct PTerm {
    Complex kappa;
    Complex beta;
    Complex gamma;
    Complex center_r;
    Complex center_i;
    TermKind kind = TermKind::Diagonal;

    static PTerm from_dyad(const CoherentDyad& dyad);

    /// κ⟨β|γ⟩, the coefficient in front of the delta pair.
    Complex weight() const;

    /// The same term with both centers multiplied by g (amplifier output).
    PTerm with_scaled_centers(double g) const;
};

struct PRepresentation {
    std::vector<PTerm> terms;
};

/// Terms of the cat P-function, one per dyad with non-zero coefficient
/// (four for a genuine cat, one for ζ = 0).
PRepresentation p_cat_terms(const CatStateSpec& spec);

/// (κ/π)⟨α|γ⟩⟨β|α⟩: one term of the Q-function.
Complex q_term(const PTerm& term, Complex alpha);

/// Q(α) = (1/π)⟨α|ρ|α⟩ of the cat state. Throws InternalError if the summed
/// imaginary residue exceeds 1e-12 of the term magnitudes.
double q_function(const CatStateSpec& spec, Complex alpha);

/// Fourier transform of one Q term:
/// κ⟨β|γ⟩ e^{-|ξ|²/4} e^{-i(β*+γ)ξ_r/2} e^{(β*-γ)ξ_i/2}.
Complex q_tilde_term(const PTerm& term, Complex xi);

/// Σ weight · φ_σ(α_r - c_r) φ_σ(α_i - c_i): the Gaussian-regularized P.
Complex p_regularized_eval(const PRepresentation& rep, double sigma, Complex alpha);

/// W(x, p) of the Fock state |n⟩ on an XPQuadratures grid, by quadrature of
/// (1/π)∫ψ_n(x+q)ψ_n(x-q)e^{-2ipq} dq. Warns when the grid does not reach
/// 2√n + 4 in both directions.
Grid2D wigner_fock(int n, const GridSpec& grid, Warnings* warnings = nullptr);

/// W(x, p) = (1/π)∫⟨x+q|ρ|x-q⟩e^{-2ipq} dq for a truncated density matrix
/// on an XPQuadratures grid.
Grid2D wigner_density(const FockDensityMatrix& rho, const GridSpec& grid, Warnings* warnings = nullptr);

} // namespace phasespace
