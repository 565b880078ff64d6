#pragma once

#include <vector>

#include "phasespace/errors.hpp"
#include "phasespace/numerics.hpp"
#include "phasespace/quasiprob.hpp"
#include "phasespace/states.hpp"

namespace phasespace {

/// ρ_jk of one P term, sifting the Fock kernel e^{-|α|²}αʲα*ᵏ/√(j!k!) at the
/// term's complex centers:
/// weight · e^{-(c_r² + c_i²)} (c_r + i c_i)ʲ (c_r - i c_i)ᵏ / √(j!k!).
/// For a consistent term this is κ|γ⟩⟨β|.
FockDensityMatrix rho_from_pterm(const PTerm& term, int n_max, Warnings* warnings = nullptr);

/// Σ rho_from_pterm over the representation.
FockDensityMatrix reconstruct_rho(const PRepresentation& rep, int n_max, Warnings* warnings = nullptr);

/// Largest e^{|Im center|²/2σ²} product the numeric path accepts.
inline constexpr double kNumericAmplificationLimit = 1e10;

struct NumericReconstruction {
    FockDensityMatrix rho;
    /// Elements with j + k above this are left at zero.
    int max_order = 12;
    /// Largest per-term amplification e^{((Im c_r)² + (Im c_i)²)/2σ²}.
    double cancellation_factor = 1.0;
    /// max |ρ(α_r first) - ρ(α_i first)| over the computed elements.
    double ordering_residual = 0.0;
};

/// Direct quadrature of ∬P_σ(α) e^{-|α|²}αʲα*ᵏ/√(j!k!) d²α with the
/// regularized P, by iterated real-axis integration (α_r innermost). Each
/// term's window is `quad` recentred on the real parts of its centers.
/// Throws RegularizationError when the amplification exceeds
/// kNumericAmplificationLimit.
NumericReconstruction reconstruct_rho_numeric(const PRepresentation& rep, double sigma, int n_max,
                                              const QuadratureSpec& quad, int max_order = 12);

/// Same with a window of ±12σ and a step resolving the oscillation of the
/// complex-centered Gaussians.
NumericReconstruction reconstruct_rho_numeric(const PRepresentation& rep, double sigma, int n_max,
                                              int max_order = 12);

struct TermCheck {
    int index = 0;
    bool matched = false;
    /// max |rho_from_pterm - κ c(γ)c(β)^†| for this term.
    double deviation = 0.0;
};

struct RoundTripReport {
    int n_max = 0;
    double max_abs_deviation = 0.0;
    /// |tr ρ_recon - 1|
    double trace_deviation = 0.0;
    std::vector<TermCheck> per_term_checks;

    bool passed(double tolerance = 1e-8) const;
};

/// Rebuild ρ from p_cat_terms(spec) and compare with cat_density_matrix.
RoundTripReport roundtrip_report(const CatStateSpec& spec, int n_max);

/// As above but with a caller-supplied representation.
RoundTripReport roundtrip_report(const CatStateSpec& spec, const PRepresentation& rep, int n_max);

} // namespace phasespace
