#pragma once

#include "phasespace/errors.hpp"
#include "phasespace/gendelta.hpp"
#include "phasespace/quasiprob.hpp"
#include "phasespace/states.hpp"

namespace phasespace {

/// √((g² - 1)/2); throws DomainError for g < 1.
double sigma_of_gain(double g);

/// Amplitude gain g >= 1 of the phase-insensitive amplifier.
class AmplifierGain {
public:
    explicit AmplifierGain(double g);

    double g() const noexcept { return g_; }
    double sigma() const noexcept { return sigma_; }
    bool is_identity() const noexcept { return g_ == 1.0; }

private:
    double g_;
    double sigma_;
};

/// One term of the output Q-function:
/// κ⟨β|γ⟩/(πg²) exp(-(|α|² + g²β*γ - g(β*α + α*γ))/g²).
Complex amplified_q_term(const PTerm& term, const AmplifierGain& gain, Complex alpha);

/// Q_out(α) = Q_in(α/g)/g² of the amplified cat, summed from its terms.
/// At g = 1 this is q_function.
double amplify_q(const CatStateSpec& spec, const AmplifierGain& gain, Complex alpha);

/// One term of the output P-function (g > 1):
/// κ⟨β|γ⟩/(π(g²-1)) exp(-(|α|² + g²β*γ - g(β*α + α*γ))/(g²-1)).
/// Throws SingularLimitError for g = 1.
Complex amplified_p_term(const PTerm& term, const AmplifierGain& gain, Complex alpha);

/// P_out(α) of the amplified cat. Real for the full sum; throws
/// SingularLimitError for g = 1.
double amplified_p(const CatStateSpec& spec, const AmplifierGain& gain, Complex alpha);

/// The same term as a product of two Gaussians with complex centers:
/// κ⟨β|γ⟩ φ_σ(α_r - g c_r) φ_σ(α_i - g c_i), σ = sigma_of_gain(g).
Complex amplified_p_factored(const PTerm& term, const AmplifierGain& gain, Complex alpha);

/// ∬ f_r(α_r) f_i(α_i) P_term(α) d²α at gain g > 1, each axis integrated
/// along the line where its Gaussian weight is real.
Complex pair_with_amplified_term(const PTerm& term, const AmplifierGain& gain, const AnalyticTestFunction& f_r,
                                 const AnalyticTestFunction& f_i);

/// The g → 1 value of the same pairing: κ⟨β|γ⟩ f_r(c_r) f_i(c_i).
Complex pair_with_term_limit(const PTerm& term, const AnalyticTestFunction& f_r, const AnalyticTestFunction& f_i);

} // namespace phasespace
