#pragma once

#include "phasespace/quasiprob.hpp"

namespace phasespace::detail {

/// κ⟨β|γ⟩/(πg²) · exp(-(|α|² + g²β*γ - g(β*α + α*γ))/g²).
/// At g = 1 this is exactly the unamplified Q term.
Complex scaled_q_term(const PTerm& term, double g, Complex alpha);

/// Sum of per-term values that must be real; throws InternalError when the
/// imaginary residue exceeds 1e-12 · max(1, Σ|term|).
double assert_real_sum(Complex sum, double magnitude, const char* what);

} // namespace phasespace::detail
