#include "phasespace/amplifier.hpp"

#include <cmath>
#include <sstream>

#include "phasespace/numerics.hpp"
#include "terms.hpp"

namespace phasespace {

namespace {

void require_smooth(const AmplifierGain& gain, const char* what) {
    if (gain.is_identity()) {
        throw SingularLimitError(std::string(what)
                                 + ": at g = 1 (sigma_of_gain = 0) the P-function is a sum of generalized delta "
                                   "functions and cannot be sampled; use p_cat_terms or p_regularized_eval");
    }
}

} // namespace

double sigma_of_gain(double g) {
    if (!(g >= 1.0) || !std::isfinite(g)) {
        std::ostringstream msg;
        msg << "amplitude gain must be finite and >= 1, got " << g;
        throw DomainError(msg.str());
    }
    return std::sqrt((g * g - 1.0) / 2.0);
}

AmplifierGain::AmplifierGain(double g) : g_(g), sigma_(sigma_of_gain(g)) {}

Complex amplified_q_term(const PTerm& term, const AmplifierGain& gain, Complex alpha) {
    return detail::scaled_q_term(term, gain.g(), alpha);
}

double amplify_q(const CatStateSpec& spec, const AmplifierGain& gain, Complex alpha) {
    Complex sum{};
    double magnitude = 0.0;
    for (const auto& term : p_cat_terms(spec).terms) {
        const Complex v = amplified_q_term(term, gain, alpha);
        sum += v;
        magnitude += std::abs(v);
    }
    return detail::assert_real_sum(sum, magnitude, "amplify_q");
}

Complex amplified_p_term(const PTerm& term, const AmplifierGain& gain, Complex alpha) {
    require_smooth(gain, "amplified_p_term");
    const double g = gain.g();
    const double spread = g * g - 1.0;
    const Complex bstar = std::conj(term.beta);
    const Complex exponent
        = -(std::norm(alpha) + g * g * bstar * term.gamma - g * (bstar * alpha + std::conj(alpha) * term.gamma))
          / spread;
    return term.weight() / (kPi * spread) * std::exp(exponent);
}

double amplified_p(const CatStateSpec& spec, const AmplifierGain& gain, Complex alpha) {
    require_smooth(gain, "amplified_p");
    Complex sum{};
    double magnitude = 0.0;
    for (const auto& term : p_cat_terms(spec).terms) {
        const Complex v = amplified_p_term(term, gain, alpha);
        sum += v;
        magnitude += std::abs(v);
    }
    return detail::assert_real_sum(sum, magnitude, "amplified_p");
}

Complex amplified_p_factored(const PTerm& term, const AmplifierGain& gain, Complex alpha) {
    require_smooth(gain, "amplified_p_factored");
    const double g = gain.g();
    const double s = gain.sigma();
    return term.weight() * phi_sigma(alpha.real() - g * term.center_r, s)
           * phi_sigma(alpha.imag() - g * term.center_i, s);
}

Complex pair_with_amplified_term(const PTerm& term, const AmplifierGain& gain, const AnalyticTestFunction& f_r,
                                 const AnalyticTestFunction& f_i) {
    require_smooth(gain, "pair_with_amplified_term");
    const double g = gain.g();
    const double s = gain.sigma();
    return term.weight() * sift_shifted_line(f_r, g * term.center_r, s) * sift_shifted_line(f_i, g * term.center_i, s);
}

Complex pair_with_term_limit(const PTerm& term, const AnalyticTestFunction& f_r, const AnalyticTestFunction& f_i) {
    return term.weight() * f_r(term.center_r) * f_i(term.center_i);
}

} // namespace phasespace
