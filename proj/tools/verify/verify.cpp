#include "verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <sstream>

#include "phasespace/amplifier.hpp"
#include "phasespace/convolution.hpp"
#include "phasespace/gendelta.hpp"
#include "phasespace/numerics.hpp"
#include "phasespace/quasiprob.hpp"
#include "phasespace/reconstruct.hpp"
#include "phasespace/states.hpp"

namespace phasespace::verify {

namespace {

using Clock = std::chrono::steady_clock;
using Json = nlohmann::ordered_json;

class Stopwatch {
public:
    Stopwatch() : start_(Clock::now()) {}
    double seconds() const { return std::chrono::duration<double>(Clock::now() - start_).count(); }

private:
    Clock::time_point start_;
};

CriterionResult start(int id, std::string name, double limit) {
    CriterionResult r;
    r.id = id;
    r.name = std::move(name);
    r.time_limit = limit;
    return r;
}

CriterionResult& finish(CriterionResult& r, const Stopwatch& clock, bool math_ok) {
    r.seconds = clock.seconds();
    r.passed = math_ok && r.seconds <= r.time_limit;
    if (math_ok && !r.passed) r.summary += " [runtime limit exceeded]";
    return r;
}

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

std::string fixed(double v, int digits = 3) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

Json pair(Complex z) {
    return Json::array({z.real(), z.imag()});
}

// The cat used by the transform loop and the g → 1 study.
CatStateSpec reference_cat() {
    return {Complex{1.5, 0.0}, Complex{-1.5, 0.0}, Complex{1.0, 0.0}};
}

} // namespace

double laguerre(int n, double x) {
    if (n == 0) return 1.0;
    double prev = 1.0;
    double cur = 1.0 - x;
    for (int k = 1; k < n; ++k) {
        const double next = ((2.0 * k + 1.0 - x) * cur - k * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

CriterionResult moment_identity(const VerifyOptions&) {
    Stopwatch clock;
    auto r = start(1, "moment identity", 1.0);
    const std::vector<Complex> normalization_points{{0, 0}, {1, 0}, {0, 1}, {1, 1}, {2, -0.5}, {-3, 2}};
    const std::vector<double> normalization_sigmas{0.01, 0.05, 0.1, 0.3, 1.0, 2.5};
    double worst_norm = 0.0;
    for (const auto& z : normalization_points) {
        for (double s : normalization_sigmas) worst_norm = std::max(worst_norm, std::abs(moment_In(0, z, s) - 1.0));
    }

    const std::vector<Complex> points{{1, 0}, {0, 1}, {1, 1}, {2, -0.5}};
    double worst_ratio_gap = 0.0;
    double min_ratio = 1e300;
    double max_ratio = 0.0;
    Json ratios = Json::array();
    for (int n = 2; n <= 8; ++n) {
        for (const auto& z : points) {
            const double coarse = std::abs(moment_In(n, z, 0.1) - ipow(z, n));
            const double fine = std::abs(moment_In(n, z, 0.05) - ipow(z, n));
            const double ratio = coarse / fine;
            min_ratio = std::min(min_ratio, ratio);
            max_ratio = std::max(max_ratio, ratio);
            worst_ratio_gap = std::max(worst_ratio_gap, std::abs(ratio - 4.0));
            ratios.push_back(Json{{"n", n}, {"z", pair(z)}, {"ratio", ratio}});
        }
    }
    const bool ok = worst_norm <= 1e-12 && worst_ratio_gap <= 0.4;
    r.measured["max_abs_I0_minus_1"] = worst_norm;
    r.measured["ratio_min"] = min_ratio;
    r.measured["ratio_max"] = max_ratio;
    r.measured["ratios"] = ratios;
    r.summary = "|I_0 - 1| max " + sci(worst_norm) + " (tol 1e-12); sigma-halving ratios n=2..8 in [" + fixed(min_ratio)
                + ", " + fixed(max_ratio) + "] (need 4 +- 10%)";
    return finish(r, clock, ok);
}

CriterionResult sifting(const VerifyOptions&) {
    Stopwatch clock;
    auto r = start(2, "sifting", 1.0);
    // e^{-x²/4}(1 + x)
    const auto f = AnalyticTestFunction::gaussian_envelope(std::sqrt(2.0), {Complex{1.0}, Complex{1.0}});
    const Complex z0{1.0, 0.4};
    const Complex exact = f(z0);
    const auto limit = sift_limit(f, z0, 0.4, 4);
    const double rel = std::abs(limit.extrapolated - exact) / std::abs(exact);

    double worst_direct = 0.0;
    Json direct = Json::array();
    for (double s : limit.sigmas) {
        const double factor = cancellation_factor(z0.imag(), s);
        if (factor >= 1e6) continue;
        const Complex d = sift(f, z0, s);
        const Complex shifted = sift_shifted_line(f, z0, s);
        // rounding in the direct route grows with the cancellation factor
        const double gap = std::abs(d - shifted) / std::abs(shifted);
        const double tol = 1e-12 * factor;
        worst_direct = std::max(worst_direct, gap / tol);
        direct.push_back(Json{{"sigma", s}, {"cancellation_factor", factor}, {"relative_gap", gap}, {"tolerance", tol}});
    }
    const bool ok = rel <= 1e-6 && worst_direct <= 1.0;
    r.measured["sigma_schedule"] = limit.sigmas;
    Json values = Json::array();
    for (const auto& v : limit.values) values.push_back(pair(v));
    r.measured["shifted_values"] = values;
    r.measured["richardson_ratios"] = limit.ratios;
    r.measured["extrapolated"] = pair(limit.extrapolated);
    r.measured["continuation"] = pair(exact);
    r.measured["relative_error"] = rel;
    r.measured["direct_vs_shifted"] = direct;
    r.summary = "shifted-line limit at sigma -> 0.05 relative error " + sci(rel)
                + " (tol 1e-6); direct path agrees where cancellation < 1e6 (worst gap/tol " + fixed(worst_direct) + ")";
    return finish(r, clock, ok);
}

CriterionResult round_trip(const VerifyOptions& options) {
    Stopwatch clock;
    auto r = start(3, "round trip", 1.0);
    const std::vector<CatStateSpec> specs{
        {Complex{2.0, 0.0}, Complex{-2.0, 0.0}, Complex{1.0, 0.0}},
        {Complex{1.5, 0.0}, Complex{-1.5, 0.0}, Complex{0.0, 1.0}},
        {Complex{2.0, 0.0}, Complex{-2.0, 0.0}, std::polar(1.0, kPi / 2.0)},
        {Complex{1.0, 1.0}, Complex{-0.5, 1.5}, std::polar(0.7, 1.1)},
        {Complex{0.0, 2.0}, Complex{0.5, 0.0}, Complex{-0.5, 0.0}},
        {Complex{1.2, -0.3}, Complex{1.2, -0.3}, Complex{1.0, 0.0}},
    };
    const int n_max = 30;
    double worst = 0.0;
    bool structure = true;
    double worst_spec_seconds = 0.0;
    Json per_spec = Json::array();
    for (const auto& spec : specs) {
        Stopwatch one;
        auto rep = p_cat_terms(spec);
        if (options.flip_center_sign) {
            for (auto& t : rep.terms) t.center_i = -t.center_i;
        }
        const auto report = roundtrip_report(spec, rep, n_max);
        worst = std::max(worst, report.max_abs_deviation);
        const bool terms_ok = std::all_of(report.per_term_checks.begin(), report.per_term_checks.end(),
                                          [](const TermCheck& c) { return c.matched; });
        structure = structure && terms_ok;
        worst_spec_seconds = std::max(worst_spec_seconds, one.seconds());
        per_spec.push_back(Json{{"alpha1", pair(spec.alpha1())},
                                {"alpha2", pair(spec.alpha2())},
                                {"zeta", pair(spec.zeta())},
                                {"max_abs_deviation", report.max_abs_deviation},
                                {"trace_deviation", report.trace_deviation},
                                {"terms_match_outer_products", terms_ok}});
    }
    const bool ok = worst < 1e-10 && structure && worst_spec_seconds < 1.0;
    r.measured["n_max"] = n_max;
    r.measured["fault_injected"] = options.flip_center_sign;
    r.measured["max_abs_deviation"] = worst;
    r.measured["specs"] = per_spec;
    r.summary = "max |rho_recon - rho_direct| " + sci(worst) + " over " + std::to_string(specs.size())
                + " cats (tol 1e-10); each term equals kappa |gamma><beta|: " + (structure ? "yes" : "no");
    if (options.flip_center_sign) r.summary += " [center-sign fault injected]";
    return finish(r, clock, ok);
}

namespace {

GridSpec marginal_grid() {
    return GridSpec::make(-6.0, 6.0, -6.0, 6.0, 201, 201, AxisSemantics::XPQuadratures);
}

} // namespace

CriterionResult wigner_marginal(const VerifyOptions&) {
    Stopwatch clock;
    auto r = start(4, "wigner marginal", 30.0);
    const auto grid = marginal_grid();
    double worst = 0.0;
    Json per_n = Json::array();
    for (int n = 0; n <= 2; ++n) {
        const auto w = wigner_fock(n, grid);
        double worst_n = 0.0;
        for (int i = 0; i < grid.nx; ++i) {
            double marginal = 0.0;
            for (int j = 0; j < grid.ny; ++j) {
                const double weight = (j == 0 || j == grid.ny - 1) ? 0.5 : 1.0;
                marginal += weight * w.at(i, j).real();
            }
            marginal *= grid.dy();
            const double psi = hermite_function(n, grid.x(i));
            worst_n = std::max(worst_n, std::abs(marginal - psi * psi));
        }
        worst = std::max(worst, worst_n);
        per_n.push_back(Json{{"n", n}, {"max_abs_deviation", worst_n}});
    }
    r.measured["per_n"] = per_n;
    r.summary = "max |int W_n dp - |psi_n(x)|^2| over columns, n=0,1,2: " + sci(worst) + " (tol 1e-6)";
    return finish(r, clock, worst <= 1e-6);
}

CriterionResult wigner_negativity(const VerifyOptions&) {
    Stopwatch clock;
    auto r = start(5, "wigner negativity", 30.0);
    const auto grid = marginal_grid();
    const auto w = wigner_fock(2, grid);
    const double minimum = w.min_real();
    const int centre = grid.nx / 2;
    const double origin = w.at(centre, grid.ny / 2).real();
    const double oracle_origin = laguerre(2, 0.0) / kPi;
    double worst = 0.0;
    for (int i = 0; i < grid.nx; ++i) {
        for (int j = 0; j < grid.ny; ++j) {
            const double rr = grid.x(i) * grid.x(i) + grid.y(j) * grid.y(j);
            const double oracle = std::exp(-rr) * laguerre(2, 2.0 * rr) / kPi;
            worst = std::max(worst, std::abs(w.at(i, j).real() - oracle));
        }
    }
    const bool ok = minimum < 0.0 && std::abs(origin - oracle_origin) <= 1e-6;
    r.measured["min_W2"] = minimum;
    r.measured["W2_origin"] = origin;
    r.measured["oracle_origin"] = oracle_origin;
    r.measured["max_abs_deviation_from_laguerre"] = worst;
    r.summary = "min W_2 = " + fixed(minimum, 6) + " (< 0); |W_2(0,0) - 1/pi| = " + sci(std::abs(origin - oracle_origin))
                + " (tol 1e-6); grid-wide Laguerre deviation " + sci(worst);
    return finish(r, clock, ok);
}

CriterionResult transform_loop(const VerifyOptions&) {
    Stopwatch clock;
    auto r = start(6, "transform loop", 60.0);
    const auto spec = reference_cat();
    const AmplifierGain gain(2.0);
    const auto out = GridSpec::make(-6.0, 6.0, -6.0, 6.0, 161, 161, AxisSemantics::AlphaPlane);
    const auto chain = p_to_q_chain([&](Complex a) { return Complex{amplified_p(spec, gain, a), 0.0}; }, out);
    const auto direct = sample(out, [&](Complex a) { return Complex{amplify_q(spec, gain, a), 0.0}; });
    const double dev = Grid2D::max_abs_difference(chain.q, direct);
    r.measured["gain"] = gain.g();
    r.measured["max_abs_deviation"] = dev;
    r.measured["q_peak"] = direct.max_real();
    r.summary = "g=2 cat: |Q(P -> W -> Q) - Q_direct| max " + sci(dev) + " on [-6,6]^2 at 161^2 (tol 1e-5)";
    return finish(r, clock, dev <= 1e-5);
}

CriterionResult p_factorization(const VerifyOptions&) {
    Stopwatch clock;
    auto r = start(7, "p factorization", 1.0);
    const std::vector<CatStateSpec> specs{
        reference_cat(),
        {Complex{1.0, 0.5}, Complex{-0.8, 1.2}, std::polar(0.6, 0.7)},
    };
    double worst = 0.0;
    int evaluations = 0;
    for (const auto& spec : specs) {
        for (const auto& term : p_cat_terms(spec).terms) {
            for (double g : {1.1, 2.0, 5.0}) {
                const AmplifierGain gain(g);
                for (double re = -6.0; re <= 6.0; re += 0.5) {
                    for (double im = -6.0; im <= 6.0; im += 0.5) {
                        const Complex a{re, im};
                        if (std::abs(a) > 6.0) continue;
                        const Complex u = amplified_p_term(term, gain, a);
                        const Complex f = amplified_p_factored(term, gain, a);
                        worst = std::max(worst, std::abs(u - f) / std::max(1.0, std::abs(u)));
                        ++evaluations;
                    }
                }
            }
        }
    }
    const double s = sigma_of_gain(std::sqrt(3.0));
    const double ulp_at_one = std::abs(std::nextafter(1.0, s) - 1.0);
    const double ulps = s == 1.0 ? 0.0 : std::abs(s - 1.0) / ulp_at_one;
    const bool ok = worst <= 1e-12 && ulps <= 2.0;
    r.measured["evaluations"] = evaluations;
    r.measured["max_scaled_deviation"] = worst;
    r.measured["sigma_of_gain_sqrt3"] = s;
    r.measured["sigma_ulps_from_one"] = ulps;
    r.measured["note"] = "factored form uses Im(alpha) in the second Gaussian and 1/(sqrt(2 pi) sigma) normalization";
    r.summary = "factored vs unfactored P terms: max |a-b|/max(1,|a|) " + sci(worst) + " over " + std::to_string(evaluations)
                + " points (tol 1e-12); sigma(sqrt 3) - 1 = " + sci(s - 1.0) + " (" + fixed(ulps, 1) + " ulp)";
    return finish(r, clock, ok);
}

CriterionResult gain_to_unity(const VerifyOptions&) {
    Stopwatch clock;
    auto r = start(8, "gain to unity", 10.0);
    const auto rep = p_cat_terms(reference_cat());
    // f(α) = e^{-|α|²}: the vacuum-projector kernel, separable in α_r and α_i.
    const auto f = AnalyticTestFunction::gaussian_envelope(std::sqrt(0.5), {Complex{1.0}});
    Complex limit{};
    for (const auto& t : rep.terms) limit += pair_with_term_limit(t, f, f);
    std::vector<double> errors;
    Json steps = Json::array();
    for (int k = 2; k <= 6; ++k) {
        const AmplifierGain gain(1.0 + std::ldexp(1.0, -k));
        Complex value{};
        for (const auto& t : rep.terms) value += pair_with_amplified_term(t, gain, f, f);
        errors.push_back(std::abs(value - limit));
        steps.push_back(Json{{"k", k}, {"g", gain.g()}, {"value", pair(value)}, {"error", errors.back()}});
    }
    Json ratios = Json::array();
    double worst_gap = 0.0;
    for (std::size_t k = 0; k + 1 < errors.size(); ++k) {
        const double ratio = errors[k] / errors[k + 1];
        ratios.push_back(ratio);
        worst_gap = std::max(worst_gap, std::abs(ratio - 2.0) / 2.0);
    }
    r.measured["limit"] = pair(limit);
    r.measured["steps"] = steps;
    r.measured["ratios"] = ratios;
    std::string list;
    for (const auto& x : ratios) list += (list.empty() ? "" : ", ") + fixed(x.get<double>());
    r.summary = "pairing error vs g=1 sifted value, g = 1 + 2^-k, k=2..6: ratios " + list + " (need 2 +- 15%)";
    return finish(r, clock, worst_gap <= 0.15);
}

CriterionResult overlap_consistency(const VerifyOptions&) {
    Stopwatch clock;
    auto r = start(9, "overlap consistency", 1.0);
    std::vector<Complex> points;
    for (double re = -2.0; re <= 2.0; re += 0.5) {
        for (double im = -2.0; im <= 2.0; im += 0.5) {
            if (std::hypot(re, im) <= 2.0) points.emplace_back(re, im);
        }
    }
    const int n_max = 40;
    std::vector<std::vector<Complex>> coeffs;
    for (const auto& p : points) coeffs.push_back(coherent_fock_coeffs(p, n_max));
    double worst = 0.0;
    for (std::size_t a = 0; a < points.size(); ++a) {
        for (std::size_t b = 0; b < points.size(); ++b) {
            Complex inner{};
            for (int n = 0; n <= n_max; ++n) inner += std::conj(coeffs[a][n]) * coeffs[b][n];
            worst = std::max(worst, std::abs(inner - coherent_overlap(points[a], points[b])));
        }
    }
    r.measured["points"] = points.size();
    r.measured["max_abs_deviation"] = worst;
    r.summary = "|<a|b> - truncated Fock sum| max " + sci(worst) + " over " + std::to_string(points.size() * points.size())
                + " pairs with |a|,|b| <= 2 (tol 1e-10)";
    return finish(r, clock, worst < 1e-10);
}

CriterionResult q_normalization(const VerifyOptions& options) {
    Stopwatch clock;
    auto r = start(10, "q normalization", 30.0);
    std::mt19937 rng(options.seed);
    std::uniform_real_distribution<double> amplitude(-1.4, 1.4);
    std::uniform_real_distribution<double> modulus(0.2, 1.5);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
    const auto grid = GridSpec::make(-9.0, 9.0, -9.0, 9.0, 181, 181, AxisSemantics::AlphaPlane);
    double worst_norm = 0.0;
    double lowest = 1e300;
    Json specs = Json::array();
    for (int s = 0; s < 5; ++s) {
        const Complex a1{amplitude(rng), amplitude(rng)};
        const Complex a2{amplitude(rng), amplitude(rng)};
        const Complex zeta = std::polar(modulus(rng), phase(rng));
        const CatStateSpec spec(a1, a2, zeta);
        const auto q = sample(grid, [&](Complex a) { return Complex{q_function(spec, a), 0.0}; });
        const double norm = q.integral().real();
        worst_norm = std::max(worst_norm, std::abs(norm - 1.0));
        lowest = std::min(lowest, q.min_real());
        specs.push_back(Json{{"alpha1", pair(a1)}, {"alpha2", pair(a2)}, {"zeta", pair(zeta)}, {"integral", norm},
                             {"min", q.min_real()}});
    }
    const bool ok = worst_norm <= 1e-6 && lowest >= -1e-12;
    r.measured["seed"] = options.seed;
    r.measured["specs"] = specs;
    r.summary = "5 random cats: max |int Q - 1| " + sci(worst_norm) + " (tol 1e-6); min Q " + sci(lowest)
                + " (>= -1e-12)";
    return finish(r, clock, ok);
}

std::vector<Criterion> all_criteria() {
    return {moment_identity, sifting,        round_trip,          wigner_marginal, wigner_negativity,
            transform_loop,  p_factorization, gain_to_unity, overlap_consistency, q_normalization};
}

std::vector<CriterionResult> run_all(const VerifyOptions& options) {
    std::vector<CriterionResult> results;
    for (const auto& c : all_criteria()) results.push_back(c(options));
    return results;
}

std::string format_line(const CriterionResult& result) {
    std::ostringstream out;
    out << (result.passed ? "PASS" : "FAIL") << " [" << result.id << "] " << result.name << ": " << result.summary
        << " (" << fixed(result.seconds) << " s, limit " << fixed(result.time_limit, 0) << " s)";
    return out.str();
}

nlohmann::ordered_json to_json(const std::vector<CriterionResult>& results) {
    Json list = Json::array();
    bool all = true;
    for (const auto& r : results) {
        all = all && r.passed;
        list.push_back(Json{{"id", r.id},
                            {"name", r.name},
                            {"passed", r.passed},
                            {"summary", r.summary},
                            {"time_limit_seconds", r.time_limit},
                            {"within_time_limit", r.seconds <= r.time_limit},
                            {"measured", r.measured}});
    }
    return Json{{"passed", all}, {"criteria", std::move(list)}};
}

} // namespace phasespace::verify
