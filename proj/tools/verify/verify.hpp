#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace phasespace::verify {

struct VerifyOptions {
    /// Mutation check: negate every term's imaginary-part center before the
    /// round-trip reconstruction.
    bool flip_center_sign = false;
    /// Seed for the randomized cat specs of the normalization check.
    std::uint32_t seed = 20240611;
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    /// One-line summary of what was measured.
    std::string summary;
    nlohmann::ordered_json measured = nlohmann::ordered_json::object();
    double seconds = 0.0;
    double time_limit = 0.0;
};

using Criterion = std::function<CriterionResult(const VerifyOptions&)>;

CriterionResult moment_identity(const VerifyOptions& options);
CriterionResult sifting(const VerifyOptions& options);
CriterionResult round_trip(const VerifyOptions& options);
CriterionResult wigner_marginal(const VerifyOptions& options);
CriterionResult wigner_negativity(const VerifyOptions& options);
CriterionResult transform_loop(const VerifyOptions& options);
CriterionResult p_factorization(const VerifyOptions& options);
CriterionResult gain_to_unity(const VerifyOptions& options);
CriterionResult overlap_consistency(const VerifyOptions& options);
CriterionResult q_normalization(const VerifyOptions& options);

/// All criteria in order.
std::vector<Criterion> all_criteria();

/// Runs every criterion, timing each one.
std::vector<CriterionResult> run_all(const VerifyOptions& options);

/// "PASS [3] round trip: ... (0.01 s)"
std::string format_line(const CriterionResult& result);

nlohmann::ordered_json to_json(const std::vector<CriterionResult>& results);

/// Standard Laguerre polynomial L_n(x) by recurrence (test oracle only).
double laguerre(int n, double x);

} // namespace phasespace::verify
