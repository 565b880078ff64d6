#pragma once

#include <complex>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "phasespace/errors.hpp"
#include "phasespace/grid.hpp"

namespace phasespace::cli {

enum class Command { Grid, Amplify, Roundtrip, Sift, Verify };
enum class Field { Q, Wigner, PRegularized, PAmplified };
enum class Format { Csv, Json };

std::string_view to_string(Command c);
std::string_view to_string(Field f);
std::string_view to_string(Format f);
Field field_from_string(std::string_view name);
Format format_from_string(std::string_view name);

/// Bad configuration; maps to exit code 1.
class UsageError : public Error {
public:
    using Error::Error;
};

/// Everything a single invocation needs. Defaults are the demonstration
/// parameters (α₁ = 2, α₂ = -2, ζ = 1 on [-8, 8]² at 201²).
struct JobConfig {
    Command command = Command::Grid;
    Complex alpha1{2.0, 0.0};
    Complex alpha2{-2.0, 0.0};
    Complex zeta{1.0, 0.0};
    bool state_from_user = false;
    Field field = Field::Q;
    double x_min = -8.0;
    double x_max = 8.0;
    double y_min = -8.0;
    double y_max = 8.0;
    int nx = 201;
    int ny = 201;
    /// Unset means 1 for grid and 2 for amplify.
    std::optional<double> gain;
    double sigma = 0.25;
    std::optional<int> fock;
    std::optional<int> n_max;
    Complex z0{1.0, 0.4};
    double sigma0 = 0.4;
    int levels = 4;
    std::string output = "-";
    Format format = Format::Csv;
    std::string timestamp = "1970-01-01T00:00:00Z";
    std::string inject_fault;
    unsigned seed = 20240611;

    /// Checks the fields the command needs; throws UsageError naming the field.
    void validate() const;

    double effective_gain() const { return gain.value_or(command == Command::Amplify ? 2.0 : 1.0); }
};

/// Overlay the keys present in a JSON config object onto `config`.
/// Complex values are [re, im] arrays; bounds is [x_min, x_max, y_min, y_max];
/// points is [nx, ny].
void apply_config_json(JobConfig& config, const nlohmann::json& j);

} // namespace phasespace::cli
