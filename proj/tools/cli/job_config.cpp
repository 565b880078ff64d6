#include "job_config.hpp"

#include <cmath>

namespace phasespace::cli {

std::string_view to_string(Command c) {
    switch (c) {
    case Command::Grid: return "grid";
    case Command::Amplify: return "amplify";
    case Command::Roundtrip: return "roundtrip";
    case Command::Sift: return "sift";
    case Command::Verify: return "verify";
    }
    return "unknown";
}

std::string_view to_string(Field f) {
    switch (f) {
    case Field::Q: return "q";
    case Field::Wigner: return "wigner";
    case Field::PRegularized: return "p_regularized";
    case Field::PAmplified: return "p_amplified";
    }
    return "unknown";
}

std::string_view to_string(Format f) {
    return f == Format::Csv ? "csv" : "json";
}

Field field_from_string(std::string_view name) {
    if (name == "q") return Field::Q;
    if (name == "wigner") return Field::Wigner;
    if (name == "p_regularized") return Field::PRegularized;
    if (name == "p_amplified" || name == "p") return Field::PAmplified;
    throw UsageError("field: unknown value '" + std::string(name) + "' (q|wigner|p_regularized|p_amplified)");
}

Format format_from_string(std::string_view name) {
    if (name == "csv") return Format::Csv;
    if (name == "json") return Format::Json;
    throw UsageError("format: unknown value '" + std::string(name) + "' (csv|json)");
}

void JobConfig::validate() const {
    auto finite = [](Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); };
    if (!finite(alpha1) || !finite(alpha2) || !finite(zeta)) throw UsageError("state: amplitudes must be finite");
    if (command == Command::Grid || command == Command::Amplify) {
        if (!(x_max > x_min) || !(y_max > y_min) || !std::isfinite(x_min) || !std::isfinite(x_max)
            || !std::isfinite(y_min) || !std::isfinite(y_max)) {
            throw UsageError("bounds: need finite x_min < x_max and y_min < y_max");
        }
        if (nx < 2 || ny < 2) throw UsageError("points: need at least 2 points per axis");
        if (!(effective_gain() >= 1.0) || !std::isfinite(effective_gain())) throw UsageError("gain: amplitude gain must be >= 1");
        if (field == Field::PRegularized && !(sigma > 0.0)) throw UsageError("sigma: must be positive");
        if (command == Command::Amplify && field != Field::Q && field != Field::PAmplified) {
            throw UsageError("field: amplify emits q or p");
        }
        if (fock && *fock < 0) throw UsageError("fock: index must be non-negative");
    }
    if (n_max && (*n_max < 0 || *n_max > 200)) throw UsageError("n-max: must lie in [0, 200]");
    if (command == Command::Sift) {
        if (!(sigma0 > 0.0)) throw UsageError("sigma0: must be positive");
        if (levels < 1 || levels > 12) throw UsageError("levels: must lie in [1, 12]");
    }
    if (!inject_fault.empty() && inject_fault != "flip-center-sign") {
        throw UsageError("inject-fault: only 'flip-center-sign' is supported");
    }
}

namespace {

Complex complex_from(const nlohmann::json& v, const char* key) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        throw UsageError(std::string(key) + ": expected [re, im]");
    }
    return {v[0].get<double>(), v[1].get<double>()};
}

} // namespace

void apply_config_json(JobConfig& c, const nlohmann::json& j) {
    if (!j.is_object()) throw UsageError("config: top level must be an object");
    try {
        for (const auto& [key, v] : j.items()) {
            if (key == "alpha1") {
                c.alpha1 = complex_from(v, "alpha1");
                c.state_from_user = true;
            } else if (key == "alpha2") {
                c.alpha2 = complex_from(v, "alpha2");
                c.state_from_user = true;
            } else if (key == "zeta") {
                c.zeta = complex_from(v, "zeta");
                c.state_from_user = true;
            } else if (key == "field") {
                c.field = field_from_string(v.get<std::string>());
            } else if (key == "bounds") {
                if (!v.is_array() || v.size() != 4) throw UsageError("bounds: expected [x_min, x_max, y_min, y_max]");
                c.x_min = v[0].get<double>();
                c.x_max = v[1].get<double>();
                c.y_min = v[2].get<double>();
                c.y_max = v[3].get<double>();
            } else if (key == "points") {
                if (!v.is_array() || v.size() != 2) throw UsageError("points: expected [nx, ny]");
                c.nx = v[0].get<int>();
                c.ny = v[1].get<int>();
            } else if (key == "gain") {
                c.gain = v.get<double>();
            } else if (key == "sigma") {
                c.sigma = v.get<double>();
            } else if (key == "fock") {
                c.fock = v.get<int>();
            } else if (key == "n_max") {
                c.n_max = v.get<int>();
            } else if (key == "z0") {
                c.z0 = complex_from(v, "z0");
            } else if (key == "sigma0") {
                c.sigma0 = v.get<double>();
            } else if (key == "levels") {
                c.levels = v.get<int>();
            } else if (key == "output") {
                c.output = v.get<std::string>();
            } else if (key == "format") {
                c.format = format_from_string(v.get<std::string>());
            } else if (key == "timestamp") {
                c.timestamp = v.get<std::string>();
            } else if (key == "inject_fault") {
                c.inject_fault = v.get<std::string>();
            } else if (key == "seed") {
                c.seed = v.get<unsigned>();
            } else {
                throw UsageError("config: unknown key '" + key + "'");
            }
        }
    } catch (const nlohmann::json::type_error& e) {
        throw UsageError(std::string("config: wrong value type: ") + e.what());
    }
}

} // namespace phasespace::cli
