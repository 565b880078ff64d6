#include "app.hpp"

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "phasespace/amplifier.hpp"
#include "phasespace/gendelta.hpp"
#include "phasespace/io.hpp"
#include "phasespace/quasiprob.hpp"
#include "phasespace/reconstruct.hpp"
#include "phasespace/states.hpp"
#include "verify.hpp"

namespace phasespace::cli {

namespace {

constexpr const char* kVersion = "0.1.0";

Json pair(Complex z) {
    return Json::array({z.real(), z.imag()});
}

// Raw flag storage; an option's count() tells whether the user gave it.
struct Flags {
    std::string config_path;
    std::vector<double> alpha1, alpha2, zeta, bounds, z0;
    std::vector<int> points;
    std::string field, format, output, timestamp, inject_fault;
    double gain = 0.0, sigma = 0.0, sigma0 = 0.0;
    int fock = 0, n_max = 0, levels = 0;
    unsigned seed = 0;
    std::vector<std::pair<std::string, CLI::Option*>> options;

    // Options are registered per subcommand; only the parsed one can have a count.
    bool given(const std::string& name) const {
        for (const auto& [n, o] : options) {
            if (n == name && o->count() > 0) return true;
        }
        return false;
    }
};

void add_state_flags(CLI::App* sub, Flags& f) {
    f.options.emplace_back("alpha1", sub->add_option("--alpha1", f.alpha1, "First coherent amplitude as RE IM")->expected(2));
    f.options.emplace_back("alpha2", sub->add_option("--alpha2", f.alpha2, "Second coherent amplitude as RE IM")->expected(2));
    f.options.emplace_back("zeta", sub->add_option("--zeta", f.zeta, "Relative coefficient as RE IM")->expected(2));
}

void add_output_flags(CLI::App* sub, Flags& f) {
    f.options.emplace_back("output", sub->add_option("--output,-o", f.output, "Output path ('-' for stdout)"));
    f.options.emplace_back("timestamp", sub->add_option("--timestamp", f.timestamp, "Timestamp recorded in metadata"));
}

void add_grid_flags(CLI::App* sub, Flags& f) {
    f.options.emplace_back("bounds", sub->add_option("--bounds", f.bounds, "X_MIN X_MAX Y_MIN Y_MAX")->expected(4));
    f.options.emplace_back("points", sub->add_option("--points", f.points, "NX NY")->expected(2));
    f.options.emplace_back("gain", sub->add_option("--gain", f.gain, "Amplitude gain g >= 1"));
    f.options.emplace_back("format", sub->add_option("--format", f.format, "csv or json"));
}

JobConfig build_config(Command command, const Flags& f) {
    JobConfig c;
    c.command = command;
    if (command == Command::Amplify) c.field = Field::Q;
    if (command == Command::Roundtrip || command == Command::Sift || command == Command::Verify) c.format = Format::Json;
    if (!f.config_path.empty()) {
        std::ifstream in(f.config_path);
        if (!in) throw UsageError("config: cannot open '" + f.config_path + "'");
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(in);
        } catch (const nlohmann::json::parse_error& e) {
            throw UsageError(std::string("config: ") + e.what());
        }
        apply_config_json(c, j);
    }
    auto as_complex = [](const std::vector<double>& v) { return Complex{v[0], v[1]}; };
    if (f.given("alpha1")) c.alpha1 = as_complex(f.alpha1), c.state_from_user = true;
    if (f.given("alpha2")) c.alpha2 = as_complex(f.alpha2), c.state_from_user = true;
    if (f.given("zeta")) c.zeta = as_complex(f.zeta), c.state_from_user = true;
    if (f.given("field")) c.field = field_from_string(f.field);
    if (f.given("bounds")) {
        c.x_min = f.bounds[0];
        c.x_max = f.bounds[1];
        c.y_min = f.bounds[2];
        c.y_max = f.bounds[3];
    }
    if (f.given("points")) {
        c.nx = f.points[0];
        c.ny = f.points[1];
    }
    if (f.given("gain")) c.gain = f.gain;
    if (f.given("sigma")) c.sigma = f.sigma;
    if (f.given("fock")) c.fock = f.fock;
    if (f.given("n_max")) c.n_max = f.n_max;
    if (f.given("z0")) c.z0 = as_complex(f.z0);
    if (f.given("sigma0")) c.sigma0 = f.sigma0;
    if (f.given("levels")) c.levels = f.levels;
    if (f.given("output")) c.output = f.output;
    if (f.given("format")) c.format = format_from_string(f.format);
    if (f.given("timestamp")) c.timestamp = f.timestamp;
    if (f.given("inject_fault")) c.inject_fault = f.inject_fault;
    if (f.given("seed")) c.seed = f.seed;
    c.validate();
    return c;
}

// Writes to the configured path, or to `fallback` for "-".
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) {
        if (path.empty() || path == "-") {
            stream_ = &fallback;
        } else {
            file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
            if (!*file_) throw UsageError("output: cannot open '" + path + "' for writing");
            stream_ = file_.get();
        }
    }
    std::ostream& stream() { return *stream_; }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* stream_ = nullptr;
};

Json base_meta(const JobConfig& c) {
    Json meta = Json::object();
    meta["tool"] = "phasespace";
    meta["version"] = kVersion;
    meta["command"] = std::string(to_string(c.command));
    meta["timestamp"] = c.timestamp;
    return meta;
}

void add_state_meta(Json& meta, const JobConfig& c, const CatStateSpec& spec) {
    meta["alpha1"] = pair(spec.alpha1());
    meta["alpha2"] = pair(spec.alpha2());
    meta["zeta"] = pair(spec.zeta());
    meta["norm_A"] = spec.norm();
    meta["parameter_source"] = c.state_from_user ? "user" : "demonstration defaults";
}

int numeric_refusal(std::ostream& err, const std::string& message) {
    err << "phasespace: " << message << '\n';
    return kExitNumericGuard;
}

int run_grid(const JobConfig& c, std::ostream& out, std::ostream& err) {
    const CatStateSpec spec(c.alpha1, c.alpha2, c.zeta);
    const double g = c.effective_gain();
    if (c.field == Field::PAmplified && g == 1.0) {
        return numeric_refusal(err, "p_amplified at g = 1 refused: sigma_of_gain(1) = 0, so the P-function is a sum "
                                    "of generalized delta functions and cannot be plotted; use --field "
                                    "p_regularized --sigma S or a gain above 1");
    }
    const AmplifierGain gain(g);
    Warnings warnings;
    GridDocument doc;
    doc.meta = base_meta(c);
    doc.meta["field"] = std::string(to_string(c.field));
    const bool xp = c.field == Field::Wigner;
    const auto grid = GridSpec::make(c.x_min, c.x_max, c.y_min, c.y_max, c.nx, c.ny,
                                     xp ? AxisSemantics::XPQuadratures : AxisSemantics::AlphaPlane);
    switch (c.field) {
    case Field::Q:
        doc.meta["formula"] = gain.is_identity() ? "husimi_q_cat" : "husimi_q_amplified";
        add_state_meta(doc.meta, c, spec);
        doc.meta["gain"] = g;
        doc.meta["sigma"] = gain.sigma();
        doc.grid = sample(grid, [&](Complex a) { return Complex{amplify_q(spec, gain, a), 0.0}; });
        break;
    case Field::Wigner:
        if (c.fock) {
            doc.meta["formula"] = "wigner_fock_quadrature";
            doc.meta["fock"] = *c.fock;
            doc.grid = wigner_fock(*c.fock, grid, &warnings);
        } else {
            const int n_max = c.n_max.value_or(recommended_n_max(spec.max_amplitude()));
            doc.meta["formula"] = "wigner_density_quadrature";
            add_state_meta(doc.meta, c, spec);
            doc.meta["n_max"] = n_max;
            doc.grid = wigner_density(cat_density_matrix(spec, n_max, &warnings), grid, &warnings);
        }
        break;
    case Field::PRegularized: {
        doc.meta["formula"] = "p_regularized_gaussian_pairs";
        add_state_meta(doc.meta, c, spec);
        doc.meta["sigma"] = c.sigma;
        const auto rep = p_cat_terms(spec);
        doc.grid = sample(grid, [&](Complex a) { return p_regularized_eval(rep, c.sigma, a); });
        break;
    }
    case Field::PAmplified:
        doc.meta["formula"] = "amplified_p_gaussian";
        add_state_meta(doc.meta, c, spec);
        doc.meta["gain"] = g;
        doc.meta["sigma"] = gain.sigma();
        doc.grid = sample(grid, [&](Complex a) { return Complex{amplified_p(spec, gain, a), 0.0}; });
        break;
    }
    doc.meta["axes"] = std::string(to_string(grid.semantics));
    const Complex integral = doc.grid.integral();
    doc.summary["integral"] = pair(integral);
    doc.summary["min_real"] = doc.grid.min_real();
    doc.summary["max_real"] = doc.grid.max_real();
    doc.summary["max_abs_imag"] = doc.grid.max_abs_imag();
    doc.summary["has_negative_values"] = doc.grid.min_real() < 0.0;
    Json notes = Json::array();
    for (const auto& w : warnings.messages()) {
        notes.push_back(w);
        err << "phasespace: warning: " << w << '\n';
    }
    doc.summary["warnings"] = notes;

    Sink sink(c.output, out);
    if (c.format == Format::Csv) {
        write_grid_csv(sink.stream(), doc);
    } else {
        write_grid_json(sink.stream(), doc);
    }
    return kExitOk;
}

PRepresentation maybe_faulted(const JobConfig& c, PRepresentation rep) {
    if (c.inject_fault == "flip-center-sign") {
        for (auto& t : rep.terms) t.center_i = -t.center_i;
    }
    return rep;
}

int run_roundtrip(const JobConfig& c, std::ostream& out, std::ostream& err) {
    const CatStateSpec spec(c.alpha1, c.alpha2, c.zeta);
    const int n_max = c.n_max.value_or(std::max(30, recommended_n_max(spec.max_amplitude())));
    const auto report = roundtrip_report(spec, maybe_faulted(c, p_cat_terms(spec)), n_max);
    Json doc = Json::object();
    Json meta = base_meta(c);
    add_state_meta(meta, c, spec);
    if (!c.inject_fault.empty()) meta["inject_fault"] = c.inject_fault;
    doc["meta"] = meta;
    doc["report"] = to_json(report);
    doc["passed"] = report.passed(1e-8);
    Sink sink(c.output, out);
    sink.stream() << doc.dump(2) << '\n';
    if (!report.passed(1e-8)) {
        err << "phasespace: round trip deviation " << report.max_abs_deviation << " exceeds 1e-8\n";
        return kExitVerificationFailed;
    }
    return kExitOk;
}

struct PanelEntry {
    std::string name;
    AnalyticTestFunction f;
};

std::vector<PanelEntry> sift_panel() {
    return {
        {"1", AnalyticTestFunction::monomial(0)},
        {"x", AnalyticTestFunction::monomial(1)},
        {"x^2", AnalyticTestFunction::monomial(2)},
        {"x^4", AnalyticTestFunction::monomial(4)},
        {"exp(-x^2/4)(1+x)", AnalyticTestFunction::gaussian_envelope(std::sqrt(2.0), {Complex{1.0}, Complex{1.0}})},
    };
}

int run_sift(const JobConfig& c, std::ostream& out, std::ostream& err) {
    const auto sigmas = sigma_schedule(c.sigma0, c.levels);
    Json records = Json::array();
    for (const auto& entry : sift_panel()) {
        Warnings warnings;
        Json direct = Json::array();
        Json shifted = Json::array();
        Json factors = Json::array();
        std::vector<Complex> shifted_values;
        for (double s : sigmas) {
            factors.push_back(cancellation_factor(c.z0.imag(), s));
            try {
                direct.push_back(pair(sift(entry.f, c.z0, s, &warnings)));
            } catch (const RegularizationError& e) {
                direct.push_back(nullptr);
                warnings.add(e.what());
            }
            shifted_values.push_back(sift_shifted_line(entry.f, c.z0, s));
            shifted.push_back(pair(shifted_values.back()));
        }
        const auto limit = richardson_limit(sigmas, shifted_values);
        Json rec = Json::object();
        rec["function"] = entry.name;
        rec["z0"] = pair(c.z0);
        rec["sigma_schedule"] = sigmas;
        rec["direct"] = direct;
        rec["shifted"] = shifted;
        rec["continuation"] = pair(entry.f(c.z0));
        rec["cancellation_factor"] = factors;
        rec["extrapolated"] = pair(limit.extrapolated);
        rec["richardson_ratios"] = limit.ratios;
        rec["warnings"] = warnings.messages();
        for (const auto& w : warnings.messages()) err << "phasespace: warning [" << entry.name << "]: " << w << '\n';
        records.push_back(std::move(rec));
    }
    Json doc = Json::object();
    doc["meta"] = base_meta(c);
    doc["records"] = std::move(records);
    Sink sink(c.output, out);
    sink.stream() << doc.dump(2) << '\n';
    return kExitOk;
}

int run_verify(const JobConfig& c, std::ostream& out, std::ostream&) {
    verify::VerifyOptions options;
    options.flip_center_sign = c.inject_fault == "flip-center-sign";
    options.seed = c.seed;
    const auto results = verify::run_all(options);
    bool all = true;
    for (const auto& r : results) {
        out << verify::format_line(r) << '\n';
        all = all && r.passed;
    }
    if (c.output != "-") {
        Json doc = Json::object();
        Json meta = base_meta(c);
        if (!c.inject_fault.empty()) meta["inject_fault"] = c.inject_fault;
        doc["meta"] = meta;
        doc["result"] = verify::to_json(results);
        Sink sink(c.output, out);
        sink.stream() << doc.dump(2) << '\n';
    }
    out << (all ? "all criteria passed" : "verification FAILED") << '\n';
    return all ? kExitOk : kExitVerificationFailed;
}

} // namespace

int execute(const JobConfig& c, std::ostream& out, std::ostream& err) {
    switch (c.command) {
    case Command::Grid:
    case Command::Amplify: return run_grid(c, out, err);
    case Command::Roundtrip: return run_roundtrip(c, out, err);
    case Command::Sift: return run_sift(c, out, err);
    case Command::Verify: return run_verify(c, out, err);
    }
    return kExitUsage;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Phase-space toolkit for cat states: Q, Wigner and P functions, amplifier, reconstruction"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    Flags f;
    struct Sub {
        Command command;
        CLI::App* app;
    };
    std::vector<Sub> subs;

    auto* grid = app.add_subcommand("grid", "Sample Q, Wigner or P over a grid");
    add_state_flags(grid, f);
    add_grid_flags(grid, f);
    add_output_flags(grid, f);
    f.options.emplace_back("field", grid->add_option("--field", f.field, "q | wigner | p_regularized | p_amplified"));
    f.options.emplace_back("sigma", grid->add_option("--sigma", f.sigma, "Regularization width for p_regularized"));
    f.options.emplace_back("fock", grid->add_option("--fock", f.fock, "Fock index for a Wigner grid"));
    f.options.emplace_back("n_max", grid->add_option("--n-max", f.n_max, "Fock truncation for cat Wigner grids"));
    subs.push_back({Command::Grid, grid});

    auto* amplify = app.add_subcommand("amplify", "Q or P of the amplified cat over a grid");
    add_state_flags(amplify, f);
    add_grid_flags(amplify, f);
    add_output_flags(amplify, f);
    f.options.emplace_back("field", amplify->add_option("--field", f.field, "q | p"));
    subs.push_back({Command::Amplify, amplify});

    auto* roundtrip = app.add_subcommand("roundtrip", "Rebuild rho from the P terms and compare");
    add_state_flags(roundtrip, f);
    add_output_flags(roundtrip, f);
    f.options.emplace_back("n_max", roundtrip->add_option("--n-max", f.n_max, "Fock truncation"));
    f.options.emplace_back("inject_fault", roundtrip->add_option("--inject-fault", f.inject_fault, "flip-center-sign"));
    subs.push_back({Command::Roundtrip, roundtrip});

    auto* sift_cmd = app.add_subcommand("sift", "Sifting records over a sigma schedule");
    add_output_flags(sift_cmd, f);
    f.options.emplace_back("z0", sift_cmd->add_option("--z0", f.z0, "Sifting point as RE IM")->expected(2));
    f.options.emplace_back("sigma0", sift_cmd->add_option("--sigma0", f.sigma0, "Largest sigma of the schedule"));
    f.options.emplace_back("levels", sift_cmd->add_option("--levels", f.levels, "Number of halvings + 1"));
    subs.push_back({Command::Sift, sift_cmd});

    auto* verify_cmd = app.add_subcommand("verify", "Run the acceptance criteria");
    add_output_flags(verify_cmd, f);
    f.options.emplace_back("inject_fault",
                           verify_cmd->add_option("--inject-fault", f.inject_fault, "flip-center-sign"));
    f.options.emplace_back("seed", verify_cmd->add_option("--seed", f.seed, "Seed for randomized specs"));
    subs.push_back({Command::Verify, verify_cmd});

    for (auto& s : subs) s.app->add_option("--config", f.config_path, "JSON config file; flags override it");

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        for (const auto& s : subs) {
            if (s.app->parsed()) return execute(build_config(s.command, f), out, err);
        }
        return kExitUsage;
    } catch (const UsageError& e) {
        err << "phasespace: usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DegenerateStateError& e) {
        err << "phasespace: usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "phasespace: usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "phasespace: numeric guard: " << e.what() << '\n';
        return kExitNumericGuard;
    } catch (const InternalError& e) {
        err << "phasespace: internal check failed: " << e.what() << '\n';
        return kExitNumericGuard;
    }
}

} // namespace phasespace::cli
