#include "phasespace/io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace phasespace {

namespace {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string meta_value(const Json& v) {
    return v.is_string() ? v.get<std::string>() : v.dump();
}

Json parse_meta_value(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error&) {
        return text;
    }
}

void write_comment_block(std::ostream& out, const Json& obj) {
    for (const auto& [key, value] : obj.items()) out << "# " << key << ": " << meta_value(value) << '\n';
}

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

Json axes_json(const GridSpec& spec) {
    Json axes = Json::object();
    axes["semantics"] = std::string(to_string(spec.semantics));
    axes["x"] = Json{{"min", spec.x_min}, {"max", spec.x_max}, {"n", spec.nx}};
    axes["y"] = Json{{"min", spec.y_min}, {"max", spec.y_max}, {"n", spec.ny}};
    return axes;
}

GridSpec spec_from_axes(const Json& axes) {
    return GridSpec::make(axes.at("x").at("min").get<double>(), axes.at("x").at("max").get<double>(),
                          axes.at("y").at("min").get<double>(), axes.at("y").at("max").get<double>(),
                          axes.at("x").at("n").get<int>(), axes.at("y").at("n").get<int>(),
                          axis_semantics_from_string(axes.at("semantics").get<std::string>()));
}

} // namespace

void write_grid_csv(std::ostream& out, const GridDocument& doc) {
    const auto& spec = doc.grid.spec;
    Json header = Json::object();
    header["semantics"] = std::string(to_string(spec.semantics));
    header["x_min"] = spec.x_min;
    header["x_max"] = spec.x_max;
    header["nx"] = spec.nx;
    header["y_min"] = spec.y_min;
    header["y_max"] = spec.y_max;
    header["ny"] = spec.ny;
    write_comment_block(out, header);
    write_comment_block(out, doc.meta);
    out << "x,y,re,im\n";
    for (int i = 0; i < spec.nx; ++i) {
        for (int j = 0; j < spec.ny; ++j) {
            const Complex v = doc.grid.at(i, j);
            out << format_double(spec.x(i)) << ',' << format_double(spec.y(j)) << ',' << format_double(v.real())
                << ',' << format_double(v.imag()) << '\n';
        }
    }
    write_comment_block(out, doc.summary);
}

GridDocument read_grid_csv(std::istream& in) {
    Json meta = Json::object();
    Json summary = Json::object();
    std::vector<Complex> values;
    bool in_data = false;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto colon = line.find(':');
            if (colon == std::string::npos) continue;
            const std::string key = trim(line.substr(1, colon - 1));
            Json& target = in_data ? summary : meta;
            target[key] = parse_meta_value(trim(line.substr(colon + 1)));
            continue;
        }
        if (!in_data) {
            if (trim(line) != "x,y,re,im") throw DomainError("grid CSV: expected header 'x,y,re,im'");
            in_data = true;
            continue;
        }
        std::istringstream row(line);
        std::string cell[4];
        for (auto& c : cell) {
            if (!std::getline(row, c, ',')) throw DomainError("grid CSV: short row '" + line + "'");
        }
        values.emplace_back(std::stod(cell[2]), std::stod(cell[3]));
    }
    auto take = [&](const char* key) {
        if (!meta.contains(key)) throw DomainError(std::string("grid CSV: missing '") + key + "' header line");
        Json v = meta[key];
        meta.erase(key);
        return v;
    };
    const auto semantics = axis_semantics_from_string(take("semantics").get<std::string>());
    const double x_min = take("x_min").get<double>();
    const double x_max = take("x_max").get<double>();
    const int nx = take("nx").get<int>();
    const double y_min = take("y_min").get<double>();
    const double y_max = take("y_max").get<double>();
    const int ny = take("ny").get<int>();
    GridDocument doc{Grid2D::zeros(GridSpec::make(x_min, x_max, y_min, y_max, nx, ny, semantics)), meta, summary};
    if (values.size() != doc.grid.values.size()) {
        throw DomainError("grid CSV: expected " + std::to_string(doc.grid.values.size()) + " rows, found "
                          + std::to_string(values.size()));
    }
    doc.grid.values = std::move(values);
    return doc;
}

void write_grid_json(std::ostream& out, const GridDocument& doc) {
    Json j = Json::object();
    j["meta"] = doc.meta;
    j["axes"] = axes_json(doc.grid.spec);
    j["nx"] = doc.grid.spec.nx;
    j["ny"] = doc.grid.spec.ny;
    Json values = Json::array();
    for (const auto& v : doc.grid.values) values.push_back(Json::array({v.real(), v.imag()}));
    j["values"] = std::move(values);
    j["summary"] = doc.summary;
    out << j.dump(1) << '\n';
}

GridDocument read_grid_json(std::istream& in) {
    const Json j = Json::parse(in);
    GridDocument doc{Grid2D::zeros(spec_from_axes(j.at("axes"))), j.value("meta", Json::object()),
                     j.value("summary", Json::object())};
    const auto& values = j.at("values");
    if (values.size() != doc.grid.values.size()) throw DomainError("grid JSON: value count does not match axes");
    for (std::size_t k = 0; k < values.size(); ++k) {
        doc.grid.values[k] = {values[k].at(0).get<double>(), values[k].at(1).get<double>()};
    }
    return doc;
}

Json to_json(const FockDensityMatrix& rho) {
    Json entries = Json::array();
    for (int r = 0; r < rho.dim(); ++r) {
        for (int c = 0; c < rho.dim(); ++c) entries.push_back(Json::array({rho(r, c).real(), rho(r, c).imag()}));
    }
    return Json{{"n_max", rho.n_max}, {"entries", std::move(entries)}};
}

FockDensityMatrix density_matrix_from_json(const Json& j) {
    auto rho = FockDensityMatrix::zero(j.at("n_max").get<int>());
    const auto& entries = j.at("entries");
    if (entries.size() != static_cast<std::size_t>(rho.dim()) * rho.dim()) {
        throw DomainError("density matrix JSON: entry count does not match n_max");
    }
    std::size_t k = 0;
    for (int r = 0; r < rho.dim(); ++r) {
        for (int c = 0; c < rho.dim(); ++c, ++k) {
            rho.entries(r, c) = {entries[k].at(0).get<double>(), entries[k].at(1).get<double>()};
        }
    }
    return rho;
}

Json to_json(const RoundTripReport& report) {
    Json checks = Json::array();
    for (const auto& c : report.per_term_checks) {
        checks.push_back(Json{{"term", c.index}, {"matched", c.matched}, {"deviation", c.deviation}});
    }
    return Json{{"n_max", report.n_max},
                {"max_abs_deviation", report.max_abs_deviation},
                {"trace_deviation", report.trace_deviation},
                {"per_term_checks", std::move(checks)}};
}

} // namespace phasespace
