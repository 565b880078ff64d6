#pragma once

#include <iosfwd>

#include <nlohmann/json.hpp>

#include "phasespace/grid.hpp"
#include "phasespace/reconstruct.hpp"
#include "phasespace/states.hpp"

namespace phasespace {

using Json = nlohmann::ordered_json;

/// A grid plus the metadata written above it and the summary written below.
/// Both are flat JSON objects; insertion order is preserved on output.
struct GridDocument {
    Grid2D grid;
    Json meta = Json::object();
    Json summary = Json::object();
};

/// CSV layout:
///   # key: value            (meta, axes first)
///   x,y,re,im
///   <one row per point, x-major, %.17g>
///   # key: value            (summary)
void write_grid_csv(std::ostream& out, const GridDocument& doc);
GridDocument read_grid_csv(std::istream& in);

/// {meta, axes: {semantics, x: {min, max, n}, y: {...}}, nx, ny,
///  values: [[re, im], ...] row-major, summary}
void write_grid_json(std::ostream& out, const GridDocument& doc);
GridDocument read_grid_json(std::istream& in);

Json to_json(const FockDensityMatrix& rho);
FockDensityMatrix density_matrix_from_json(const Json& j);

Json to_json(const RoundTripReport& report);

} // namespace phasespace
