#pragma once

#include <filesystem>
#include <json.hpp>
#include <string>

#include "potentia/grid.hpp"
#include "potentia/measures.hpp"
#include "potentia/symbolic.hpp"
#include "potentia/weights.hpp"

namespace potentia::io {

/// Insertion-ordered, matching the report writer.
using json = nlohmann::ordered_json;

/// Complex numbers are {re, im} objects; bare numbers are read as real.
Complex complex_from_json(const json& j);
json complex_to_json(Complex z);

json read_json(const std::filesystem::path& path);

/// {dim, order, e_dim, f_dim, terms: [{alpha, matrix}]}, or {catalog: name, dim}.
HomogeneousOperator operator_from_json(const json& j);
json operator_to_json(const HomogeneousOperator& op);
HomogeneousOperator load_operator(const std::filesystem::path& path);

/// "n=256,L=4[,N=2]"; N defaults to `default_dim`.
Grid parse_grid(const std::string& spec, int default_dim = 2);
Grid grid_from_json(const json& j);
json grid_to_json(const Grid& g);

/// {kind: "power", alpha[, dim]} or {kind: "grid", grid, values_path} with
/// row-major doubles (binary, or CSV when the path ends in .csv).
Weight weight_from_json(const json& j, const std::filesystem::path& base, int default_dim);
/// "power:<alpha>" shorthand or a path to a weight file.
Weight parse_weight(const std::string& spec, int dim);

/// {kind: "atomic", points, values} or {kind: "density", grid, components, values_path}
/// with node-major complex doubles (binary, or CSV of re,im pairs).
Measure measure_from_json(const json& j, const std::filesystem::path& base);
json measure_to_json(const Measure& mu);
Measure load_measure(const std::filesystem::path& path);

/// Binary snapshot: "POTFIELD", int32 dim, double L, int32 n, int32 d, then
/// n^N * d complex doubles (node-major, components fastest).
void write_field(const std::filesystem::path& path, const Field& f);
Field read_field(const std::filesystem::path& path);

/// CSV of a 1-D field or a 2-D slice (3-D fields are cut at the middle of the
/// last axis): coordinates, then re/im per component.
void write_field_csv(const std::filesystem::path& path, const Field& f);

}  // namespace potentia::io
