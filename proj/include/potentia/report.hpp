#pragma once

#include <cstdint>
#include <filesystem>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "potentia/conditions.hpp"
#include "potentia/inequality.hpp"
#include "potentia/solver.hpp"
#include "potentia/symbolic.hpp"
#include "potentia/weights.hpp"

namespace potentia::report {

/// Insertion-ordered so that serialisation is stable.
using json = nlohmann::ordered_json;

/// Non-finite values become null.
json number(double v);
json point(const Point& p);
json complex_value(Complex z);

/// Report skeleton: schema and tool version, command, seed, grid (or null),
/// empty samples / conditions / parameters / results sections.
json envelope(const std::string& command, std::uint64_t seed, const std::optional<Grid>& grid);
/// Appends a condition identifier once.
void add_condition(json& report, const std::string& id);

json to_json(const Grid& g);
json to_json(const EllipticityReport& r);
json to_json(const ApEstimate& r);
json to_json(const ConditionReport& r);
json to_json(const ImplicationReport& r);
json to_json(const TestInput& t);
json to_json(const ConstantEstimate& r);
json to_json(const BatchReport& r);
json to_json(const WeakResidualReport& r);
json to_json(const EnergyIdentityReport& r);
json to_json(const EnergyReport& r);
json to_json(const VanishingReport& r);
/// Everything except the field values.
json to_json(const SolveResult& r);

/// Two-space indentation and a trailing newline.
std::string serialize(const json& report);

/// Creates `dir` if needed; InputError when it cannot be written.
void write_text(const std::filesystem::path& path, const std::string& text);
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);
/// Shortest round-trip decimal form; "nan"/"inf" for non-finite values.
std::string csv_number(double v);

}  // namespace potentia::report
