#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli/config.hpp"

namespace addcomb::cli {

using Json = nlohmann::json;  // std::map-backed, so keys come out sorted

/// Output of one command: scalar results plus an optional table.
struct Report {
    std::string command;
    Json result = Json::object();
    Json provenance = Json::object();
    std::vector<std::string> columns;
    std::vector<std::vector<Json>> rows;
    // Columns left out of JSON output so it stays byte-for-byte reproducible.
    std::vector<std::string> timing_columns;
};

/// Base provenance record: seed, budgets, tolerances.
Json base_provenance(const RunConfig& cfg);

/// json: {"schema": 1, "command", "provenance", result fields..., "rows"}
/// csv:  header + rows (or the scalar results as a single row)
/// plot: "# col ..." header, whitespace-separated rows
void emit(const Report& report, OutputFormat format, std::ostream& out);

}  // namespace addcomb::cli
