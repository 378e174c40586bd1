#include "cli/report.hpp"

#include <algorithm>

namespace addcomb::cli {

Json base_provenance(const RunConfig& cfg) {
    Json p;
    p["seed"] = cfg.seed;
    p["budgets"] = budget_map(cfg.budget);
    p["tolerance"] = {{"rel", cfg.tolerance.rel}, {"abs_floor", cfg.tolerance.abs_floor}};
    p["threads"] = cfg.threads;
    return p;
}

namespace {

std::string cell(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_null()) return "";
    return v.dump();
}

bool is_timing(const Report& r, const std::string& col) {
    return std::find(r.timing_columns.begin(), r.timing_columns.end(), col) != r.timing_columns.end();
}

}  // namespace

void emit(const Report& report, OutputFormat format, std::ostream& out) {
    if (format == OutputFormat::json) {
        Json doc = report.result;
        doc["schema"] = 1;
        doc["command"] = report.command;
        doc["provenance"] = report.provenance;
        if (!report.columns.empty()) {
            Json rows = Json::array();
            for (const auto& row : report.rows) {
                Json obj = Json::object();
                for (std::size_t c = 0; c < report.columns.size(); ++c) {
                    if (!is_timing(report, report.columns[c])) obj[report.columns[c]] = row[c];
                }
                rows.push_back(std::move(obj));
            }
            doc["rows"] = std::move(rows);
        }
        out << doc.dump(2) << '\n';
        return;
    }

    std::vector<std::string> columns = report.columns;
    std::vector<std::vector<Json>> rows = report.rows;
    if (columns.empty()) {
        std::vector<Json> row;
        for (const auto& [key, value] : report.result.items()) {
            if (value.is_structured()) continue;
            columns.push_back(key);
            row.push_back(value);
        }
        rows.push_back(std::move(row));
    }

    const char sep = format == OutputFormat::csv ? ',' : ' ';
    if (format == OutputFormat::plot) out << "# ";
    for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? std::string(1, sep) : "") << columns[c];
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) out << (c ? std::string(1, sep) : "") << cell(row[c]);
        out << '\n';
    }
}

}  // namespace addcomb::cli
