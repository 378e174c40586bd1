#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include <addcomb/budget.hpp>

namespace addcomb::cli {

enum class OutputFormat { json, csv, plot };

OutputFormat parse_format(const std::string& text);
std::string to_string(OutputFormat f);

struct RunConfig {
    std::uint64_t seed = 1;
    Budget budget;
    Tolerance tolerance;
    std::optional<std::filesystem::path> cache_dir;
    OutputFormat output = OutputFormat::json;
    unsigned threads = 1;
};

/// Parses
///
///   # comment
///   [run]
///   seed = 7
///   [budgets]
///   sieve_max = 1000000
///
/// Unknown sections or keys, duplicate keys and malformed values throw
/// ErrorKind::input.
void apply_config_text(RunConfig& cfg, const std::string& text, const std::string& origin = "config");
void apply_config_file(RunConfig& cfg, const std::filesystem::path& path);

/// Sets one "section.key" entry, with the same validation as the file parser.
void set_config_value(RunConfig& cfg, const std::string& section, const std::string& key,
                      const std::string& value);

/// Budgets as a flat name -> value map, for provenance records.
std::map<std::string, std::uint64_t> budget_map(const Budget& b);

}  // namespace addcomb::cli
