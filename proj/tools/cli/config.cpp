#include "cli/config.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include <addcomb/error.hpp>

namespace addcomb::cli {

OutputFormat parse_format(const std::string& text) {
    if (text == "json") return OutputFormat::json;
    if (text == "csv") return OutputFormat::csv;
    if (text == "plot") return OutputFormat::plot;
    fail(ErrorKind::input, "unknown output format '" + text + "' (json, csv, plot)");
}

std::string to_string(OutputFormat f) {
    switch (f) {
        case OutputFormat::json: return "json";
        case OutputFormat::csv: return "csv";
        case OutputFormat::plot: return "plot";
    }
    return "json";
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::uint64_t parse_positive(const std::string& key, const std::string& value) {
    std::uint64_t v = 0;
    const auto* end = value.data() + value.size();
    auto [ptr, ec] = std::from_chars(value.data(), end, v);
    if (ec != std::errc{} || ptr != end) fail(ErrorKind::input, key + ": expected an unsigned integer, got '" + value + "'");
    if (v == 0) fail(ErrorKind::input, key + ": must be positive");
    return v;
}

double parse_real(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != value.size() || !(v > 0.0)) fail(ErrorKind::input, key + ": expected a positive real, got '" + value + "'");
    return v;
}

}  // namespace

void set_config_value(RunConfig& cfg, const std::string& section, const std::string& key,
                      const std::string& value) {
    const std::string name = section + "." + key;
    if (section == "run") {
        if (key == "seed") {
            std::uint64_t v = 0;
            const auto* end = value.data() + value.size();
            auto [ptr, ec] = std::from_chars(value.data(), end, v);
            if (ec != std::errc{} || ptr != end) fail(ErrorKind::input, name + ": expected an unsigned integer");
            cfg.seed = v;
        } else if (key == "output") {
            cfg.output = parse_format(value);
        } else if (key == "cache_dir") {
            cfg.cache_dir = value;
        } else if (key == "threads") {
            cfg.threads = static_cast<unsigned>(parse_positive(name, value));
        } else {
            fail(ErrorKind::input, "unknown config key " + name);
        }
        return;
    }
    if (section == "budgets") {
        Budget& b = cfg.budget;
        if (key == "u1_max_n") b.u_norm_max_n[1] = parse_positive(name, value);
        else if (key == "u2_max_n") b.u_norm_max_n[2] = parse_positive(name, value);
        else if (key == "u3_max_n") b.u_norm_max_n[3] = parse_positive(name, value);
        else if (key == "u4_max_n") b.u_norm_max_n[4] = parse_positive(name, value);
        else if (key == "box_pairs") b.box_pairs = parse_positive(name, value);
        else if (key == "dual_max_n") b.dual_max_n = parse_positive(name, value);
        else if (key == "lambda_pairs") b.lambda_pairs = parse_positive(name, value);
        else if (key == "quadruple_max_p") b.quadruple_max_p = parse_positive(name, value);
        else if (key == "sieve_max") b.sieve_max = parse_positive(name, value);
        else if (key == "w_max") b.w_max = parse_positive(name, value);
        else fail(ErrorKind::input, "unknown config key " + name);
        return;
    }
    if (section == "tolerances") {
        if (key == "rel") cfg.tolerance.rel = parse_real(name, value);
        else if (key == "abs_floor") cfg.tolerance.abs_floor = parse_real(name, value);
        else fail(ErrorKind::input, "unknown config key " + name);
        return;
    }
    fail(ErrorKind::input, "unknown config section [" + section + "]");
}

void apply_config_text(RunConfig& cfg, const std::string& text, const std::string& origin) {
    std::istringstream in(text);
    std::string line;
    std::string section;
    std::set<std::string> seen;
    for (int lineno = 1; std::getline(in, line); ++lineno) {
        const std::string where = origin + ":" + std::to_string(lineno) + ": ";
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(ErrorKind::input, where + "malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "run" && section != "budgets" && section != "tolerances") {
                fail(ErrorKind::input, where + "unknown section [" + section + "]");
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail(ErrorKind::input, where + "expected key = value");
        if (section.empty()) fail(ErrorKind::input, where + "key outside of any section");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!seen.insert(section + "." + key).second) fail(ErrorKind::input, where + "duplicate key " + key);
        try {
            set_config_value(cfg, section, key, value);
        } catch (const Error& e) {
            fail(e.kind(), where + e.what());
        }
    }
}

void apply_config_file(RunConfig& cfg, const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::io, "cannot read config file " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    apply_config_text(cfg, ss.str(), path.string());
}

std::map<std::string, std::uint64_t> budget_map(const Budget& b) {
    return {
        {"box_pairs", b.box_pairs},
        {"dual_max_n", b.dual_max_n},
        {"lambda_pairs", b.lambda_pairs},
        {"quadruple_max_p", b.quadruple_max_p},
        {"sieve_max", b.sieve_max},
        {"u1_max_n", b.u_norm_max_n[1]},
        {"u2_max_n", b.u_norm_max_n[2]},
        {"u3_max_n", b.u_norm_max_n[3]},
        {"u4_max_n", b.u_norm_max_n[4]},
        {"w_max", b.w_max},
    };
}

}  // namespace addcomb::cli
