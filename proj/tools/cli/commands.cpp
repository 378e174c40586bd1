#include "cli/commands.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <optional>

#include <CLI11.hpp>

#include <addcomb/ap_forms.hpp>
#include <addcomb/gowers.hpp>
#include <addcomb/primes.hpp>
#include <addcomb/serialize.hpp>
#include <addcomb/singular_series.hpp>
#include <addcomb/structure.hpp>

#include "cli/config.hpp"
#include "cli/report.hpp"
#include "cli/sources.hpp"

namespace addcomb::cli {

int exit_code(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::input: return 2;
        case ErrorKind::budget: return 3;
        case ErrorKind::consistency: return 4;
        case ErrorKind::not_found: return 5;
        case ErrorKind::io: return 6;
    }
    return 1;
}

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

Json trace_json(std::span<const TraceStep> trace) { return Json::parse(trace_to_json(trace)); }

void trace_table(Report& r, std::span<const TraceStep> trace) {
    r.columns = {"level", "kind", "frequency", "epsilon", "density_or_energy", "atom_count", "length", "q", "max_bhat"};
    for (const auto& s : trace) {
        r.rows.push_back({s.level, s.kind, s.frequency, s.epsilon, s.density_or_energy, s.atom_count, s.length, s.q,
                          s.max_bhat});
    }
}

// Options shared by every subcommand.
struct Globals {
    std::string config_path;
    std::uint64_t seed = 0;
    std::string output;
    std::string cache_dir;
    unsigned threads = 0;
};

RunConfig resolve(const CLI::App& app, const Globals& g) {
    RunConfig cfg;
    if (auto env = cache_dir_from_env()) cfg.cache_dir = *env;
    if (!g.config_path.empty()) apply_config_file(cfg, g.config_path);
    if (app.count("--seed")) cfg.seed = g.seed;
    if (app.count("--output")) cfg.output = parse_format(g.output);
    if (app.count("--cache-dir")) cfg.cache_dir = g.cache_dir;
    if (app.count("--threads")) {
        require(g.threads >= 1, "--threads must be positive");
        cfg.threads = g.threads;
    }
    return cfg;
}

using Action = std::function<Report(const RunConfig&)>;

// --- norm ------------------------------------------------------------------

struct NormArgs {
    std::string source;
    std::size_t modulus = 0;
    int d = 0;
    std::string p;
    std::string spectral_p;
};

Report cmd_norm(const NormArgs& a, const RunConfig& cfg) {
    const CyclicFn f = load_function(a.source, a.modulus, cfg);
    Report r;
    r.command = "norm";
    r.provenance = base_provenance(cfg);
    r.provenance["N"] = a.modulus;
    r.result["source"] = a.source;
    const int chosen = (a.d != 0) + !a.p.empty() + !a.spectral_p.empty();
    require(chosen == 1, "norm: give exactly one of --d, --p, --spectral-p");
    if (a.d != 0) {
        r.result["kind"] = "U" + std::to_string(a.d);
        r.result["value"] = u_norm(f, a.d, cfg.budget);
    } else if (!a.p.empty()) {
        r.result["kind"] = "L" + a.p;
        r.result["value"] = norm(f, parse_exponent(a.p));
    } else {
        r.result["kind"] = "spectral_l" + a.spectral_p;
        r.result["value"] = norm(dft(f), parse_exponent(a.spectral_p));
    }
    return r;
}

// --- form ------------------------------------------------------------------

struct FormArgs {
    std::vector<std::string> sources;
    std::size_t modulus = 0;
    bool direct = false;
};

Report cmd_form(const FormArgs& a, const RunConfig& cfg) {
    require(a.sources.size() >= 3, "form: need at least three --source options");
    std::vector<CyclicFn> fs;
    for (const auto& s : a.sources) fs.push_back(load_function(s, a.modulus, cfg));
    Report r;
    r.command = "form";
    r.provenance = base_provenance(cfg);
    r.provenance["N"] = a.modulus;
    r.result["k"] = fs.size();
    r.result["sources"] = a.sources;
    const bool spectral = fs.size() == 3 && !a.direct;
    r.result["method"] = spectral ? "spectral" : "direct";
    const cplx v = spectral ? lambda_k(fs, cfg.budget) : lambda_k_direct(fs, cfg.budget);
    r.result["lambda_re"] = v.real();
    r.result["lambda_im"] = v.imag();
    return r;
}

// --- decompose ---------------------------------------------------------------

struct DecomposeArgs {
    std::string source;
    std::size_t modulus = 0;
    double delta = 0.0;
    double tau = 0.05;
    std::size_t atom_budget = KvnParams{}.atom_budget;
    double epsilon_ratio = KvnParams{}.epsilon_ratio;
    std::string save_g;
};

Report cmd_decompose(const DecomposeArgs& a, const RunConfig& cfg) {
    const CyclicFn f = load_function(a.source, a.modulus, cfg);
    KvnParams params;
    params.atom_budget = a.atom_budget;
    params.epsilon_ratio = a.epsilon_ratio;
    const double delta = a.delta > 0.0 ? a.delta : expectation(f).real();
    const Decomposition d = kvn_decompose(f, delta, a.tau, params);
    if (!a.save_g.empty()) save_cyclic_fn(d.g, a.save_g);

    Report r;
    r.command = "decompose";
    r.provenance = base_provenance(cfg);
    r.provenance["N"] = a.modulus;
    r.provenance["atom_budget"] = a.atom_budget;
    r.provenance["epsilon_ratio"] = a.epsilon_ratio;
    r.result["source"] = a.source;
    r.result["status"] = d.status == KvnStatus::done ? "done" : "budget";
    r.result["delta"] = delta;
    r.result["tau"] = d.threshold_used;
    r.result["gain_floor"] = d.gain_floor;
    r.result["atom_count"] = d.atom_count;
    r.result["max_bhat"] = norm(dft(d.b), Exponent::infinity);
    r.result["energy"] = std::pow(norm(d.g, Exponent::two), 2);
    r.result["mean_f"] = expectation(f).real();
    r.result["mean_g"] = expectation(d.g).real();
    r.result["lambda3_g"] = lambda3_spectral(d.g, d.g, d.g).real();
    r.result["trace"] = trace_json(d.iterations);
    trace_table(r, d.iterations);
    return r;
}

// --- roth ------------------------------------------------------------------

struct RothArgs {
    std::string set;
    std::int64_t bound = 0;
    double delta = 0.0;
    std::int64_t min_length = RothParams{}.min_length;
};

Report cmd_roth(const RothArgs& a, const RunConfig& cfg) {
    const IntSet set = load_set(a.set, a.bound, cfg);
    RothParams params;
    params.min_length = a.min_length;
    const double delta = a.delta > 0.0 ? a.delta : set.density();
    const RothResult res = roth_density_increment_search(set, delta, params);
    Report r;
    r.command = "roth";
    r.provenance = base_provenance(cfg);
    r.provenance["N"] = a.bound;
    r.provenance["min_length"] = a.min_length;
    r.result["set"] = a.set;
    r.result["size"] = set.size();
    r.result["delta"] = delta;
    r.result["witness"] = {{"n", res.witness.n}, {"r", res.witness.r}};
    r.result["depth"] = res.trace.empty() ? 0 : res.trace.back().level;
    r.result["trace"] = trace_json(res.trace);
    trace_table(r, res.trace);
    return r;
}

// --- constants ---------------------------------------------------------------

struct ConstantsArgs {
    std::string name;
    unsigned k = 3;
    std::uint64_t truncation = 1'000'000;
    std::uint64_t n = 0;
};

Report cmd_constants(const ConstantsArgs& a, const RunConfig& cfg) {
    EulerProductResult res;
    std::string label = a.name;
    if (a.name == "B2") {
        res = constant_B2(a.truncation);
    } else if (a.name == "C3" || a.name == "C4" || a.name == "Ck") {
        const unsigned k = a.name == "Ck" ? a.k : static_cast<unsigned>(a.name[1] - '0');
        label = "C" + std::to_string(k);
        res = constant_C_k(k, a.truncation);
    } else if (a.name == "G2" || a.name == "G3") {
        require(a.n >= 1, a.name + ": --n is required");
        res = a.name == "G2" ? constant_G2(a.n, a.truncation) : constant_G3(a.n, a.truncation);
    } else {
        fail(ErrorKind::input, "constants: unknown name '" + a.name + "' (B2, C3, C4, Ck, G2, G3)");
    }
    Report r;
    r.command = "constants";
    r.provenance = base_provenance(cfg);
    if (a.n) r.provenance["N"] = a.n;
    r.result["name"] = label;
    r.result["value"] = res.value;
    r.result["tail_bound"] = res.tail_bound;
    r.result["truncation_prime"] = res.truncation_prime;
    return r;
}

// --- expsum ------------------------------------------------------------------

struct ExpsumArgs {
    std::uint64_t modulus = 0;
    std::int64_t xi = 0;
    std::size_t sweep = 0;
    std::uint64_t q_max = 20;
};

Report cmd_expsum(const ExpsumArgs& a, const RunConfig& cfg) {
    require(a.modulus >= 2, "expsum: --modulus must be at least 2");
    const SieveTables t = cached_sieve(a.modulus, cfg.cache_dir, cfg.budget);
    const double psi = chebyshev_psi(t, a.modulus - 1);
    Report r;
    r.command = "expsum";
    r.provenance = base_provenance(cfg);
    r.provenance["N"] = a.modulus;
    r.provenance["q_max"] = a.q_max;
    r.result["psi"] = psi;
    r.columns = {"xi", "re", "im", "abs_over_psi", "arc", "q"};
    std::vector<std::int64_t> xis;
    if (a.sweep > 0) {
        for (std::size_t i = 0; i < a.sweep; ++i) {
            xis.push_back(static_cast<std::int64_t>(i * a.modulus / a.sweep));
        }
    } else {
        xis.push_back(a.xi);
    }
    for (auto xi : xis) {
        const cplx s = exp_sum_mangoldt(t, a.modulus, xi);
        const FrequencyLabel lab = classify_frequency(a.modulus, xi, a.q_max);
        r.rows.push_back({xi, s.real(), s.imag(), std::abs(s) / psi, lab.major ? "major" : "minor", lab.q});
    }
    return r;
}

// --- count-aps ---------------------------------------------------------------

struct CountArgs {
    std::string set;
    std::int64_t bound = 0;
    unsigned k = 3;
    bool both = false;
};

Report cmd_count_aps(const CountArgs& a, const RunConfig& cfg) {
    const IntSet set = load_set(a.set, a.bound, cfg);
    const APReport rep = count_aps(set, a.k, !a.both);
    Report r;
    r.command = "count-aps";
    r.provenance = base_provenance(cfg);
    r.provenance["N"] = a.bound;
    r.result = Json::parse(rep.to_json());
    r.result["set"] = a.set;
    return r;
}

// --- vdc-verify --------------------------------------------------------------

struct VdcArgs {
    std::vector<std::uint64_t> sizes{100'000};
    unsigned k = 3;
    bool cyclic = false;
    std::uint64_t truncation = 0;
};

Report cmd_vdc_verify(const VdcArgs& a, const RunConfig& cfg) {
    require(a.k >= 3, "vdc-verify: k must be at least 3");
    require(!a.sizes.empty(), "vdc-verify: no sizes given");
    const std::uint64_t p = a.truncation ? a.truncation : (a.k == 3 ? 100'000 : 10'000);
    const EulerProductResult ref = constant_C_k(a.k, p);
    std::uint64_t top = 0;
    for (auto n : a.sizes) top = std::max(top, n);
    const SieveTables t = cached_sieve(std::max<std::uint64_t>(a.k * top, 2), cfg.cache_dir, cfg.budget);

    Report r;
    r.command = "vdc-verify";
    r.provenance = base_provenance(cfg);
    r.provenance["k"] = a.k;
    r.provenance["cyclic"] = a.cyclic;
    r.provenance["reference_truncation"] = p;
    r.result["reference"] = ref.value;
    r.result["reference_tail_bound"] = ref.tail_bound;
    r.columns = {"N", "observed", "reference", "ratio", "runtime_ms"};
    r.timing_columns = {"runtime_ms"};
    for (auto n : a.sizes) {
        const auto t0 = std::chrono::steady_clock::now();
        const double obs = mangoldt_ap_average(t, n, a.k, a.cyclic, cfg.threads);
        r.rows.push_back({n, obs, ref.value, obs / ref.value, elapsed_ms(t0)});
    }
    return r;
}

// --- sieve -------------------------------------------------------------------

Report cmd_sieve(std::uint64_t bound, const RunConfig& cfg) {
    const SieveTables t = cached_sieve(bound, cfg.cache_dir, cfg.budget);
    Report r;
    r.command = "sieve";
    r.provenance = base_provenance(cfg);
    r.provenance["N"] = bound;
    std::uint64_t primes = 0;
    for (auto v : t.is_prime) primes += v;
    r.result["bound"] = t.bound;
    r.result["prime_count"] = primes;
    r.result["psi"] = chebyshev_psi(t, bound);
    r.result["pnt_average"] = pnt_average(t, bound);
    r.result["cached"] = cfg.cache_dir.has_value();
    return r;
}

void report_error(std::ostream& err, std::string_view category, const std::string& message) {
    err << Json{{"error", std::string(category)}, {"message", message}}.dump() << '\n';
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Workbench for Fourier-analytic additive combinatorics on Z/NZ", "addcomb"};
    app.require_subcommand(1);
    app.fallthrough();  // global options may follow the subcommand
    app.set_help_all_flag("--help-all", "Show help for all subcommands");

    Globals g;
    app.add_option("--config", g.config_path, "key = value config file with [run], [budgets], [tolerances]");
    app.add_option("--seed", g.seed, "Seed for random sources");
    app.add_option("--output", g.output, "json, csv or plot");
    app.add_option("--cache-dir", g.cache_dir, "Directory for sieve caches (overrides ADDCOMB_CACHE_DIR)");
    app.add_option("--threads", g.threads, "Worker threads for parallel averages");

    Action action;

    NormArgs norm_args;
    auto* norm_cmd = app.add_subcommand("norm", "U^d, L^p or spectral l^p norm of a function");
    norm_cmd->add_option("--source", norm_args.source, "Function source")->required();
    norm_cmd->add_option("--modulus,-N", norm_args.modulus, "Modulus N")->required();
    norm_cmd->add_option("--d", norm_args.d, "Gowers order 1..4");
    norm_cmd->add_option("--p", norm_args.p, "L^p exponent: 1, 2, 4, inf");
    norm_cmd->add_option("--spectral-p", norm_args.spectral_p, "l^p exponent of the spectrum");
    norm_cmd->callback([&] { action = [&](const RunConfig& c) { return cmd_norm(norm_args, c); }; });

    FormArgs form_args;
    auto* form_cmd = app.add_subcommand("form", "Progression form Lambda_k of k functions");
    form_cmd->add_option("--source", form_args.sources, "Function source, once per slot")->required();
    form_cmd->add_option("--modulus,-N", form_args.modulus, "Modulus N")->required();
    form_cmd->add_flag("--direct", form_args.direct, "Use the double sum even for k = 3");
    form_cmd->callback([&] { action = [&](const RunConfig& c) { return cmd_form(form_args, c); }; });

    DecomposeArgs dec_args;
    auto* dec_cmd = app.add_subcommand("decompose", "Energy-increment decomposition f = g + b");
    dec_cmd->add_option("--source", dec_args.source, "Function source with values in [0, 1]")->required();
    dec_cmd->add_option("--modulus,-N", dec_args.modulus, "Modulus N")->required();
    dec_cmd->add_option("--delta", dec_args.delta, "Density floor (default E f)");
    dec_cmd->add_option("--tau", dec_args.tau, "Target max |bhat|")->capture_default_str();
    dec_cmd->add_option("--atom-budget", dec_args.atom_budget, "Atom budget")->capture_default_str();
    dec_cmd->add_option("--epsilon-ratio", dec_args.epsilon_ratio, "Cell side relative to max |bhat|")
        ->capture_default_str();
    dec_cmd->add_option("--save-g", dec_args.save_g, "Write g to this file (JSON, or binary for .bin)");
    dec_cmd->callback([&] { action = [&](const RunConfig& c) { return cmd_decompose(dec_args, c); }; });

    RothArgs roth_args;
    auto* roth_cmd = app.add_subcommand("roth", "Density-increment search for a 3-term progression");
    roth_cmd->add_option("--set", roth_args.set, "Set source")->required();
    roth_cmd->add_option("--bound,-N", roth_args.bound, "Ambient interval [1, N]")->required();
    roth_cmd->add_option("--delta", roth_args.delta, "Density floor (default |A|/N)");
    roth_cmd->add_option("--min-length", roth_args.min_length, "Exhaustive search below this length")
        ->capture_default_str();
    roth_cmd->callback([&] { action = [&](const RunConfig& c) { return cmd_roth(roth_args, c); }; });

    ConstantsArgs const_args;
    auto* const_cmd = app.add_subcommand("constants", "Singular-series constants with tail bounds");
    const_cmd->add_option("--name", const_args.name, "B2, C3, C4, Ck, G2, G3")->required();
    const_cmd->add_option("--k", const_args.k, "Progression length for Ck")->capture_default_str();
    const_cmd->add_option("--truncation,-P", const_args.truncation, "Largest prime in the product")
        ->capture_default_str();
    const_cmd->add_option("--n", const_args.n, "Argument N of G2 / G3");
    const_cmd->callback([&] { action = [&](const RunConfig& c) { return cmd_constants(const_args, c); }; });

    ExpsumArgs exp_args;
    auto* exp_cmd = app.add_subcommand("expsum", "sum_{n<N} Lambda(n) e_N(-n xi)");
    exp_cmd->add_option("--modulus,-N", exp_args.modulus, "N")->required();
    exp_cmd->add_option("--xi", exp_args.xi, "Frequency");
    exp_cmd->add_option("--sweep", exp_args.sweep, "Evaluate this many evenly spaced frequencies");
    exp_cmd->add_option("--q-max", exp_args.q_max, "Largest denominator for major arcs")->capture_default_str();
    exp_cmd->callback([&] { action = [&](const RunConfig& c) { return cmd_expsum(exp_args, c); }; });

    CountArgs count_args;
    auto* count_cmd = app.add_subcommand("count-aps", "Exact k-term progression count in a set");
    count_cmd->add_option("--set", count_args.set, "Set source")->required();
    count_cmd->add_option("--bound,-N", count_args.bound, "Ambient interval [1, N]")->required();
    count_cmd->add_option("--k", count_args.k, "Progression length")->capture_default_str();
    count_cmd->add_flag("--both-directions", count_args.both, "Count r < 0 as well");
    count_cmd->callback([&] { action = [&](const RunConfig& c) { return cmd_count_aps(count_args, c); }; });

    VdcArgs vdc_args;
    auto* vdc_cmd = app.add_subcommand("vdc-verify", "Average of Lambda along k-term progressions against C_k");
    vdc_cmd->add_option("--n,-N", vdc_args.sizes, "Range sizes (repeat or comma separate)")
        ->delimiter(',')
        ->capture_default_str();
    vdc_cmd->add_option("--k", vdc_args.k, "Progression length")->capture_default_str();
    vdc_cmd->add_flag("--cyclic", vdc_args.cyclic, "Average over Z/NZ instead of integer ranges");
    vdc_cmd->add_option("--truncation,-P", vdc_args.truncation, "Truncation of the reference C_k");
    vdc_cmd->callback([&] { action = [&](const RunConfig& c) { return cmd_vdc_verify(vdc_args, c); }; });

    std::uint64_t sieve_bound = 0;
    auto* sieve_cmd = app.add_subcommand("sieve", "Build (and cache) sieve tables");
    sieve_cmd->add_option("--bound,-N", sieve_bound, "N_max")->required();
    sieve_cmd->callback([&] { action = [&](const RunConfig& c) { return cmd_sieve(sieve_bound, c); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        report_error(err, to_string(ErrorKind::input), e.what());
        return exit_code(ErrorKind::input);
    }

    try {
        const RunConfig cfg = resolve(app, g);
        const Report rep = action(cfg);
        emit(rep, cfg.output, out);
        return 0;
    } catch (const Error& e) {
        report_error(err, to_string(e.kind()), e.what());
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        report_error(err, "internal", e.what());
        return 1;
    }
}

}  // namespace addcomb::cli
