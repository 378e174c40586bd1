#include "cli/sources.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include <addcomb/error.hpp>
#include <addcomb/modarith.hpp>
#include <addcomb/primes.hpp>
#include <addcomb/serialize.hpp>

namespace addcomb::cli {

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

namespace {

std::int64_t to_int(const std::string& s, const std::string& what) {
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
        v = std::stoll(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (s.empty() || used != s.size()) fail(ErrorKind::input, what + ": expected an integer, got '" + s + "'");
    return v;
}

double to_real(const std::string& s, const std::string& what) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (s.empty() || used != s.size()) fail(ErrorKind::input, what + ": expected a number, got '" + s + "'");
    return v;
}

std::uint64_t seed_arg(const std::vector<std::string>& parts, std::size_t index, const RunConfig& cfg) {
    if (parts.size() <= index || parts[index].empty()) return cfg.seed;
    return static_cast<std::uint64_t>(to_int(parts[index], "seed"));
}

std::vector<std::int64_t> read_integers(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::io, "cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    for (auto& c : text) {
        if (c == ',') c = ' ';
    }
    std::istringstream is(text);
    std::vector<std::int64_t> out;
    std::string tok;
    while (is >> tok) out.push_back(to_int(tok, path));
    return out;
}

}  // namespace

CyclicFn load_function(const std::string& spec, std::size_t modulus, const RunConfig& cfg) {
    require(modulus >= 1, "modulus must be at least 1");
    const auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
    const auto parts = split(rest, ':');

    if (kind == "file") {
        CyclicFn f = load_cyclic_fn(rest);
        require(f.modulus() == modulus, "file:" + rest + " has modulus " + std::to_string(f.modulus()) +
                                            ", expected " + std::to_string(modulus));
        return f;
    }
    if (kind == "const") {
        const auto c = split(rest, ',');
        require(c.size() == 1 || c.size() == 2, "const: expects RE or RE,IM");
        const cplx v{to_real(c[0], "const"), c.size() == 2 ? to_real(c[1], "const") : 0.0};
        return CyclicFn::constant(modulus, v);
    }
    if (kind == "interval") {
        require(parts.size() == 2, "interval: expects A:B");
        const auto a = to_int(parts[0], "interval"), b = to_int(parts[1], "interval");
        std::vector<std::int64_t> el;
        for (auto x = a; x <= b; ++x) el.push_back(x);
        return indicator(modulus, el);
    }
    if (kind == "random" || kind == "random-complex") {
        std::mt19937_64 rng(seed_arg(parts, 0, cfg));
        if (kind == "random") {
            std::uniform_real_distribution<double> u(0.0, 1.0);
            return CyclicFn::generate(modulus, [&](std::size_t) { return cplx{u(rng)}; });
        }
        std::uniform_real_distribution<double> u(-1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0));
        return CyclicFn::generate(modulus, [&](std::size_t) {
            const double re = u(rng);
            return cplx{re, u(rng)};
        });
    }
    if (kind == "phase") {
        std::vector<std::int64_t> coeffs;
        for (const auto& c : split(rest, ',')) coeffs.push_back(to_int(c, "phase"));
        return polynomial_phase(modulus, coeffs);
    }
    if (kind == "mangoldt") {
        const SieveTables t = cached_sieve(std::max<std::uint64_t>(modulus, 2), cfg.cache_dir, cfg.budget);
        return CyclicFn::generate(modulus, [&](std::size_t x) { return cplx{t.mangoldt[x]}; });
    }
    if (kind == "mangoldt-class") {
        require(parts.size() == 2, "mangoldt-class: expects w:B");
        const auto w = to_int(parts[0], "mangoldt-class"), b = to_int(parts[1], "mangoldt-class");
        require(w >= 2 && b >= 0, "mangoldt-class: need w >= 2 and B >= 0");
        const WTrick wt = w_trick(static_cast<std::uint64_t>(w), cfg.budget);
        const SieveTables t = cached_sieve(std::max<std::uint64_t>(modulus, 2), cfg.cache_dir, cfg.budget);
        return restrict_to_class(std::span<const double>(t.mangoldt.data(), modulus + 1), wt.w_modulus,
                                 static_cast<std::uint64_t>(b), wt.phi);
    }
    fail(ErrorKind::input, "unknown function source '" + spec + "'");
}

IntSet load_set(const std::string& spec, std::int64_t bound, const RunConfig& cfg) {
    require(bound >= 1, "set bound must be at least 1");
    const auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
    const auto parts = split(rest, ':');
    std::vector<std::int64_t> el;

    if (kind == "file") {
        el = read_integers(rest);
    } else if (kind == "list") {
        if (!rest.empty()) {
            for (const auto& s : split(rest, ',')) el.push_back(to_int(s, "list"));
        }
    } else if (kind == "interval") {
        require(parts.size() == 2, "interval: expects A:B");
        for (auto x = to_int(parts[0], "interval"); x <= to_int(parts[1], "interval"); ++x) el.push_back(x);
    } else if (kind == "random") {
        require(!rest.empty(), "random: expects DENSITY[:SEED]");
        const double density = to_real(parts[0], "random");
        require(density >= 0.0 && density <= 1.0, "random: density must lie in [0, 1]");
        std::mt19937_64 rng(seed_arg(parts, 1, cfg));
        std::bernoulli_distribution keep(density);
        for (std::int64_t n = 1; n <= bound; ++n) {
            if (keep(rng)) el.push_back(n);
        }
    } else if (kind == "primes") {
        for (std::int64_t n = 2; n <= bound; ++n) {
            if (is_prime(static_cast<std::uint64_t>(n))) el.push_back(n);
        }
    } else if (kind == "odd") {
        for (std::int64_t n = 1; n <= bound; n += 2) el.push_back(n);
    } else if (kind == "powers2") {
        for (std::int64_t n = 1; n <= bound; n *= 2) el.push_back(n);
    } else {
        fail(ErrorKind::input, "unknown set source '" + spec + "'");
    }
    return IntSet(bound, std::move(el));
}

}  // namespace addcomb::cli
