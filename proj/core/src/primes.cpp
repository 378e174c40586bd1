#include "addcomb/primes.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>
#include <thread>

#include "addcomb/error.hpp"
#include "addcomb/modarith.hpp"

namespace addcomb {

SieveTables build_sieve(std::uint64_t n_max, const Budget& budget) {
    require(n_max >= 2, "build_sieve: N_max must be at least 2");
    if (n_max > budget.sieve_max) {
        fail(ErrorKind::budget, "build_sieve: N_max = " + std::to_string(n_max) +
                                    " exceeds the sieve budget of " + std::to_string(budget.sieve_max));
    }
    SieveTables t;
    t.bound = n_max;
    const std::size_t size = n_max + 1;
    t.is_prime.assign(size, 1);
    t.is_prime[0] = t.is_prime[1] = 0;
    t.mangoldt.assign(size, 0.0);
    t.moebius.assign(size, 1);
    t.moebius[0] = 0;

    for (std::uint64_t p = 2; p <= n_max; ++p) {
        if (!t.is_prime[p]) continue;
        const double lp = std::log(static_cast<double>(p));
        for (std::uint64_t m = p; m <= n_max; m += p) {
            if (m > p) t.is_prime[m] = 0;
            t.moebius[m] = static_cast<std::int8_t>(-t.moebius[m]);
        }
        if (p <= n_max / p) {
            for (std::uint64_t m = p * p; m <= n_max; m += p * p) t.moebius[m] = 0;
        }
        for (std::uint64_t q = p;; q *= p) {
            t.mangoldt[q] = lp;
            if (q > n_max / p) break;
        }
    }
    for (std::uint64_t m = 2; m <= n_max; ++m) {
        if (t.mangoldt[m] != 0.0) t.prime_powers.push_back(m);
    }
    return t;
}

double chebyshev_psi(const SieveTables& t, std::uint64_t n) {
    require(n <= t.bound, "chebyshev_psi: N beyond the sieve bound");
    double acc = 0.0;
    for (auto q : t.prime_powers) {
        if (q > n) break;
        acc += t.mangoldt[q];
    }
    return acc;
}

double pnt_average(const SieveTables& t, std::uint64_t n) {
    require(n >= 1, "pnt_average: N must be positive");
    return chebyshev_psi(t, n) / static_cast<double>(n);
}

std::vector<std::uint64_t> sifted_set(std::uint64_t n, std::uint64_t r) {
    require(r >= 2 && r * r <= n, "sifted_set: need 2 <= R <= sqrt(N)");
    const std::uint64_t lo = n / 2 + 1;
    std::vector<std::uint8_t> keep(n - lo + 1, 1);
    std::vector<std::uint8_t> small(r + 1, 1);
    for (std::uint64_t p = 2; p <= r; ++p) {
        if (!small[p]) continue;
        for (std::uint64_t m = p * p; m <= r; m += p) small[m] = 0;
        for (std::uint64_t m = (lo + p - 1) / p * p; m <= n; m += p) keep[m - lo] = 0;
    }
    std::vector<std::uint64_t> out;
    for (std::uint64_t m = lo; m <= n; ++m) {
        if (keep[m - lo]) out.push_back(m);
    }
    return out;
}

MertensCheck mertens_check(std::uint64_t n, std::uint64_t r) {
    MertensCheck c;
    c.observed = static_cast<double>(sifted_set(n, r).size());
    c.predicted = static_cast<double>(n) / 2.0 * std::exp(-euler_gamma) / std::log(static_cast<double>(r));
    c.ratio = c.observed / c.predicted;
    return c;
}

GYWeight gy_weight(std::uint64_t n_max, std::uint64_t r, const Budget& budget) {
    require(r >= 2, "gy_weight: R must be at least 2");
    require(n_max >= 1, "gy_weight: bound must be positive");
    if (n_max > budget.sieve_max) fail(ErrorKind::budget, "gy_weight: bound exceeds the sieve budget");
    const SieveTables mu = build_sieve(std::max<std::uint64_t>(r, 2), budget);
    const double log_r = std::log(static_cast<double>(r));
    GYWeight w;
    w.r = r;
    w.lambda_r.assign(n_max + 1, 0.0);
    // (log R/d)_+ vanishes at d = R, so d < R suffices.
    for (std::uint64_t d = 1; d < r && d <= n_max; ++d) {
        if (mu.moebius[d] == 0) continue;
        const double term = mu.moebius[d] * (log_r - std::log(static_cast<double>(d)));
        for (std::uint64_t m = d; m <= n_max; m += d) w.lambda_r[m] += term;
    }
    w.lambda_r[0] = 0.0;
    w.nu.resize(n_max + 1);
    for (std::uint64_t m = 0; m <= n_max; ++m) w.nu[m] = w.lambda_r[m] * w.lambda_r[m] / log_r;
    return w;
}

WTrick w_trick(std::uint64_t w, const Budget& budget) {
    require(w >= 2, "w_trick: w must be at least 2");
    WTrick t;
    for (std::uint64_t p = 2; p <= w; ++p) {
        if (!is_prime(p)) continue;
        if (t.w_modulus > budget.w_max / p) {
            fail(ErrorKind::budget, "w_trick: W exceeds the budget of " + std::to_string(budget.w_max));
        }
        t.w_modulus *= p;
        t.phi *= p - 1;
    }
    std::vector<std::uint8_t> coprime(t.w_modulus, 1);
    for (auto p : prime_divisors(t.w_modulus)) {
        for (std::uint64_t m = 0; m < t.w_modulus; m += p) coprime[m] = 0;
    }
    for (std::uint64_t b = 0; b < t.w_modulus; ++b) {
        if (coprime[b]) t.residues.push_back(b);
    }
    if (t.residues.size() != t.phi) fail(ErrorKind::consistency, "w_trick: phi(W) mismatch");
    return t;
}

CyclicFn restrict_to_class(std::span<const double> f, std::uint64_t w_modulus, std::uint64_t b,
                           std::uint64_t phi) {
    require(!f.empty(), "restrict_to_class: empty table");
    require(b < w_modulus, "restrict_to_class: b must lie in [0, W)");
    const std::uint64_t n = f.size() - 1;
    const std::uint64_t m = n / w_modulus;
    require(m >= 1, "restrict_to_class: N < W");
    const double scale = static_cast<double>(phi) / static_cast<double>(w_modulus);
    return CyclicFn::generate(m, [&](std::size_t x) { return cplx{scale * f[w_modulus * x + b]}; });
}

cplx exp_sum_mangoldt(const SieveTables& t, std::uint64_t n, std::int64_t xi) {
    require(n >= 1 && n <= t.bound + 1, "exp_sum_mangoldt: N beyond the sieve bound");
    const std::uint64_t x = mod_reduce(xi, n);
    cplx acc = 0.0;
    for (auto q : t.prime_powers) {
        if (q >= n) break;
        acc += t.mangoldt[q] * unit_root(-static_cast<std::int64_t>(mul_mod(q, x, n)), n);
    }
    return acc;
}

FrequencyLabel classify_frequency(std::uint64_t n, std::int64_t xi, std::uint64_t q_max) {
    require(n >= 1 && q_max >= 1, "classify_frequency: need N, Q >= 1");
    const double x = static_cast<double>(mod_reduce(xi, n));
    const double nd = static_cast<double>(n);
    for (std::uint64_t q = 1; q <= q_max; ++q) {
        const double qd = static_cast<double>(q);
        const double a = std::round(x * qd / nd);
        if (std::abs(x - a * nd / qd) <= static_cast<double>(q_max)) {
            return {true, static_cast<std::uint64_t>(a) % q, q};
        }
    }
    return {};
}

double mangoldt_ap_average(const SieveTables& t, std::uint64_t n, unsigned k, bool cyclic, unsigned threads) {
    require(k >= 2, "mangoldt_ap_average: k must be at least 2");
    require(n >= 1, "mangoldt_ap_average: N must be positive");
    const std::uint64_t need = cyclic ? n - 1 : static_cast<std::uint64_t>(k) * n;
    if (need > t.bound) {
        fail(ErrorKind::input, "mangoldt_ap_average: sieve must reach " + std::to_string(need));
    }
    const auto& pp = t.prime_powers;
    const auto first_beyond = [&](std::uint64_t v) {
        return static_cast<std::size_t>(std::upper_bound(pp.begin(), pp.end(), v) - pp.begin());
    };
    const std::size_t n_end = first_beyond(cyclic ? n - 1 : n);  // candidates for the first slot

    constexpr std::size_t chunk = 256;
    const std::size_t chunks = (n_end + chunk - 1) / chunk;
    std::vector<double> partial(chunks, 0.0);

    auto run_chunk = [&](std::size_t c) {
        double acc = 0.0;
        for (std::size_t i = c * chunk; i < std::min(n_end, (c + 1) * chunk); ++i) {
            const std::uint64_t a = pp[i];
            const double la = t.mangoldt[a];
            if (!cyclic) {
                for (std::size_t j = first_beyond(a); j < pp.size() && pp[j] <= a + n; ++j) {
                    const std::uint64_t r = pp[j] - a;
                    double prod = la * t.mangoldt[pp[j]];
                    for (unsigned s = 2; s < k && prod != 0.0; ++s) prod *= t.mangoldt[a + s * r];
                    acc += prod;
                }
            } else {
                for (std::size_t j = 0; j < n_end; ++j) {
                    const std::uint64_t r = (pp[j] + n - a) % n;
                    double prod = la * t.mangoldt[pp[j]];
                    for (unsigned s = 2; s < k && prod != 0.0; ++s) {
                        prod *= t.mangoldt[(a + (s % n) * r) % n];
                    }
                    acc += prod;
                }
            }
        }
        partial[c] = acc;
    };

    const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(chunks)));
    if (workers <= 1) {
        for (std::size_t c = 0; c < chunks; ++c) run_chunk(c);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t c = w; c < chunks; c += workers) run_chunk(c);
            });
        }
        for (auto& th : pool) th.join();
    }
    double total = 0.0;
    for (double v : partial) total += v;
    return total / (static_cast<double>(n) * static_cast<double>(n));
}

// --- cache ------------------------------------------------------------------

namespace {

constexpr char sieve_magic[4] = {'A', 'C', 'S', 'V'};
constexpr std::uint32_t sieve_version = 1;

template <class T>
void put_le(std::string& out, T value) {
    std::uint64_t bits = 0;
    if constexpr (std::is_floating_point_v<T>) {
        bits = std::bit_cast<std::uint64_t>(value);
    } else {
        bits = static_cast<std::uint64_t>(value);
    }
    for (std::size_t i = 0; i < sizeof(T); ++i) out.push_back(static_cast<char>((bits >> (8 * i)) & 0xff));
}

template <class T>
T get_le(const std::string& in, std::size_t& pos) {
    if (pos + sizeof(T) > in.size()) fail(ErrorKind::io, "sieve cache: truncated file");
    std::uint64_t bits = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
        bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(in[pos + i])) << (8 * i);
    }
    pos += sizeof(T);
    if constexpr (std::is_floating_point_v<T>) {
        return std::bit_cast<T>(bits);
    } else {
        return static_cast<T>(bits);
    }
}

}  // namespace

void save_sieve(const SieveTables& t, const std::filesystem::path& file) {
    std::string out(sieve_magic, 4);
    put_le<std::uint32_t>(out, sieve_version);
    put_le<std::uint64_t>(out, t.bound);
    out.reserve(out.size() + (t.bound + 1) * 10);
    for (auto v : t.is_prime) put_le<std::uint8_t>(out, v);
    for (auto v : t.mangoldt) put_le<double>(out, v);
    for (auto v : t.moebius) put_le<std::uint8_t>(out, static_cast<std::uint8_t>(v));
    std::ofstream os(file, std::ios::binary);
    if (!os) fail(ErrorKind::io, "sieve cache: cannot write " + file.string());
    os.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!os) fail(ErrorKind::io, "sieve cache: write failed for " + file.string());
}

SieveTables load_sieve(const std::filesystem::path& file) {
    std::ifstream is(file, std::ios::binary);
    if (!is) fail(ErrorKind::io, "sieve cache: cannot read " + file.string());
    const std::string in((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    if (in.size() < 16 || std::memcmp(in.data(), sieve_magic, 4) != 0) {
        fail(ErrorKind::io, "sieve cache: bad magic in " + file.string());
    }
    std::size_t pos = 4;
    if (get_le<std::uint32_t>(in, pos) != sieve_version) fail(ErrorKind::io, "sieve cache: unsupported version");
    SieveTables t;
    t.bound = get_le<std::uint64_t>(in, pos);
    const std::size_t size = t.bound + 1;
    if (in.size() != 16 + size * 10) fail(ErrorKind::io, "sieve cache: size mismatch in " + file.string());
    t.is_prime.resize(size);
    t.mangoldt.resize(size);
    t.moebius.resize(size);
    for (auto& v : t.is_prime) v = get_le<std::uint8_t>(in, pos);
    for (auto& v : t.mangoldt) v = get_le<double>(in, pos);
    for (auto& v : t.moebius) v = static_cast<std::int8_t>(get_le<std::uint8_t>(in, pos));
    for (std::uint64_t m = 2; m <= t.bound; ++m) {
        if (t.mangoldt[m] != 0.0) t.prime_powers.push_back(m);
    }
    return t;
}

std::optional<std::filesystem::path> cache_dir_from_env() {
    const char* dir = std::getenv("ADDCOMB_CACHE_DIR");
    if (dir == nullptr || *dir == '\0') return std::nullopt;
    return std::filesystem::path(dir);
}

SieveTables cached_sieve(std::uint64_t n_max, const std::optional<std::filesystem::path>& dir,
                         const Budget& budget) {
    if (!dir) return build_sieve(n_max, budget);
    const auto file = *dir / ("sieve_" + std::to_string(n_max) + ".bin");
    if (std::filesystem::exists(file)) {
        SieveTables t = load_sieve(file);
        if (t.bound != n_max) fail(ErrorKind::io, "sieve cache: bound mismatch in " + file.string());
        return t;
    }
    SieveTables t = build_sieve(n_max, budget);
    std::error_code ec;
    std::filesystem::create_directories(*dir, ec);
    if (ec) fail(ErrorKind::io, "sieve cache: cannot create " + dir->string());
    save_sieve(t, file);
    return t;
}

}  // namespace addcomb
