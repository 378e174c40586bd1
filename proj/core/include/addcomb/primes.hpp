#pragma once

// Sieve tables for the von Mangoldt and Moebius functions, partially sifted
// sets, Goldston-Yildirim weights, the W-trick, and exponential sums of
// the von Mangoldt function.

#include <complex>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "addcomb/budget.hpp"
#include "addcomb/zmod.hpp"

namespace addcomb {

inline constexpr double euler_gamma = 0.5772156649015329;

struct SieveTables {
    std::uint64_t bound = 0;
    std::vector<std::uint8_t> is_prime;  // indices 0..bound
    std::vector<double> mangoldt;        // Lambda(n)
    std::vector<std::int8_t> moebius;    // mu(n)
    std::vector<std::uint64_t> prime_powers;  // support of Lambda, increasing

    bool prime(std::uint64_t n) const noexcept { return n <= bound && is_prime[n] != 0; }
};

/// Eratosthenes-style construction, O(N log log N). Needs 2 <= N_max <=
/// budget.sieve_max.
SieveTables build_sieve(std::uint64_t n_max, const Budget& budget = {});

/// Chebyshev psi(N) = sum_{n <= N} Lambda(n).
double chebyshev_psi(const SieveTables& t, std::uint64_t n);

/// (1/N) sum_{1 <= n <= N} Lambda(n).
double pnt_average(const SieveTables& t, std::uint64_t n);

/// n in (floor(N/2), N] with no prime factor p <= R, so P_2 is the odd
/// numbers and R = sqrt(N) leaves the primes. Needs 2 <= R <= sqrt(N).
std::vector<std::uint64_t> sifted_set(std::uint64_t n, std::uint64_t r);

struct MertensCheck {
    double observed = 0.0;
    double predicted = 0.0;  // (N/2) e^{-gamma} / log R
    double ratio = 0.0;
};

MertensCheck mertens_check(std::uint64_t n, std::uint64_t r);

struct GYWeight {
    std::uint64_t r = 0;
    std::vector<double> lambda_r;  // Lambda_R(n), indices 0..bound (index 0 unused)
    std::vector<double> nu;        // Lambda_R(n)^2 / log R
};

/// Lambda_R(n) = sum_{d | n, d <= R} mu(d) log(R/d), by a forward loop over
/// squarefree d.
GYWeight gy_weight(std::uint64_t n_max, std::uint64_t r, const Budget& budget = {});

struct WTrick {
    std::uint64_t w_modulus = 1;  // W = product of primes p <= w
    std::uint64_t phi = 1;        // phi(W)
    std::vector<std::uint64_t> residues;  // b in [0, W) coprime to W
};

WTrick w_trick(std::uint64_t w, const Budget& budget = {});

/// g(n) = (phi(W)/W) f(W n + b) on Z/MZ with M = floor(N/W), where
/// f[n] is the value at n for 0 <= n <= N.
CyclicFn restrict_to_class(std::span<const double> f, std::uint64_t w_modulus, std::uint64_t b,
                           std::uint64_t phi);

/// sum_{n < N} Lambda(n) e_N(-n xi).
cplx exp_sum_mangoldt(const SieveTables& t, std::uint64_t n, std::int64_t xi);

struct FrequencyLabel {
    bool major = false;
    std::uint64_t a = 0, q = 0;  // nearest a/q when major
};

/// xi is major when |xi - a N / q| <= Q for some q <= Q, i.e. xi/N lies
/// within Q/N of a/q.
FrequencyLabel classify_frequency(std::uint64_t n, std::int64_t xi, std::uint64_t q_max = 20);

/// E(prod_{j<k} Lambda(n + j r) | 1 <= n, r <= N). The sieve must reach
/// k N, the largest argument n + (k-1) r. With cyclic = true, n and r run
/// over Z/NZ and arguments are reduced mod N instead. Work is split into fixed chunks whose partial sums
/// are added in order, so the result does not depend on threads.
double mangoldt_ap_average(const SieveTables& t, std::uint64_t n, unsigned k, bool cyclic = false,
                           unsigned threads = 1);

// --- cache ------------------------------------------------------------------

/// "ACSV", u32 version, u64 N_max, then is_prime (u8), mangoldt (f64) and
/// moebius (i8) tables, all little-endian.
void save_sieve(const SieveTables& t, const std::filesystem::path& file);
SieveTables load_sieve(const std::filesystem::path& file);

/// Directory from ADDCOMB_CACHE_DIR, if set.
std::optional<std::filesystem::path> cache_dir_from_env();

/// Loads sieve_<N>.bin from dir when present, otherwise builds and stores it.
/// Without a directory this is build_sieve.
SieveTables cached_sieve(std::uint64_t n_max, const std::optional<std::filesystem::path>& dir,
                         const Budget& budget = {});

}  // namespace addcomb
