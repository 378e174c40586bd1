#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace addcomb {

/// Least non-negative residue of x modulo n (n > 0).
constexpr std::uint64_t mod_reduce(std::int64_t x, std::uint64_t n) noexcept {
    const auto m = static_cast<std::int64_t>(n);
    const auto r = x % m;
    return static_cast<std::uint64_t>(r < 0 ? r + m : r);
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t n) noexcept;
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t n) noexcept;

/// Inverse of a modulo n, if gcd(a, n) = 1.
std::optional<std::uint64_t> inverse_mod(std::uint64_t a, std::uint64_t n) noexcept;

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(std::uint64_t n) noexcept;

/// Smallest prime strictly greater than n.
std::uint64_t next_prime(std::uint64_t n);

/// Distinct prime divisors of n in increasing order (trial division).
std::vector<std::uint64_t> prime_divisors(std::uint64_t n);

/// Continued-fraction convergent denominators q of num/den, in order.
/// Stops after the first q exceeding q_max (that one is not included).
std::vector<std::uint64_t> convergent_denominators(std::uint64_t num, std::uint64_t den,
                                                   std::uint64_t q_max);

}  // namespace addcomb
