#include "addcomb/modarith.hpp"

#include "addcomb/error.hpp"

namespace addcomb {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t n) noexcept {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % n);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t n) noexcept {
    std::uint64_t result = 1 % n;
    base %= n;
    while (exp > 0) {
        if (exp & 1) result = mul_mod(result, base, n);
        base = mul_mod(base, base, n);
        exp >>= 1;
    }
    return result;
}

std::optional<std::uint64_t> inverse_mod(std::uint64_t a, std::uint64_t n) noexcept {
    if (n == 0) return std::nullopt;
    std::int64_t old_r = static_cast<std::int64_t>(a % n), r = static_cast<std::int64_t>(n);
    std::int64_t old_s = 1, s = 0;
    while (r != 0) {
        const auto q = old_r / r;
        old_r -= q * r;
        std::swap(old_r, r);
        old_s -= q * s;
        std::swap(old_s, s);
    }
    if (old_r != 1) return n == 1 ? std::optional<std::uint64_t>(0) : std::nullopt;
    return mod_reduce(old_s, n);
}

bool is_prime(std::uint64_t n) noexcept {
    if (n < 2) return false;
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        std::uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::uint64_t next_prime(std::uint64_t n) {
    if (n >= UINT64_MAX - 1000) fail(ErrorKind::input, "next_prime: argument too large");
    std::uint64_t c = n + 1;
    while (!is_prime(c)) ++c;
    return c;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

std::vector<std::uint64_t> convergent_denominators(std::uint64_t num, std::uint64_t den,
                                                   std::uint64_t q_max) {
    std::vector<std::uint64_t> out;
    if (den == 0) return out;
    // q_{-1} = 0, q_0 = 1
    std::uint64_t q_prev = 0, q = 1;
    std::uint64_t a = num, b = den;
    out.push_back(1);
    a %= b;
    while (a != 0) {
        std::swap(a, b);
        const std::uint64_t digit = a / b;
        a %= b;
        const unsigned __int128 next = static_cast<unsigned __int128>(digit) * q + q_prev;
        if (next > q_max) break;
        q_prev = q;
        q = static_cast<std::uint64_t>(next);
        out.push_back(q);
    }
    return out;
}

}  // namespace addcomb
