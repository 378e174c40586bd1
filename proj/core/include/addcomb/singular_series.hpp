#pragma once

// Singular-series constants as truncated Euler products of local factors,
// each with a rigorous bound on the neglected tail.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace addcomb {

__extension__ typedef __int128 int128;

/// Exact non-negative rational in lowest terms.
class Rational {
public:
    Rational(int128 num = 0, int128 den = 1);

    int128 num() const noexcept { return num_; }
    int128 den() const noexcept { return den_; }
    double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }
    std::string to_string() const;

    friend Rational operator*(const Rational& a, const Rational& b);
    friend bool operator==(const Rational&, const Rational&) = default;

private:
    int128 num_;
    int128 den_;
};

struct EulerProductResult {
    double value = 0.0;
    std::uint64_t truncation_prime = 0;
    double tail_bound = 0.0;  // bound on |log(true / value)|
    std::optional<std::vector<std::pair<std::uint64_t, double>>> factor_log;
};

/// P(n, n+r, ..., n+(k-1)r all coprime to p) / P(n coprime to p)^k over
/// (n, r) in (Z/pZ)^2, by enumerating all p^2 pairs.
Rational local_factor_ap(std::uint64_t p, unsigned k);

/// Same count using r -> c r invariance: the r = 0 row plus (p - 1) copies
/// of the r = 1 row. Used by the Euler products.
Rational local_factor_ap_fast(std::uint64_t p, unsigned k);

/// P(n + h coprime to p for h in shifts) / P(n coprime to p)^|shifts|.
Rational local_factor_pattern(std::uint64_t p, const std::vector<std::int64_t>& shifts);

/// Local factor of the ternary Goldbach series at p: solutions of
/// n1 + n2 + n3 = N in (Z/pZ)^3 with all n_i coprime to p, relative to the
/// unrestricted density. Enumerates all p^2 pairs (n1, n2).
Rational local_factor_goldbach(std::uint64_t p, std::uint64_t n);

/// Sum_{p > P} 1/(p-1)^2 <= (2.51012 / log P) (1/(P-1) + 1/(2 (P-1)^2)), from
/// pi(t) < 1.25506 t / log t and partial summation.
double prime_tail_inverse_square(std::uint64_t p);
/// Sum_{p > P} 1/(p-1)^3 <= (3.76518 / log P) (1/(2 (P-1)^2) + 1/(3 (P-1)^3)).
double prime_tail_inverse_cube(std::uint64_t p);

/// prod_{p <= P} local_factor_ap(p, k). Needs k >= 3, P >= k.
EulerProductResult constant_C_k(unsigned k, std::uint64_t truncation, bool keep_factors = false);

/// Twin-prime constant 2 prod_{3 <= p <= P} p(p-2)/(p-1)^2. Needs P >= 3.
EulerProductResult constant_B2(std::uint64_t truncation, bool keep_factors = false);

/// B2 prod_{p | N, p >= 3} (p-1)/(p-2) for even N; 0 for odd N.
EulerProductResult constant_G2(std::uint64_t n, std::uint64_t truncation);

/// prod_p local_factor_goldbach(p, N) over p <= P together with every prime
/// divisor of N; the tail runs over p > P not dividing N.
EulerProductResult constant_G3(std::uint64_t n, std::uint64_t truncation);

}  // namespace addcomb
