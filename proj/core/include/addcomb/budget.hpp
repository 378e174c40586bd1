#pragma once

#include <cstddef>
#include <cstdint>

namespace addcomb {

/// Explicit work limits. Operations throw ErrorKind::budget instead of
/// truncating when a limit would be crossed.
struct Budget {
    // Largest modulus accepted by u_norm for d = 1..4 (index 0 unused).
    std::size_t u_norm_max_n[5] = {0, 1u << 24, 1u << 24, 512, 128};
    // Cap on (prod |A_j|)^2 for box inner products.
    std::uint64_t box_pairs = 50'000'000;
    // Largest modulus for the dual function (O(N^3) evaluation).
    std::size_t dual_max_n = 256;
    // Cap on the (x, r) pair count of a dense Lambda_k evaluation.
    std::uint64_t lambda_pairs = 400'000'000;
    // Largest prime for O(p^3) additive-quadruple enumeration.
    std::size_t quadruple_max_p = 512;
    // Largest sieve bound.
    std::uint64_t sieve_max = 50'000'000;
    // Largest primorial accepted by the W-trick.
    std::uint64_t w_max = 10'000'000;
};

/// Comparison tolerance: |a - b| <= max(abs_floor, rel * scale).
struct Tolerance {
    double rel = 1e-9;
    double abs_floor = 1e-12;

    bool close(double a, double b, double scale = 1.0) const noexcept;
};

}  // namespace addcomb
