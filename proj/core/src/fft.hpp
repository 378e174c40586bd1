#pragma once

// Exact-length complex DFT kernels (internal).

#include <complex>
#include <vector>

namespace addcomb::detail {

/// In-place unnormalized transform: out[k] = sum_x a[x] e(sign * x k / n).
/// Any length n >= 1. Power-of-two lengths use iterative radix-2; other
/// lengths go through Bluestein's chirp-z reduction to a power of two.
void transform(std::vector<std::complex<double>>& a, int sign);

}  // namespace addcomb::detail
