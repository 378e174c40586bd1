#include "fft.hpp"

#include <bit>
#include <cstdint>

#include "addcomb/zmod.hpp"

namespace addcomb::detail {
namespace {

using cvec = std::vector<std::complex<double>>;

void radix2(cvec& a, int sign) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    // Twiddles from exact residues rather than repeated multiplication.
    cvec roots(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k) {
        roots[k] = unit_root(sign * static_cast<std::int64_t>(k), n);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t stride = n / len;
        const std::size_t half = len / 2;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < half; ++k) {
                const auto u = a[i + k];
                const auto v = a[i + k + half] * roots[k * stride];
                a[i + k] = u + v;
                a[i + k + half] = u - v;
            }
        }
    }
}

void naive(cvec& a, int sign) {
    const std::size_t n = a.size();
    cvec roots(n);
    for (std::size_t k = 0; k < n; ++k) roots[k] = unit_root(sign * static_cast<std::int64_t>(k), n);
    cvec out(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::complex<double> acc = 0.0;
        std::size_t idx = 0;
        for (std::size_t x = 0; x < n; ++x) {
            acc += a[x] * roots[idx];
            idx += k;
            if (idx >= n) idx -= n;
        }
        out[k] = acc;
    }
    a.swap(out);
}

// x k = (x^2 + k^2 - (k - x)^2) / 2 turns the DFT into a convolution with the
// chirp w_m = e(-sign m^2 / 2n). m^2 is reduced mod 2n in integers first.
void bluestein(cvec& a, int sign) {
    const std::size_t n = a.size();
    const std::size_t m = std::bit_ceil(2 * n - 1);
    const std::uint64_t two_n = 2 * static_cast<std::uint64_t>(n);

    cvec chirp(n);
    for (std::size_t k = 0; k < n; ++k) {
        const auto sq = static_cast<std::uint64_t>(static_cast<unsigned __int128>(k) * k % two_n);
        chirp[k] = unit_root(-sign * static_cast<std::int64_t>(sq), two_n);
    }
    cvec u(m, 0.0), v(m, 0.0);
    for (std::size_t k = 0; k < n; ++k) u[k] = a[k] * std::conj(chirp[k]);
    v[0] = chirp[0];
    for (std::size_t k = 1; k < n; ++k) v[k] = v[m - k] = chirp[k];

    radix2(u, -1);
    radix2(v, -1);
    for (std::size_t i = 0; i < m; ++i) u[i] *= v[i];
    radix2(u, +1);
    const double scale = 1.0 / static_cast<double>(m);
    for (std::size_t k = 0; k < n; ++k) a[k] = u[k] * scale * std::conj(chirp[k]);
}

}  // namespace

void transform(cvec& a, int sign) {
    const std::size_t n = a.size();
    if (n <= 1) return;
    if (std::has_single_bit(n)) {
        radix2(a, sign);
    } else if (n <= 32) {
        naive(a, sign);
    } else {
        bluestein(a, sign);
    }
}

}  // namespace addcomb::detail
