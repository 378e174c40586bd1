#pragma once
// Slow reference implementations and random generators shared by the tests.

#include <bit>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include <addcomb/ap_forms.hpp>
#include <addcomb/gowers.hpp>
#include <addcomb/structure.hpp>
#include <addcomb/zmod.hpp>

namespace oracle {

using addcomb::cplx;
using addcomb::CyclicFn;

inline cplx root(std::int64_t r, std::size_t n) {
    const double t = 2.0 * M_PI * static_cast<double>(r) / static_cast<double>(n);
    return {std::cos(t), std::sin(t)};
}

inline std::vector<cplx> dft(const CyclicFn& f) {
    const std::size_t n = f.modulus();
    std::vector<cplx> out(n);
    for (std::size_t xi = 0; xi < n; ++xi) {
        cplx s = 0;
        for (std::size_t x = 0; x < n; ++x) s += f[x] * root(-static_cast<std::int64_t>((x * xi) % n), n);
        out[xi] = s / static_cast<double>(n);
    }
    return out;
}

// ||f||_{U^d}^{2^d} as the average over (x, h_1, ..., h_d) of the full cube product.
inline double u_power(const CyclicFn& f, int d) {
    const std::size_t n = f.modulus();
    std::vector<std::size_t> h(d + 1, 0);
    std::size_t total = 1;
    for (int i = 0; i <= d; ++i) total *= n;
    cplx sum = 0;
    for (std::size_t it = 0; it < total; ++it) {
        std::size_t rest = it;
        for (int i = 0; i <= d; ++i) {
            h[i] = rest % n;
            rest /= n;
        }
        cplx prod = 1;
        for (unsigned eps = 0; eps < (1u << d); ++eps) {
            std::size_t pt = h[0];
            for (int i = 0; i < d; ++i) {
                if (eps >> i & 1u) pt += h[i + 1];
            }
            const cplx v = f[pt % n];
            prod *= (std::popcount(eps) % 2) ? std::conj(v) : v;
        }
        sum += prod;
    }
    return (sum / static_cast<double>(total)).real();
}

// E(f Df) with Df expanded over (x, a, b, c): O(N^4).
inline cplx dual_pairing(const CyclicFn& f) {
    const std::size_t n = f.modulus();
    cplx sum = 0;
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) {
                for (std::size_t c = 0; c < n; ++c) {
                    auto at = [&](std::size_t y) { return f[y % n]; };
                    sum += at(x) * std::conj(at(x + a)) * std::conj(at(x + b)) * std::conj(at(x + c)) *
                           at(x + a + b) * at(x + a + c) * at(x + b + c) * std::conj(at(x + a + b + c));
                }
            }
        }
    }
    return sum / std::pow(static_cast<double>(n), 4);
}

inline cplx lambda(std::span<const CyclicFn> fs) {
    const std::size_t n = fs[0].modulus();
    cplx sum = 0;
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t r = 0; r < n; ++r) {
            cplx prod = 1;
            for (std::size_t j = 0; j < fs.size(); ++j) prod *= fs[j][(x + j * r) % n];
            sum += prod;
        }
    }
    return sum / static_cast<double>(n * n);
}

// Progressions n, n + r, ..., n + (k-1) r inside A with r > 0.
inline std::uint64_t count_aps(std::span<const std::int64_t> elements, std::int64_t bound, unsigned k) {
    std::vector<bool> in(static_cast<std::size_t>(bound) + 1, false);
    for (auto x : elements) in[static_cast<std::size_t>(x)] = true;
    std::uint64_t count = 0;
    for (std::int64_t n = 1; n <= bound; ++n) {
        for (std::int64_t r = 1; n + (k - 1) * r <= bound; ++r) {
            bool all = true;
            for (unsigned j = 0; j < k && all; ++j) all = in[static_cast<std::size_t>(n + j * r)];
            count += all;
        }
    }
    return count;
}

// Exhaustive search for a vanishing-third-difference violation.
inline bool is_quadratic_exhaustive(std::span<const std::uint64_t> phi) {
    const std::uint64_t p = phi.size();
    for (std::uint64_t x = 0; x < p; ++x)
        for (std::uint64_t r = 0; r < p; ++r)
            for (std::uint64_t s = 0; s < p; ++s)
                for (std::uint64_t t = 0; t < p; ++t)
                    if (addcomb::third_difference(phi, x, r, s, t) != 0) return false;
    return true;
}

// --- generators ------------------------------------------------------------

struct Gen {
    std::mt19937_64 rng;
    explicit Gen(std::uint64_t seed) : rng(seed) {}

    double uniform(double lo = 0.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
    std::int64_t integer(std::int64_t lo, std::int64_t hi) {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
    }

    // Values in the unit disc.
    CyclicFn bounded(std::size_t n) {
        return CyclicFn::generate(n, [&](std::size_t) { return std::polar(std::sqrt(uniform()), uniform(0, 2 * M_PI)); });
    }
    // Values in [0, 1].
    CyclicFn unit_interval(std::size_t n) {
        return CyclicFn::generate(n, [&](std::size_t) { return cplx{uniform()}; });
    }
    // Unbounded complex values, for identities that do not need |f| <= 1.
    CyclicFn gaussian(std::size_t n) {
        std::normal_distribution<double> g;
        return CyclicFn::generate(n, [&](std::size_t) { return cplx{g(rng), g(rng)}; });
    }
    std::vector<std::int64_t> subset(std::int64_t bound, double density) {
        std::vector<std::int64_t> out;
        for (std::int64_t x = 1; x <= bound; ++x) {
            if (uniform() < density) out.push_back(x);
        }
        return out;
    }
    addcomb::BoxKernel kernel(std::vector<std::size_t> sizes) {
        return addcomb::BoxKernel::generate(std::move(sizes), [&](std::span<const std::size_t>) {
            return std::polar(std::sqrt(uniform()), uniform(0, 2 * M_PI));
        });
    }
};

inline double rel_err(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace oracle
