#include "addcomb/zmod.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "addcomb/error.hpp"
#include "addcomb/modarith.hpp"
#include "fft.hpp"

namespace addcomb {

bool Tolerance::close(double a, double b, double scale) const noexcept {
    return std::abs(a - b) <= std::max(abs_floor, rel * std::max(1.0, std::abs(scale)));
}

cplx unit_root(std::int64_t r, std::uint64_t n) noexcept {
    const std::uint64_t red = mod_reduce(r, n);
    const unsigned __int128 quarter = static_cast<unsigned __int128>(red) * 4;
    if (quarter % n == 0) {
        switch (static_cast<int>(quarter / n)) {
            case 0: return {1.0, 0.0};
            case 1: return {0.0, 1.0};
            case 2: return {-1.0, 0.0};
            default: return {0.0, -1.0};
        }
    }
    // Centre the angle in (-pi, pi] before evaluating.
    const double centred = red > n / 2 ? -static_cast<double>(n - red) : static_cast<double>(red);
    const double angle = 2.0 * std::numbers::pi * centred / static_cast<double>(n);
    return {std::cos(angle), std::sin(angle)};
}

template <class Tag>
ResidueTable<Tag>::ResidueTable(std::size_t modulus) : values_(modulus, cplx{}) {
    require(modulus >= 1, "modulus must be at least 1");
}

template <class Tag>
ResidueTable<Tag>::ResidueTable(std::vector<cplx> values) : values_(std::move(values)) {
    require(!values_.empty(), "modulus must be at least 1");
    for (const auto& v : values_) {
        require(std::isfinite(v.real()) && std::isfinite(v.imag()), "table entries must be finite");
    }
}

template <class Tag>
cplx ResidueTable<Tag>::at(std::int64_t x) const noexcept {
    return values_[mod_reduce(x, values_.size())];
}

template <class Tag>
bool ResidueTable<Tag>::is_bounded(double slack) const noexcept {
    return std::all_of(values_.begin(), values_.end(),
                       [&](const cplx& v) { return std::abs(v) <= 1.0 + slack; });
}

template <class Tag>
bool ResidueTable<Tag>::is_real(double slack) const noexcept {
    return std::all_of(values_.begin(), values_.end(),
                       [&](const cplx& v) { return std::abs(v.imag()) <= slack; });
}

template class ResidueTable<PhysicalTag>;
template class ResidueTable<FrequencyTag>;

CyclicFn indicator(std::size_t modulus, std::span<const std::int64_t> elements) {
    require(modulus >= 1, "modulus must be at least 1");
    std::vector<cplx> v(modulus, 0.0);
    for (auto e : elements) v[mod_reduce(e, modulus)] = 1.0;
    return CyclicFn(std::move(v));
}

CyclicFn from_real(std::span<const double> values) {
    return CyclicFn(std::vector<cplx>(values.begin(), values.end()));
}

cplx expectation(const CyclicFn& f) {
    cplx acc = 0.0;
    for (const auto& v : f.values()) acc += v;
    return acc / static_cast<double>(f.modulus());
}

cplx inner(const CyclicFn& f, const CyclicFn& g) {
    require(f.modulus() == g.modulus(), "inner: modulus mismatch");
    cplx acc = 0.0;
    for (std::size_t x = 0; x < f.modulus(); ++x) acc += f[x] * std::conj(g[x]);
    return acc / static_cast<double>(f.modulus());
}

CyclicFn character(std::size_t modulus, std::int64_t xi) {
    require(modulus >= 1, "modulus must be at least 1");
    require(xi >= 0 && static_cast<std::uint64_t>(xi) < modulus,
            "character: frequency must lie in [0, N)");
    return CyclicFn::generate(modulus, [&](std::size_t x) {
        return unit_root(static_cast<std::int64_t>(mul_mod(x, static_cast<std::uint64_t>(xi), modulus)),
                         modulus);
    });
}

CyclicFn polynomial_phase(std::size_t modulus, std::span<const std::int64_t> coeffs) {
    require(modulus >= 1, "modulus must be at least 1");
    return CyclicFn::generate(modulus, [&](std::size_t x) {
        // Horner in exact modular arithmetic.
        std::uint64_t acc = 0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
            acc = (mul_mod(acc, x, modulus) + mod_reduce(*it, modulus)) % modulus;
        }
        return unit_root(static_cast<std::int64_t>(acc), modulus);
    });
}

Spectrum dft(const CyclicFn& f) {
    std::vector<cplx> a(f.values().begin(), f.values().end());
    detail::transform(a, -1);
    const double inv = 1.0 / static_cast<double>(a.size());
    for (auto& v : a) v *= inv;
    return Spectrum(std::move(a));
}

CyclicFn idft(const Spectrum& s) {
    std::vector<cplx> a(s.values().begin(), s.values().end());
    detail::transform(a, +1);
    return CyclicFn(std::move(a));
}

Spectrum naive_dft(const CyclicFn& f) {
    const std::size_t n = f.modulus();
    std::vector<cplx> out(n);
    for (std::size_t xi = 0; xi < n; ++xi) {
        cplx acc = 0.0;
        for (std::size_t x = 0; x < n; ++x) {
            acc += f[x] * unit_root(-static_cast<std::int64_t>(mul_mod(x, xi, n)), n);
        }
        out[xi] = acc / static_cast<double>(n);
    }
    return Spectrum(std::move(out));
}

Exponent exponent_from_int(int p) {
    switch (p) {
        case 1: return Exponent::one;
        case 2: return Exponent::two;
        case 4: return Exponent::four;
        default: fail(ErrorKind::input, "unsupported exponent " + std::to_string(p));
    }
}

Exponent parse_exponent(std::string_view text) {
    if (text == "1") return Exponent::one;
    if (text == "2") return Exponent::two;
    if (text == "4") return Exponent::four;
    if (text == "inf" || text == "infinity") return Exponent::infinity;
    fail(ErrorKind::input, "unsupported exponent '" + std::string(text) + "'");
}

namespace {

double power_sum(std::span<const cplx> v, Exponent p) {
    double acc = 0.0;
    switch (p) {
        case Exponent::one:
            for (const auto& z : v) acc += std::abs(z);
            return acc;
        case Exponent::two:
            for (const auto& z : v) acc += std::norm(z);
            return acc;
        case Exponent::four:
            for (const auto& z : v) acc += std::norm(z) * std::norm(z);
            return acc;
        case Exponent::infinity:
            for (const auto& z : v) acc = std::max(acc, std::abs(z));
            return acc;
    }
    return acc;
}

double root(double s, Exponent p) {
    switch (p) {
        case Exponent::one: return s;
        case Exponent::two: return std::sqrt(s);
        case Exponent::four: return std::sqrt(std::sqrt(s));
        case Exponent::infinity: return s;
    }
    return s;
}

}  // namespace

double norm(const CyclicFn& f, Exponent p) {
    const double s = power_sum(f.values(), p);
    if (p == Exponent::infinity) return s;
    return root(s / static_cast<double>(f.modulus()), p);
}

double norm(const Spectrum& s, Exponent p) {
    return root(power_sum(s.values(), p), p);
}

CyclicFn shift(const CyclicFn& f, std::int64_t h) {
    return CyclicFn::generate(f.modulus(), [&](std::size_t x) {
        return f.at(static_cast<std::int64_t>(x) + static_cast<std::int64_t>(mod_reduce(h, f.modulus())));
    });
}

CyclicFn modulate(const CyclicFn& f, std::int64_t xi) {
    const std::size_t n = f.modulus();
    const std::uint64_t r = mod_reduce(xi, n);
    return CyclicFn::generate(n, [&](std::size_t x) {
        return f[x] * unit_root(static_cast<std::int64_t>(mul_mod(x, r, n)), n);
    });
}

namespace {

template <class Op>
CyclicFn zip(const CyclicFn& f, const CyclicFn& g, Op op) {
    require(f.modulus() == g.modulus(), "modulus mismatch");
    return CyclicFn::generate(f.modulus(), [&](std::size_t x) { return op(f[x], g[x]); });
}

}  // namespace

CyclicFn operator+(const CyclicFn& f, const CyclicFn& g) { return zip(f, g, std::plus<>{}); }
CyclicFn operator-(const CyclicFn& f, const CyclicFn& g) { return zip(f, g, std::minus<>{}); }
CyclicFn operator*(const CyclicFn& f, const CyclicFn& g) { return zip(f, g, std::multiplies<>{}); }

CyclicFn operator*(cplx c, const CyclicFn& f) {
    return CyclicFn::generate(f.modulus(), [&](std::size_t x) { return c * f[x]; });
}

CyclicFn conj(const CyclicFn& f) {
    return CyclicFn::generate(f.modulus(), [&](std::size_t x) { return std::conj(f[x]); });
}

CyclicFn power(const CyclicFn& f, int e) {
    return CyclicFn::generate(f.modulus(), [&](std::size_t x) {
        cplx acc = 1.0;
        for (int i = 0; i < std::abs(e); ++i) acc *= f[x];
        if (e < 0) {
            require(acc != cplx{0.0}, "power: negative exponent of a vanishing value");
            acc = 1.0 / acc;
        }
        return acc;
    });
}

bool approx_equal(const CyclicFn& f, const CyclicFn& g, const Tolerance& tol) {
    if (f.modulus() != g.modulus()) return false;
    const double scale = std::max(norm(f, Exponent::two), norm(g, Exponent::two));
    return norm(f - g, Exponent::two) <= std::max(tol.abs_floor, tol.rel * std::max(1.0, scale));
}

}  // namespace addcomb
